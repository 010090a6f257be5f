// Copyright 2026 The gf2bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gf2bench/instance_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "gf2bench/errors.hpp"

namespace gf2bench {

nlohmann::ordered_json to_json(const Instance& instance) {
  const BenchmarkConfig& c = instance.config();
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["p"] = c.p;
  j["d"] = c.d;
  j["w_star"] = c.w_star;
  j["K"] = c.K;
  j["seed"] = c.seed;
  j["supports"] = nlohmann::ordered_json::array();
  for (const Support& s : instance.supports()) j["supports"].push_back(s.indices());
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  try {
    BenchmarkConfig c;
    c.n = j.at("n").get<std::uint32_t>();
    c.p = j.at("p").get<std::uint32_t>();
    c.d = j.at("d").get<std::uint32_t>();
    c.w_star = j.at("w_star").get<std::uint32_t>();
    c.K = j.at("K").get<std::uint32_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.validate();
    std::vector<Support> supports;
    for (const auto& s : j.at("supports")) {
      supports.push_back(Support::from_indices(
          s.get<std::vector<std::uint32_t>>(), c.p, c.payload_degree()));
    }
    return Instance(c, std::move(supports));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("instance JSON: ") + e.what());
  }
}

void write_instances_jsonl(std::ostream& out,
                           const std::vector<Instance>& instances) {
  for (const Instance& inst : instances) out << to_json(inst).dump() << '\n';
}

std::vector<Instance> read_instances_jsonl(std::istream& in) {
  std::vector<Instance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw IoError("instances: malformed JSON on line " + std::to_string(lineno));
    }
    out.push_back(instance_from_json(j));
  }
  return out;
}

}  // namespace gf2bench
