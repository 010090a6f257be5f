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

#include "gf2bench/oracle.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <ranges>

#include <nlohmann/json.hpp>

#include "gf2bench/errors.hpp"

namespace gf2bench {

std::string_view to_string(OracleMode mode) {
  return mode == OracleMode::kAdversarial ? "adversarial" : "baseline";
}

OracleMode parse_oracle_mode(std::string_view text) {
  if (text == "adversarial") return OracleMode::kAdversarial;
  if (text == "baseline") return OracleMode::kBaseline;
  throw ConfigError("unknown oracle mode '" + std::string(text) +
                    "' (expected adversarial or baseline)");
}

BitVector sphere_sample(std::uint32_t p, std::uint32_t w, Rng& rng) {
  if (w > p) throw DomainError("sphere_sample: weight exceeds p");
  BitVector v(p);
  std::uint32_t all[kMaxPayloadBits];
  std::uint32_t picked[kMaxPayloadBits];
  std::iota(all, all + p, 0u);
  std::uint32_t* end = std::sample(all, all + p, picked, w, rng);
  for (std::uint32_t* it = picked; it != end; ++it) v.set(*it, true);
  return v;
}

EvidenceBatch sample_step(const Instance& instance, std::uint32_t g,
                          std::uint32_t K, OracleMode mode, Rng& rng) {
  const BenchmarkConfig& cfg = instance.config();
  if (g >= cfg.n) {
    throw DomainError("sample_step: depth g=" + std::to_string(g) +
                      " must be < n=" + std::to_string(cfg.n));
  }
  EvidenceBatch batch;
  batch.g = g;
  batch.mode = mode;
  batch.examples.reserve(K);
  std::bernoulli_distribution coin(0.5);
  for (std::uint32_t k = 0; k < K; ++k) {
    Example ex;
    ex.address = BitVector(cfg.n);
    for (std::uint32_t j = 0; j < g; ++j) ex.address.set(j, coin(rng));
    ex.address.set(g, true);
    if (mode == OracleMode::kAdversarial) {
      ex.payload = sphere_sample(cfg.p, cfg.w_star, rng);
    } else {
      ex.payload = BitVector(cfg.p);
      for (std::uint32_t i = 0; i < cfg.p; ++i) ex.payload.set(i, coin(rng));
    }
    ex.label = eval_circuit(instance, ex.address, ex.payload);
    batch.examples.push_back(std::move(ex));
  }
  return batch;
}

void write_batch_jsonl(std::ostream& out, const EvidenceBatch& batch) {
  for (const Example& ex : batch.examples) {
    nlohmann::ordered_json line;
    line["address"] = ex.address.to_string();
    line["payload"] = ex.payload.to_string();
    line["label"] = ex.label ? 1 : 0;
    out << line.dump() << '\n';
  }
}

EvidenceBatch read_batch_jsonl(std::istream& in, std::uint32_t g,
                               OracleMode mode) {
  EvidenceBatch batch;
  batch.g = g;
  batch.mode = mode;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    Example ex;
    ex.address = BitVector::from_string(j.at("address").get<std::string>());
    ex.payload = BitVector::from_string(j.at("payload").get<std::string>());
    ex.label = j.at("label").get<int>() != 0;
    batch.examples.push_back(std::move(ex));
  }
  return batch;
}

}  // namespace gf2bench
