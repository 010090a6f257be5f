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

// Instance JSON: {n, p, d, w_star, K, seed, supports: [[i, ...], ...]}.

#ifndef GF2BENCH_INSTANCE_IO_HPP_
#define GF2BENCH_INSTANCE_IO_HPP_

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "gf2bench/core.hpp"

namespace gf2bench {

nlohmann::ordered_json to_json(const Instance& instance);
// Throws ConfigError on missing fields or invalid supports.
Instance instance_from_json(const nlohmann::json& j);

// One instance per line.
void write_instances_jsonl(std::ostream& out,
                           const std::vector<Instance>& instances);
std::vector<Instance> read_instances_jsonl(std::istream& in);

}  // namespace gf2bench

#endif  // GF2BENCH_INSTANCE_IO_HPP_
