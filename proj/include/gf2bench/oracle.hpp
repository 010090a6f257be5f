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

#ifndef GF2BENCH_ORACLE_HPP_
#define GF2BENCH_ORACLE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gf2bench/core.hpp"
#include "gf2bench/rng.hpp"
#include "gf2bench/weights.hpp"

namespace gf2bench {

enum class OracleMode {
  // Payloads uniform on the weight-w_star sphere.
  kAdversarial,
  // Payload bits i.i.d. Bernoulli(1/2); same address scheme. Comparison only.
  kBaseline,
};

std::string_view to_string(OracleMode mode);
OracleMode parse_oracle_mode(std::string_view text);

struct EvidenceBatch {
  std::uint32_t g = 0;
  OracleMode mode = OracleMode::kAdversarial;
  std::vector<Example> examples;
};

// Uniform vector of Hamming weight w in {0,1}^p.
BitVector sphere_sample(std::uint32_t p, std::uint32_t w, Rng& rng);

// Step-g oracle. Every example has a_{g+1} = 1 (bit g), later address bits 0,
// bits [0, g) i.i.d. Bernoulli(1/2), and label y = f(a, v).
EvidenceBatch sample_step(const Instance& instance, std::uint32_t g,
                          std::uint32_t K, OracleMode mode, Rng& rng);

// JSONL, one example per line: {"address":"0101..","payload":"..","label":0}.
void write_batch_jsonl(std::ostream& out, const EvidenceBatch& batch);
// Reads examples; the caller supplies g and mode, which the format omits.
EvidenceBatch read_batch_jsonl(std::istream& in, std::uint32_t g,
                               OracleMode mode);

}  // namespace gf2bench

#endif  // GF2BENCH_ORACLE_HPP_
