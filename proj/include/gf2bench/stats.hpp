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

#ifndef GF2BENCH_STATS_HPP_
#define GF2BENCH_STATS_HPP_

#include <cstdint>
#include <optional>

namespace gf2bench {

struct GammaEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const GammaEstimate&, const GammaEstimate&) = default;
};

// Jeffreys interval: Beta(s + 1/2, n - s + 1/2) quantiles at (1 -+ level)/2.
// The lower bound is 0 when s = 0 and the upper bound is 1 when s = n.
// Returns nullopt for an empty cell.
std::optional<GammaEstimate> gamma_estimate(std::uint64_t successes,
                                            std::uint64_t trials,
                                            double level = 0.95);

// Chance rate 1 / C(p, d-1).
double gamma_trivial(std::uint32_t p, std::uint32_t d);

// Upper-tail p-value of a chi-square statistic.
double chi_square_pvalue(double statistic, double dof);

}  // namespace gf2bench

#endif  // GF2BENCH_STATS_HPP_
