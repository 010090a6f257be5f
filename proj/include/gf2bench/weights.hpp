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

#ifndef GF2BENCH_WEIGHTS_HPP_
#define GF2BENCH_WEIGHTS_HPP_

#include <cstdint>

#include "gf2bench/combinatorics.hpp"

namespace gf2bench {

// Probability that a fixed monomial over `d - 1` payload coordinates fires on
// a payload drawn uniformly from the weight-w sphere in {0,1}^p:
//   C(w, d-1) / C(p, d-1)   for w >= d-1,   0 otherwise.
// Requires p >= d-1 >= 1 and w <= p.
Rational rho(std::uint32_t p, std::uint32_t d, std::uint32_t w);

struct WeightChoice {
  std::uint32_t w_star = 0;
  Rational rho;
  double rho_value = 0.0;
};

// The payload weight whose firing probability is closest to 1/2.
// Equidistant weights resolve to the smaller one.
WeightChoice choose_weight(std::uint32_t p, std::uint32_t d);

}  // namespace gf2bench

#endif  // GF2BENCH_WEIGHTS_HPP_
