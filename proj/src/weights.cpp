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

#include "gf2bench/weights.hpp"

#include "gf2bench/errors.hpp"

namespace gf2bench {

Rational rho(std::uint32_t p, std::uint32_t d, std::uint32_t w) {
  if (d < 2) throw DomainError("rho: degree d must be at least 2");
  const std::uint32_t k = d - 1;
  if (p < k) throw DomainError("rho: p must be at least d-1");
  if (w > p) throw DomainError("rho: weight exceeds p");
  if (w < k) return 0;
  return Rational(binomial(w, k), binomial(p, k));
}

WeightChoice choose_weight(std::uint32_t p, std::uint32_t d) {
  if (d < 2 || p < d - 1) {
    throw DomainError("choose_weight: requires p >= d-1 >= 1");
  }
  const Rational half(1, 2);
  WeightChoice best;
  Rational best_gap = -1;
  for (std::uint32_t w = d - 1; w <= p; ++w) {
    Rational r = rho(p, d, w);
    Rational gap = r - half;
    if (gap < 0) gap = -gap;
    // Strict comparison keeps the smaller weight on ties.
    if (best_gap < 0 || gap < best_gap) {
      best_gap = gap;
      best.w_star = w;
      best.rho = r;
    }
  }
  best.rho_value = to_double(best.rho);
  return best;
}

}  // namespace gf2bench
