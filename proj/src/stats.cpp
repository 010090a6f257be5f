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

#include "gf2bench/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "gf2bench/combinatorics.hpp"
#include "gf2bench/errors.hpp"

namespace gf2bench {

std::optional<GammaEstimate> gamma_estimate(std::uint64_t successes,
                                            std::uint64_t trials,
                                            double level) {
  if (trials == 0) return std::nullopt;
  if (successes > trials) throw DomainError("successes exceed trials");
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("confidence level must lie in (0, 1)");
  }
  GammaEstimate est;
  est.successes = successes;
  est.trials = trials;
  est.point = static_cast<double>(successes) / static_cast<double>(trials);
  const double a = static_cast<double>(successes) + 0.5;
  const double b = static_cast<double>(trials - successes) + 0.5;
  const double tail = (1.0 - level) / 2.0;
  est.lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(a, b, tail);
  est.hi = successes == trials ? 1.0 : boost::math::ibeta_inv(a, b, 1.0 - tail);
  return est;
}

double gamma_trivial(std::uint32_t p, std::uint32_t d) {
  if (d < 2 || p < d - 1) throw DomainError("gamma_trivial: p >= d-1 >= 1");
  return 1.0 / binomial(p, d - 1).convert_to<double>();
}

double chi_square_pvalue(double statistic, double dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace gf2bench
