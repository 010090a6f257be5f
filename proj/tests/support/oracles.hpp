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

// Reference computations for tests. Deliberately naive and independent of the
// library: no Boost, no kernels, plain loops over bool vectors.

#ifndef GF2BENCH_TESTS_ORACLES_HPP_
#define GF2BENCH_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

inline std::uint64_t binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return t[n][k];
}

// All size-k subsets of [0, n) as index lists, lexicographic.
inline std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (unsigned i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline bool covers(const std::vector<bool>& v, const std::vector<unsigned>& s) {
  for (unsigned i : s) {
    if (!v[i]) return false;
  }
  return true;
}

// (numerator, denominator) of Pr[S subset of v] for v uniform of weight w,
// by listing every weight-w vector.
inline std::pair<std::uint64_t, std::uint64_t> rho_enum(unsigned p, unsigned d,
                                                        unsigned w) {
  std::vector<unsigned> s(d - 1);
  std::iota(s.begin(), s.end(), 0u);
  std::uint64_t hit = 0, total = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << p); ++bits) {
    std::vector<bool> v(p);
    unsigned weight = 0;
    for (unsigned i = 0; i < p; ++i) {
      v[i] = (bits >> i) & 1;
      weight += v[i];
    }
    if (weight != w) continue;
    ++total;
    hit += covers(v, s);
  }
  return {hit, total};
}

// f(a, v) = XOR_j a_j AND_{i in S_j} v_i.
inline bool eval(const std::vector<std::vector<unsigned>>& supports,
                 const std::vector<bool>& a, const std::vector<bool>& v,
                 std::size_t terms) {
  bool y = false;
  for (std::size_t j = 0; j < terms; ++j) {
    if (a[j] && covers(v, supports[j])) y = !y;
  }
  return y;
}

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
inline double betacf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h;
}

inline double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(lbt) * betacf(a, b, x) / a;
  }
  return 1.0 - std::exp(lbt) * betacf(b, a, 1.0 - x) / b;
}

// Quantile of Beta(a, b) by bisection on ibeta.
inline double beta_quantile(double a, double b, double q) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ibeta(a, b, mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle

#endif  // GF2BENCH_TESTS_ORACLES_HPP_
