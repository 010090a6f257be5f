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

#include "gf2bench/decoder.hpp"

#include <bit>
#include <cmath>

#include "gf2bench/errors.hpp"
#include "gf2bench/weights.hpp"

namespace gf2bench {

std::string_view to_string(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::kSuccess:
      return "success";
    case DecodeStatus::kNoPositives:
      return "no-positives";
    case DecodeStatus::kAmbiguous:
      return "ambiguous";
    case DecodeStatus::kInconsistent:
      return "inconsistent";
  }
  return "unknown";
}

DecodeOutcome intersect_decode(std::span<const ResidualSample> samples,
                               std::uint32_t p, std::uint32_t d) {
  if (p > kMaxPayloadBits || d < 2) {
    throw DomainError("intersect_decode: requires d >= 2 and p <= 64");
  }
  DecodeOutcome out;
  std::uint64_t acc = p == 64 ? ~0ull : ((1ull << p) - 1);
  for (const ResidualSample& s : samples) {
    if (!s.residual) continue;
    acc &= s.payload;
    ++out.positives;
  }
  out.intersection = acc;
  out.intersection_size = static_cast<std::uint32_t>(std::popcount(acc));
  if (out.positives == 0) {
    out.status = DecodeStatus::kNoPositives;
    out.intersection = 0;
    out.intersection_size = p;
    return out;
  }
  if (out.intersection_size > d - 1) {
    out.status = DecodeStatus::kAmbiguous;
  } else if (out.intersection_size < d - 1) {
    out.status = DecodeStatus::kInconsistent;
  } else {
    out.status = DecodeStatus::kSuccess;
    out.result = Support::from_mask(acc);
  }
  return out;
}

namespace {

void check_bound_args(std::uint32_t p, std::uint32_t d, std::uint32_t w) {
  if (d < 2 || p < d - 1) throw DomainError("requires p >= d-1 >= 1");
  if (w < d - 1 || w > p) throw DomainError("requires d-1 <= w_star <= p");
}

Rational alpha_of(std::uint32_t p, std::uint32_t d, std::uint32_t w) {
  const std::uint32_t k = d - 1;
  // p = d-1: a single possible support, no extraneous coordinates.
  if (p == k) return 0;
  return Rational(w - k, p - k);
}

}  // namespace

Rational failure_bound(std::uint32_t p, std::uint32_t d, std::uint32_t w_star,
                       std::uint64_t T) {
  check_bound_args(p, d, w_star);
  if (T == 0) {
    throw DomainError("failure_bound: conditional on T >= 1, got T = 0");
  }
  const Rational bound = Rational(p - (d - 1)) * pow(alpha_of(p, d, w_star), T);
  return bound < 1 ? bound : Rational(1);
}

Rational expected_failure_bound(std::uint32_t p, std::uint32_t d,
                                std::uint32_t w_star, std::uint64_t K) {
  check_bound_args(p, d, w_star);
  const Rational r = rho(p, d, w_star);
  const Rational base = (1 - r) + r * alpha_of(p, d, w_star);
  const Rational bound = Rational(p - (d - 1)) * pow(base, K);
  return bound < 1 ? bound : Rational(1);
}

SampleComplexity sample_complexity(std::uint32_t p, std::uint32_t d,
                                   std::uint32_t w_star, double delta) {
  check_bound_args(p, d, w_star);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("sample_complexity: delta must lie in (0, 1)");
  }
  SampleComplexity out;
  out.alpha = alpha_of(p, d, w_star);
  if (out.alpha == 0) {
    out.T0 = 1;
  } else {
    const long double num =
        std::log(2.0L * static_cast<long double>(p - (d - 1)) / delta);
    const long double den = -std::log(
        static_cast<long double>(to_double(out.alpha)));
    out.T0 = static_cast<std::uint64_t>(std::ceil(num / den));
  }
  const Rational r = rho(p, d, w_star);
  const long double chernoff = 8.0L * std::log(2.0L / delta);
  if (static_cast<long double>(2 * out.T0) >= chernoff) {
    // Exact: ceil(2 T0 / rho).
    const Rational k = Rational(2 * out.T0) / r;
    const BigInt num = boost::multiprecision::numerator(k);
    const BigInt den = boost::multiprecision::denominator(k);
    BigInt q = num / den;
    if (q * den != num) q += 1;
    out.K = q.convert_to<std::uint64_t>();
  } else {
    out.K = static_cast<std::uint64_t>(
        std::ceil(chernoff / static_cast<long double>(to_double(r))));
  }
  return out;
}

}  // namespace gf2bench
