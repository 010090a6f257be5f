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

#include "gf2bench/combinatorics.hpp"

#include <bit>
#include <limits>

#include "gf2bench/errors.hpp"

namespace gf2bench {

namespace {
// Enumerating beyond this many candidates is never useful at benchmark scale.
constexpr std::uint64_t kMaxEnumeration = 20'000'000;
}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  const BigInt b = binomial(n, k);
  if (b > std::numeric_limits<std::uint64_t>::max()) {
    throw DomainError("binomial coefficient exceeds 64 bits");
  }
  return b.convert_to<std::uint64_t>();
}

Rational pow(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<std::uint64_t> enumerate_subsets(unsigned p, unsigned k) {
  if (p > 64) throw DomainError("enumerate_subsets: p exceeds 64");
  if (k > p) return {};
  const std::uint64_t count = binomial_u64(p, k);
  if (count > kMaxEnumeration) {
    throw DomainError("enumerate_subsets: too many candidate subsets");
  }
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  // Next bit permutation with the same popcount (Gosper).
  std::uint64_t mask = k == 64 ? ~0ull : ((1ull << k) - 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(mask);
    if (i + 1 == count) break;
    const std::uint64_t t = mask | (mask - 1);
    mask = (t + 1) |
           (((~t & (t + 1)) - 1) >> (std::countr_zero(mask) + 1));
  }
  return out;
}

}  // namespace gf2bench
