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

#ifndef GF2BENCH_COMBINATORICS_HPP_
#define GF2BENCH_COMBINATORICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gf2bench {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(std::uint64_t n, std::uint64_t k);

// Exact binomial when it fits in 64 bits; throws DomainError otherwise.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

Rational pow(const Rational& base, std::uint64_t exponent);

// "6/11", or "1" for integers.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// All size-k subsets of {0..p-1} as bit masks, in increasing numeric order.
// Requires p <= 64.
std::vector<std::uint64_t> enumerate_subsets(unsigned p, unsigned k);

}  // namespace gf2bench

#endif  // GF2BENCH_COMBINATORICS_HPP_
