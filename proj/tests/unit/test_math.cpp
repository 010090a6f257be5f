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

#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "gf2bench/bitvec.hpp"
#include "gf2bench/combinatorics.hpp"
#include "gf2bench/errors.hpp"
#include "gf2bench/weights.hpp"
#include "oracles.hpp"

using namespace gf2bench;

TEST_CASE("bit vector text form starts with bit 0") {
  const BitVector v = BitVector::from_string("1000");
  CHECK(v.size() == 4);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(3));
  CHECK(v.word0() == 1);
  CHECK(v.to_string() == "1000");
  CHECK_THROWS_AS(BitVector::from_string("10x"), std::invalid_argument);
}

TEST_CASE("bit vector agrees with std::vector<bool> under random edits") {
  std::mt19937_64 rng(11);
  for (std::size_t size : {1u, 63u, 64u, 65u, 130u}) {
    BitVector v(size);
    std::vector<bool> ref(size);
    for (int step = 0; step < 2000; ++step) {
      const std::size_t i = rng() % size;
      const bool value = rng() & 1;
      v.set(i, value);
      ref[i] = value;
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < size; ++i) {
      REQUIRE(v.get(i) == ref[i]);
      count += ref[i];
      REQUIRE(v.popcount_prefix(i + 1) == count);
    }
    CHECK(v.popcount() == count);
    CHECK(BitVector::from_string(v.to_string()) == v);
  }
}

TEST_CASE("from_word masks to the requested size") {
  const BitVector v = BitVector::from_word(3, 0xff);
  CHECK(v.popcount() == 3);
  CHECK(v.to_string() == "111");
}

TEST_CASE("binomial matches Pascal's triangle") {
  for (unsigned n = 0; n <= 60; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      REQUIRE(binomial_u64(n, k) == oracle::binom(n, k));
    }
  }
  CHECK(binomial(12, 3) == 220);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(100, 50) > BigInt(std::numeric_limits<std::uint64_t>::max()));
  CHECK_THROWS(binomial_u64(100, 50));
}

TEST_CASE("rational helpers") {
  CHECK(to_string(Rational(12, 22)) == "6/11");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(pow(Rational(29, 33), 2) == Rational(841, 1089));
  CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("enumerate_subsets lists each k-subset once") {
  const auto masks = enumerate_subsets(12, 3);
  CHECK(masks.size() == 220);
  std::set<std::uint64_t> seen(masks.begin(), masks.end());
  CHECK(seen.size() == 220);
  for (std::uint64_t m : masks) {
    REQUIRE(std::popcount(m) == 3);
    REQUIRE(m < (1u << 12));
  }
  CHECK(enumerate_subsets(5, 0) == std::vector<std::uint64_t>{0});
}

TEST_CASE("rho equals brute-force enumeration for p <= 8") {
  for (unsigned p = 1; p <= 8; ++p) {
    for (unsigned d = 2; d <= p + 1; ++d) {
      for (unsigned w = 0; w <= p; ++w) {
        const auto [hit, total] = oracle::rho_enum(p, d, w);
        INFO("p=" << p << " d=" << d << " w=" << w);
        REQUIRE(rho(p, d, w) == Rational(hit, total));
      }
    }
  }
}

TEST_CASE("choose_weight at p=12, d=4") {
  const WeightChoice c = choose_weight(12, 4);
  CHECK(c.w_star == 10);
  CHECK(c.rho == Rational(6, 11));
  CHECK(to_string(c.rho) == "6/11");
}

TEST_CASE("choose_weight is the smallest minimizer of |rho - 1/2|") {
  int ties_seen = 0;
  for (unsigned p = 1; p <= 24; ++p) {
    for (unsigned d = 2; d <= std::min(p + 1, 6u); ++d) {
      // Reference: exact comparison of |2 C(w,d-1) - C(p,d-1)|.
      const auto den = static_cast<std::int64_t>(oracle::binom(p, d - 1));
      std::int64_t best = -1;
      unsigned best_w = 0;
      int minimizers = 0;
      for (unsigned w = d - 1; w <= p; ++w) {
        const std::int64_t dist = std::llabs(
            2 * static_cast<std::int64_t>(oracle::binom(w, d - 1)) - den);
        if (best < 0 || dist < best) {
          best = dist;
          best_w = w;
          minimizers = 1;
        } else if (dist == best) {
          ++minimizers;
        }
      }
      ties_seen += minimizers > 1;
      INFO("p=" << p << " d=" << d);
      REQUIRE(choose_weight(p, d).w_star == best_w);
    }
  }
  // Ties do occur (e.g. p=3, d=2 has |1/3-1/2| = |2/3-1/2|), so the rule matters.
  CHECK(ties_seen > 0);
}

TEST_CASE("weight functions reject invalid shapes") {
  CHECK_THROWS_AS(rho(3, 5, 1), DomainError);
  CHECK_THROWS_AS(rho(5, 3, 6), DomainError);
  CHECK_THROWS_AS(choose_weight(2, 1), DomainError);
}

TEST_CASE("rho examples and monotonicity") {
  CHECK(rho(12, 4, 2) == 0);
  CHECK(rho(4, 2, 2) == Rational(1, 2));
  CHECK(rho(12, 4, 10) == Rational(6, 11));
  const WeightChoice small = choose_weight(4, 2);
  CHECK(small.w_star == 2);
  CHECK(small.rho == Rational(1, 2));
  for (std::uint32_t w = 1; w <= 20; ++w) CHECK(rho(20, 5, w) >= rho(20, 5, w - 1));
}
