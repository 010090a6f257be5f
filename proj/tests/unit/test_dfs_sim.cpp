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

#include <cmath>
#include <sstream>

#include "gf2bench/dfs_sim.hpp"
#include "gf2bench/errors.hpp"

using namespace gf2bench;

namespace {

SearchConfig make(const std::string& gamma, std::uint32_t T,
                  std::optional<std::uint64_t> budget = std::nullopt) {
  SearchConfig c;
  c.gamma = GammaSchedule::parse(gamma);
  c.T_max = T;
  c.branch_budget = budget;
  return c;
}

// Expected expansions without a budget: sum over nodes of 1 / gamma_t.
double exact_mean(const SearchConfig& c) {
  double e = 0;
  for (std::uint32_t t = 1; t <= c.T_max; ++t) e += 1.0 / c.gamma.at(t);
  return e;
}

}  // namespace

TEST_CASE("perfect proposer walks straight down") {
  Rng rng = make_stream(60, {});
  const auto s = simulate_search(make("1", 25), rng);
  CHECK(s.success);
  CHECK(s.expansions == 25);
  CHECK(s.backtracks == 0);
  CHECK(s.depth_reached == 25);
}

TEST_CASE("constant gamma costs T / gamma on average") {
  const SearchConfig c = make("0.5", 20);
  const BatchStats b = simulate_batch(c, 20000, 61);
  CHECK(b.failure_rate() == 0.0);
  CHECK(std::abs(b.mean_expansions - 40.0) <= 3 * b.sd_expansions / std::sqrt(20000.0));
  CHECK(b.mean_backtracks == doctest::Approx(b.mean_expansions - 20));
  // Per-run variance is T (1 - gamma) / gamma^2 = 40.
  CHECK(b.sd_expansions == doctest::Approx(std::sqrt(40.0)).epsilon(0.05));
}

TEST_CASE("harmonic schedule matches its exact mean and grows superlinearly") {
  double prev = 0;
  for (std::uint32_t T : {10u, 20u, 40u}) {
    const SearchConfig c = make("harmonic:2", T);
    const BatchStats b = simulate_batch(c, 20000, 62);
    CHECK(std::abs(b.mean_expansions - exact_mean(c)) <= 4 * b.sd_expansions / std::sqrt(20000.0));
    if (prev > 0) CHECK(b.mean_expansions / prev > 3.0);
    prev = b.mean_expansions;
  }
}

TEST_CASE("budget formula and retry budget") {
  CHECK(budget(20, 0.05, 0.5) == doctest::Approx(239.6586));
  CHECK(budget(20, 0.05, 0.25) == doctest::Approx(2 * budget(20, 0.05, 0.5)));
  CHECK(budget(20, 0.05, 0.5, 3.0) == doctest::Approx(3 * budget(20, 0.05, 0.5)));
  CHECK(budget(40, 0.05, 0.5) > 2 * budget(20, 0.05, 0.5));
  CHECK(budget(40, 0.05, 0.5) < 4 * budget(20, 0.05, 0.5));
  CHECK(retry_budget(20, 0.05, 0.5) == 12);
  CHECK(retry_budget(1, 0.9, 1.0) == 1);
  CHECK_THROWS_AS(budget(20, 0.05, 0.0), ConfigError);
}

TEST_CASE("retry budget keeps the failure rate under delta") {
  for (double g : {0.25, 0.5, 0.9}) {
    const std::uint64_t r = retry_budget(50, 0.05, g);
    const BatchStats b = simulate_batch(make(std::to_string(g), 50, r), 10000, 63);
    CHECK(b.failure_rate() <= 0.05 + 3 * std::sqrt(0.05 * 0.95 / 10000));
    CHECK(b.mean_expansions <= budget(50, 0.05, g));
  }
  // A budget of one retry fails often at gamma 0.5.
  const BatchStats tight = simulate_batch(make("0.5", 10, 1), 2000, 64);
  CHECK(tight.failure_rate() > 0.99);
  CHECK(tight.mean_depth < 2.0);
}

TEST_CASE("gamma schedule parsing") {
  CHECK(GammaSchedule::parse("0.5").at(7) == 0.5);
  const auto h = GammaSchedule::parse("harmonic:2");
  CHECK(h.at(1) == 1.0);
  CHECK(h.at(2) == 1.0);
  CHECK(h.at(4) == 0.5);
  const auto l = GammaSchedule::parse("0.9,0.8");
  CHECK(l.at(1) == 0.9);
  CHECK(l.at(2) == 0.8);
  CHECK(l.at(9) == 0.8);
  CHECK(l.text() == "0.9,0.8");
  for (const char* bad : {"0", "1.5", "-0.1", "harmonic:0", "harmonic:x", "abc", "", "0.5,,0.4"}) {
    CHECK_THROWS_AS(GammaSchedule::parse(bad), ConfigError);
  }
  SearchConfig c;
  c.T_max = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SearchConfig{};
  c.delta = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("stratified sampling is unbiased and worker independent") {
  const SearchConfig c = make("0.5", 30);
  const BatchStats s1 = simulate_batch(c, 10000, 65, 1, Sampling::kStratified);
  const BatchStats s4 = simulate_batch(c, 10000, 65, 4, Sampling::kStratified);
  CHECK(s1.mean_expansions == s4.mean_expansions);
  // Stratification is an exact quadrature of each node's retry law up to
  // O(1/runs), so the mean lands much closer than the plain-sampling error.
  CHECK(std::abs(s1.mean_expansions - 60.0) < 0.05);
  const BatchStats p1 = simulate_batch(c, 10000, 65, 1, Sampling::kPlain);
  const BatchStats p3 = simulate_batch(c, 10000, 65, 3, Sampling::kPlain);
  CHECK(p1.mean_expansions == p3.mean_expansions);
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({10, 20, 40}, {100, 400, 1600}) == doctest::Approx(2.0));
  CHECK(loglog_slope({10, 50}, {10, 50}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(loglog_slope({10}, {1}), DomainError);
  CHECK_THROWS_AS(loglog_slope({10, 10}, {1, 2}), DomainError);
  CHECK_THROWS_AS(loglog_slope({10, 20}, {0, 2}), DomainError);
}

TEST_CASE("stats CSV") {
  std::ostringstream out;
  write_stats_csv_header(out, 9);
  const SearchConfig c = make("0.9,0.5", 10);
  write_stats_csv_row(out, c, simulate_batch(c, 100, 1));
  const std::string s = out.str();
  CHECK(s.starts_with("# seed=9\ngamma,T_max,"));
  CHECK(s.find("\n\"0.9,0.5\",10,0.05,,100,100,") != std::string::npos);
}
