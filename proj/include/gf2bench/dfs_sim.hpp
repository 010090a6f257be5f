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

// Validator-guided depth-first search with a perfect validator.
//
// At a correct prefix of depth t the proposer succeeds with probability
// gamma(t + 1). A good proposal advances; a bad one is rejected by the
// validator, costs one expansion and is retried from the same node, so the
// deepest correct prefix is always the current node. The search fails when a
// node exhausts its branch budget.

#ifndef GF2BENCH_DFS_SIM_HPP_
#define GF2BENCH_DFS_SIM_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gf2bench/rng.hpp"

namespace gf2bench {

// Per-depth proposal success probability, depth counted from 1.
//   "0.5"          constant
//   "harmonic:c"   gamma_t = min(1, c / t)
//   "0.9,0.8,0.7"  explicit list; the last value repeats
class GammaSchedule {
 public:
  static GammaSchedule constant(double gamma);
  static GammaSchedule parse(std::string_view text);

  double at(std::uint32_t depth) const;
  const std::string& text() const { return text_; }

 private:
  enum class Kind { kConstant, kHarmonic, kList };
  Kind kind_ = Kind::kConstant;
  double c_ = 1.0;
  std::vector<double> values_;
  std::string text_;
};

struct SearchConfig {
  GammaSchedule gamma = GammaSchedule::constant(0.5);
  std::uint32_t T_max = 10;
  double delta = 0.05;
  std::optional<std::uint64_t> branch_budget;  // unbounded when empty

  void validate() const;
};

struct SearchStats {
  bool success = false;
  std::uint64_t expansions = 0;
  std::uint32_t depth_reached = 0;
  std::uint64_t backtracks = 0;  // rejected proposals
};

SearchStats simulate_search(const SearchConfig& config, Rng& rng);

// c * T * ln(T / delta) / gamma.
double budget(std::uint32_t T_max, double delta, double gamma, double c = 1.0);

// ceil(ln(T / delta) / gamma): per-node retries after which the union bound
// over T nodes keeps the failure probability below delta.
std::uint64_t retry_budget(std::uint32_t T_max, double delta, double gamma);

enum class Sampling {
  kPlain,
  // Per node, the runs' proposal uniforms form one jittered stratification of
  // [0, 1) shared by every node and permuted independently per node, so each
  // node's sample mean is the same low-variance quadrature of its retry law.
  kStratified,
};

struct BatchStats {
  std::uint64_t runs = 0;
  std::uint64_t successes = 0;
  double mean_expansions = 0.0;
  double sd_expansions = 0.0;
  double mean_backtracks = 0.0;
  double mean_depth = 0.0;
  double failure_rate() const {
    return runs ? 1.0 - static_cast<double>(successes) / runs : 0.0;
  }
};

BatchStats simulate_batch(const SearchConfig& config, std::uint64_t runs,
                          std::uint64_t seed, unsigned workers = 1,
                          Sampling sampling = Sampling::kPlain);

// Least-squares slope of log(mean expansions) against log(T_max).
double loglog_slope(const std::vector<std::uint32_t>& t_values,
                    const std::vector<double>& means);

// Columns gamma,T_max,delta,branch_budget,runs,successes,failure_rate,
// mean_expansions,sd_expansions,mean_backtracks,mean_depth,budget_c1.
void write_stats_csv_header(std::ostream& out, std::uint64_t seed);
void write_stats_csv_row(std::ostream& out, const SearchConfig& config,
                         const BatchStats& stats);

}  // namespace gf2bench

#endif  // GF2BENCH_DFS_SIM_HPP_
