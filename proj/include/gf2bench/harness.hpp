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

// Monte Carlo sweeps of step success over (depth, payload size) grids.
//
// Every trial draws a fresh instance with n = max(depths) + 1 and one evidence
// batch at depth g; all estimators of the sweep see that same instance and
// batch. Random streams are keyed by (p, g, trial, purpose), so output is a
// function of the SweepSpec alone.

#ifndef GF2BENCH_HARNESS_HPP_
#define GF2BENCH_HARNESS_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gf2bench/core.hpp"
#include "gf2bench/estimators.hpp"
#include "gf2bench/oracle.hpp"
#include "gf2bench/stats.hpp"

namespace gf2bench {

// g = 2^k - 1 for k = 1..count.
std::vector<std::uint32_t> exponential_depths(unsigned count);

struct SweepSpec {
  std::vector<std::uint32_t> depths = exponential_depths(5);
  std::vector<std::uint32_t> payload_sizes = {12};
  std::uint32_t d = 4;
  std::uint32_t K = 32;
  std::uint64_t trials = 2000;
  std::vector<EstimatorSpec> estimators = {
      EstimatorSpec::parse("diligent"), EstimatorSpec::parse("data-only"),
      EstimatorSpec::parse("history-only"),
      EstimatorSpec::parse("partial:k=4")};
  OracleMode mode = OracleMode::kAdversarial;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> w_star;

  void validate() const;
  std::uint32_t circuit_length() const;

  // Missing keys keep their defaults; unknown keys are rejected.
  static SweepSpec from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct TrialRecord {
  std::string instance_id;
  std::uint32_t g = 0;
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::string estimator;
  std::optional<Support> predicted;
  Support truth;
  bool correct = false;
  std::optional<std::uint32_t> positives;
  std::optional<std::uint32_t> intersection_size;
  std::string failure;
};

struct RunOptions {
  unsigned workers = 1;
  std::function<void(std::string_view)> warn;
};

std::vector<TrialRecord> run_sweep(const SweepSpec& spec,
                                   const RunOptions& options = {});

struct CellKey {
  std::string estimator;
  std::uint32_t g = 0;
  std::uint32_t p = 0;
  std::uint32_t d = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellSummary {
  CellKey key;
  GammaEstimate estimate;

  friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

// Jeffreys estimate over the records of one cell; nullopt when empty.
std::optional<GammaEstimate> estimate_cell(std::span<const TrialRecord> cell);

// One summary per cell, in order of first appearance.
std::vector<CellSummary> summarize(std::span<const TrialRecord> records);

struct SeparationClause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SeparationReport {
  double Q = 0.0;
  bool pass = false;
  std::vector<SeparationClause> clauses;
};

// Checks min_g gamma(diligent) >= Q for each (p, d), and that every other
// estimator's Jeffreys lower bound at the deepest g lies at or below
// band_factor * gamma_trivial(p, d). Throws ConfigError when estimators cover
// different cells or no diligent estimator is present.
SeparationReport separation_check(std::span<const CellSummary> cells, double Q,
                                  double band_factor = 2.0);

void write_trials_jsonl(std::ostream& out, std::span<const TrialRecord> records,
                        std::uint64_t seed);

// Columns: estimator,g,p,d,trials,successes,gamma,lo,hi. A leading
// "# seed=<seed>" comment line records provenance.
void write_summary_csv(std::ostream& out, std::span<const CellSummary> cells,
                       std::uint64_t seed);
std::vector<CellSummary> read_summary_csv(std::istream& in);

// One row per (estimator, g, p) of the SweepSpec grid; cells without data keep
// empty numeric fields.
void write_heatmap_csv(std::ostream& out, const SweepSpec& spec,
                       std::span<const CellSummary> cells);

nlohmann::ordered_json to_json(const SeparationReport& report);

}  // namespace gf2bench

#endif  // GF2BENCH_HARNESS_HPP_
