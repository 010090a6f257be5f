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

// Effective-prefix fits: an observed accuracy-vs-depth curve is modeled as a
// partial estimator that knows k = u*g (proportional) or k = v (constant)
// prefix terms. The map from k to accuracy is a simulated table acc(g, k),
// linearly interpolated between integer k.
//
// Both models have one parameter, so AIC = 2 - 2 logL, and
// delta_aic = AIC_constant - AIC_proportional (positive favors u).

#ifndef GF2BENCH_FITKIT_HPP_
#define GF2BENCH_FITKIT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gf2bench/core.hpp"
#include "gf2bench/oracle.hpp"
#include "gf2bench/rng.hpp"

namespace gf2bench {

struct TableCell {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double accuracy() const {
    return trials ? static_cast<double>(successes) / trials : 0.0;
  }
};

class AccuracyTable {
 public:
  void set(std::uint32_t g, std::uint32_t k, TableCell cell);
  bool contains(std::uint32_t g, std::uint32_t k) const;
  // Throws DomainError for a missing cell.
  double at(std::uint32_t g, std::uint32_t k) const;
  const std::map<std::pair<std::uint32_t, std::uint32_t>, TableCell>& cells()
      const {
    return cells_;
  }

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, TableCell> cells_;
};

struct TableSpec {
  std::uint32_t p = 12;
  std::uint32_t d = 4;
  std::uint32_t K = 32;
  std::vector<std::uint32_t> depths = {1, 3, 7, 15, 31};
  std::uint64_t trials = 2000;
  OracleMode mode = OracleMode::kAdversarial;
  std::uint64_t seed = 0;
};

// Monte Carlo of partial-estimator success for every k in [0, g] at each
// depth. All k at one (g, trial) share the instance and evidence batch.
AccuracyTable partial_accuracy_table(const TableSpec& spec,
                                     unsigned workers = 1);

// Columns g,k,successes,trials,accuracy.
void write_table_csv(std::ostream& out, const AccuracyTable& table,
                     std::uint64_t seed);
AccuracyTable read_table_csv(std::istream& in);

struct PrefixModel {
  enum class Kind { kProportional, kConstant };
  Kind kind = Kind::kProportional;
  double value = 0.0;  // u or v
};

// k = clamp(u*g or v, 0, g); linear in k between the bracketing integers.
// Throws DomainError when a bracketing cell is missing.
double predicted_accuracy(const PrefixModel& model, std::uint32_t g,
                          const AccuracyTable& table);

struct CurvePoint {
  std::uint32_t g = 0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

// Points with g strictly increasing and trials >= 1.
struct AccuracyCurve {
  std::vector<CurvePoint> points;
  void validate() const;
};

// Columns g,successes,trials.
AccuracyCurve read_curve_csv(std::istream& in);
void write_curve_csv(std::ostream& out, const AccuracyCurve& curve,
                     std::uint64_t seed);

// Binomial draws with success probability predicted_accuracy(model, g).
AccuracyCurve synthetic_curve(const PrefixModel& model,
                              const std::vector<std::uint32_t>& depths,
                              std::uint64_t trials_per_depth,
                              const AccuracyTable& table, Rng& rng);

inline constexpr double kLikelihoodClamp = 1e-6;

double log_likelihood(const AccuracyCurve& curve, const PrefixModel& model,
                      const AccuracyTable& table);

struct FitResult {
  double u = 0.0;
  double v = 0.0;
  double log_likelihood_u = 0.0;
  double log_likelihood_v = 0.0;
  double aic_u = 0.0;
  double aic_v = 0.0;
  double delta_aic = 0.0;
  std::string better;  // "u", "v" or "–"
};

// Grid search (u step 0.01 on [0, 1], v step 0.25 on [0, max g]) followed by
// golden-section refinement to 1e-3 around the best grid point.
FitResult fit(const AccuracyCurve& curve, const AccuracyTable& table);

std::string better_label(double delta_aic);

nlohmann::ordered_json to_json(const FitResult& result);

}  // namespace gf2bench

#endif  // GF2BENCH_FITKIT_HPP_
