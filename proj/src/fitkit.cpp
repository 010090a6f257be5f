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

#include "gf2bench/fitkit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "gf2bench/errors.hpp"
#include "gf2bench/estimators.hpp"
#include "gf2bench/parallel.hpp"
#include "gf2bench/textio.hpp"

namespace gf2bench {

void AccuracyTable::set(std::uint32_t g, std::uint32_t k, TableCell cell) {
  if (k > g) throw DomainError("accuracy table: k must be <= g");
  cells_[{g, k}] = cell;
}

bool AccuracyTable::contains(std::uint32_t g, std::uint32_t k) const {
  return cells_.contains({g, k});
}

double AccuracyTable::at(std::uint32_t g, std::uint32_t k) const {
  auto it = cells_.find({g, k});
  if (it == cells_.end()) {
    throw DomainError("accuracy table has no cell (g=" + std::to_string(g) +
                      ", k=" + std::to_string(k) + ")");
  }
  return it->second.accuracy();
}

AccuracyTable partial_accuracy_table(const TableSpec& spec, unsigned workers) {
  if (spec.depths.empty()) throw ConfigError("table: depth list is empty");
  if (spec.trials == 0) throw ConfigError("table: trials must be positive");
  const std::uint32_t n = *std::ranges::max_element(spec.depths) + 1;
  const BenchmarkConfig cfg = make_config(n, spec.p, spec.d, spec.K, spec.seed);

  // hits[gi][t * (g + 1) + k]
  std::vector<std::vector<char>> hits(spec.depths.size());
  for (std::size_t gi = 0; gi < spec.depths.size(); ++gi) {
    hits[gi].assign(spec.trials * (spec.depths[gi] + 1), 0);
  }
  parallel_for(spec.depths.size() * spec.trials, workers, [&](std::size_t i) {
    const std::size_t gi = i / spec.trials;
    const std::uint64_t t = i % spec.trials;
    const std::uint32_t g = spec.depths[gi];
    Rng inst_rng = make_stream(spec.seed, {kInstanceStream, spec.p, g, t});
    const Instance instance = sample_instance(cfg, inst_rng);
    Rng batch_rng = make_stream(spec.seed, {kOracleStream, spec.p, g, t});
    const EvidenceBatch batch =
        sample_step(instance, g, spec.K, spec.mode, batch_rng);
    const Prefix prefix(instance, g);
    for (std::uint32_t k = 0; k <= g; ++k) {
      Rng est_rng = make_stream(spec.seed, {kEstimatorStream, spec.p, g, t, k});
      const Prediction pred =
          estimate_partial(prefix, PartialAccessSpec{k}, batch, est_rng);
      hits[gi][t * (g + 1) + k] = pred.support && *pred.support == instance.support(g);
    }
  });

  AccuracyTable table;
  for (std::size_t gi = 0; gi < spec.depths.size(); ++gi) {
    const std::uint32_t g = spec.depths[gi];
    for (std::uint32_t k = 0; k <= g; ++k) {
      TableCell cell{0, spec.trials};
      for (std::uint64_t t = 0; t < spec.trials; ++t) {
        cell.successes += hits[gi][t * (g + 1) + k];
      }
      table.set(g, k, cell);
    }
  }
  return table;
}

void write_table_csv(std::ostream& out, const AccuracyTable& table,
                     std::uint64_t seed) {
  out << "# seed=" << seed << '\n';
  out << "g,k,successes,trials,accuracy\n";
  for (const auto& [key, cell] : table.cells()) {
    out << key.first << ',' << key.second << ',' << cell.successes << ','
        << cell.trials << ',' << format_double(cell.accuracy()) << '\n';
  }
}

AccuracyTable read_table_csv(std::istream& in) {
  AccuracyTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 5) throw IoError("table.csv: expected 5 columns");
    table.set(static_cast<std::uint32_t>(parse_u64(f[0])),
              static_cast<std::uint32_t>(parse_u64(f[1])),
              TableCell{parse_u64(f[2]), parse_u64(f[3])});
  }
  return table;
}

double predicted_accuracy(const PrefixModel& model, std::uint32_t g,
                          const AccuracyTable& table) {
  const double raw = model.kind == PrefixModel::Kind::kProportional
                         ? model.value * g
                         : model.value;
  const double k = std::clamp(raw, 0.0, static_cast<double>(g));
  const auto lo = static_cast<std::uint32_t>(std::floor(k));
  const auto hi = static_cast<std::uint32_t>(std::ceil(k));
  const double a = table.at(g, lo);
  if (hi == lo) return std::clamp(a, 0.0, 1.0);
  const double b = table.at(g, hi);
  return std::clamp(a + (k - lo) * (b - a), 0.0, 1.0);
}

void AccuracyCurve::validate() const {
  if (points.empty()) throw DomainError("accuracy curve is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].trials == 0) {
      throw DomainError("accuracy curve: zero trials at g=" +
                        std::to_string(points[i].g));
    }
    if (points[i].successes > points[i].trials) {
      throw DomainError("accuracy curve: successes exceed trials");
    }
    if (i > 0 && points[i].g <= points[i - 1].g) {
      throw DomainError("accuracy curve: g must be strictly increasing");
    }
  }
}

AccuracyCurve read_curve_csv(std::istream& in) {
  AccuracyCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 3) throw IoError("curve.csv: expected 3 columns");
    curve.points.push_back({static_cast<std::uint32_t>(parse_u64(f[0])),
                            parse_u64(f[1]), parse_u64(f[2])});
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const AccuracyCurve& curve,
                     std::uint64_t seed) {
  out << "# seed=" << seed << '\n';
  out << "g,successes,trials\n";
  for (const CurvePoint& pt : curve.points) {
    out << pt.g << ',' << pt.successes << ',' << pt.trials << '\n';
  }
}

AccuracyCurve synthetic_curve(const PrefixModel& model,
                              const std::vector<std::uint32_t>& depths,
                              std::uint64_t trials_per_depth,
                              const AccuracyTable& table, Rng& rng) {
  AccuracyCurve curve;
  for (std::uint32_t g : depths) {
    std::binomial_distribution<std::uint64_t> draw(
        trials_per_depth, predicted_accuracy(model, g, table));
    curve.points.push_back({g, draw(rng), trials_per_depth});
  }
  return curve;
}

double log_likelihood(const AccuracyCurve& curve, const PrefixModel& model,
                      const AccuracyTable& table) {
  double ll = 0.0;
  for (const CurvePoint& pt : curve.points) {
    const double q = std::clamp(predicted_accuracy(model, pt.g, table),
                                kLikelihoodClamp, 1.0 - kLikelihoodClamp);
    ll += pt.successes * std::log(q) +
          (pt.trials - pt.successes) * std::log1p(-q);
  }
  return ll;
}

namespace {

struct Best {
  double x;
  double ll;
};

Best maximize(const AccuracyCurve& curve, const AccuracyTable& table,
              PrefixModel::Kind kind, double hi, double step) {
  auto f = [&](double x) {
    return log_likelihood(curve, PrefixModel{kind, x}, table);
  };
  Best best{0.0, f(0.0)};
  const auto steps = static_cast<std::uint64_t>(std::llround(hi / step));
  for (std::uint64_t i = 1; i <= steps; ++i) {
    const double x = std::min(hi, i * step);
    const double ll = f(x);
    if (ll > best.ll) best = {x, ll};
  }
  // Golden-section search on the bracket around the grid optimum.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = std::max(0.0, best.x - step);
  double b = std::min(hi, best.x + step);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-3) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double ll = f(x);
  if (ll > best.ll) best = {x, ll};
  return best;
}

}  // namespace

std::string better_label(double delta_aic) {
  if (delta_aic > 2.0) return "u";
  if (delta_aic < -2.0) return "v";
  return "–";
}

FitResult fit(const AccuracyCurve& curve, const AccuracyTable& table) {
  curve.validate();
  if (curve.points.size() < 2) throw DomainError("fit needs at least 2 depths");
  const double g_max = curve.points.back().g;

  const Best u = maximize(curve, table, PrefixModel::Kind::kProportional, 1.0,
                          0.01);
  const Best v = maximize(curve, table, PrefixModel::Kind::kConstant, g_max,
                          0.25);
  FitResult r;
  r.u = u.x;
  r.v = v.x;
  r.log_likelihood_u = u.ll;
  r.log_likelihood_v = v.ll;
  r.aic_u = 2.0 - 2.0 * u.ll;
  r.aic_v = 2.0 - 2.0 * v.ll;
  r.delta_aic = r.aic_v - r.aic_u;
  r.better = better_label(r.delta_aic);
  return r;
}

nlohmann::ordered_json to_json(const FitResult& r) {
  nlohmann::ordered_json j;
  j["u"] = r.u;
  j["v"] = r.v;
  j["logL_u"] = r.log_likelihood_u;
  j["logL_v"] = r.log_likelihood_v;
  j["AIC_u"] = r.aic_u;
  j["AIC_v"] = r.aic_v;
  j["delta_aic"] = r.delta_aic;
  j["better"] = r.better;
  return j;
}

}  // namespace gf2bench
