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

#include "gf2bench/dfs_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "gf2bench/errors.hpp"
#include "gf2bench/parallel.hpp"
#include "gf2bench/textio.hpp"

namespace gf2bench {
namespace {

void check_gamma(double g) {
  if (!(g > 0.0 && g <= 1.0)) {
    throw ConfigError("gamma must lie in (0, 1], got " + format_double(g));
  }
}

// Proposals spent at one node for proposal uniform u: the geometric number
// of rejections before the first success, plus one.
std::uint64_t proposals_needed(double gamma, double u) {
  if (gamma >= 1.0) return 1;
  const double r = std::floor(std::log1p(-u) / std::log1p(-gamma));
  if (!(r < 1e18)) return std::uint64_t{1} << 62;
  return static_cast<std::uint64_t>(r) + 1;
}

template <class NextUniform>
SearchStats run_one(const SearchConfig& config, NextUniform&& next_u) {
  SearchStats s;
  for (std::uint32_t t = 1; t <= config.T_max; ++t) {
    const std::uint64_t need = proposals_needed(config.gamma.at(t), next_u(t));
    if (config.branch_budget && need > *config.branch_budget) {
      s.expansions += *config.branch_budget;
      s.backtracks += *config.branch_budget;
      return s;
    }
    s.expansions += need;
    s.backtracks += need - 1;
    s.depth_reached = t;
  }
  s.success = true;
  return s;
}

}  // namespace

GammaSchedule GammaSchedule::constant(double gamma) {
  check_gamma(gamma);
  GammaSchedule s;
  s.kind_ = Kind::kConstant;
  s.values_ = {gamma};
  s.text_ = format_double(gamma);
  return s;
}

GammaSchedule GammaSchedule::parse(std::string_view text) {
  GammaSchedule s;
  s.text_ = std::string(text);
  try {
    if (text.starts_with("harmonic:")) {
      s.kind_ = Kind::kHarmonic;
      s.c_ = parse_double(text.substr(9));
      if (!(s.c_ > 0.0)) throw ConfigError("harmonic constant must be > 0");
      return s;
    }
    for (const std::string& field : split_csv(text)) {
      const double g = parse_double(field);
      check_gamma(g);
      s.values_.push_back(g);
    }
  } catch (const IoError& e) {
    throw ConfigError(std::string("gamma schedule: ") + e.what());
  }
  s.kind_ = s.values_.size() == 1 ? Kind::kConstant : Kind::kList;
  return s;
}

double GammaSchedule::at(std::uint32_t depth) const {
  switch (kind_) {
    case Kind::kConstant: return values_.front();
    case Kind::kHarmonic:
      return std::min(1.0, c_ / std::max<std::uint32_t>(1, depth));
    case Kind::kList:
      return values_[std::min<std::size_t>(std::max<std::uint32_t>(1, depth),
                                           values_.size()) - 1];
  }
  return 1.0;
}

void SearchConfig::validate() const {
  if (T_max < 1) throw ConfigError("T_max must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
  if (branch_budget && *branch_budget < 1) {
    throw ConfigError("branch budget must be at least 1");
  }
}

SearchStats simulate_search(const SearchConfig& config, Rng& rng) {
  config.validate();
  return run_one(config, [&](std::uint32_t) {
    return std::generate_canonical<double, 64>(rng);
  });
}

double budget(std::uint32_t T_max, double delta, double gamma, double c) {
  check_gamma(gamma);
  return c * T_max * std::log(T_max / delta) / gamma;
}

std::uint64_t retry_budget(std::uint32_t T_max, double delta, double gamma) {
  check_gamma(gamma);
  return static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(std::log(T_max / delta) / gamma)));
}

BatchStats simulate_batch(const SearchConfig& config, std::uint64_t runs,
                          std::uint64_t seed, unsigned workers,
                          Sampling sampling) {
  config.validate();
  if (runs == 0) throw ConfigError("runs must be positive");
  std::vector<SearchStats> out(runs);

  if (sampling == Sampling::kPlain) {
    parallel_for(runs, workers, [&](std::size_t r) {
      Rng rng = make_stream(seed, {kSearchStream, r});
      out[r] = run_one(config, [&](std::uint32_t) {
        return std::generate_canonical<double, 64>(rng);
      });
    });
  } else {
    Rng jitter_rng = make_stream(seed, {kSearchStream, 0, 0});
    std::vector<double> jitter(runs);
    for (double& j : jitter) j = std::generate_canonical<double, 64>(jitter_rng);
    std::vector<std::vector<std::uint32_t>> strata(config.T_max);
    for (std::uint32_t t = 0; t < config.T_max; ++t) {
      strata[t].resize(runs);
      std::iota(strata[t].begin(), strata[t].end(), 0u);
      Rng perm_rng = make_stream(seed, {kSearchStream, 1, t});
      std::ranges::shuffle(strata[t], perm_rng);
    }
    const double inv = 1.0 / static_cast<double>(runs);
    parallel_for(runs, workers, [&](std::size_t r) {
      out[r] = run_one(config, [&](std::uint32_t t) {
        const std::uint32_t s = strata[t - 1][r];
        return (s + jitter[s]) * inv;
      });
    });
  }

  BatchStats b;
  b.runs = runs;
  double sum = 0.0;
  double sum_sq = 0.0;
  double backtracks = 0.0;
  double depth = 0.0;
  for (const SearchStats& s : out) {
    b.successes += s.success;
    sum += static_cast<double>(s.expansions);
    sum_sq += static_cast<double>(s.expansions) * s.expansions;
    backtracks += static_cast<double>(s.backtracks);
    depth += s.depth_reached;
  }
  const double n = static_cast<double>(runs);
  b.mean_expansions = sum / n;
  b.sd_expansions =
      runs > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1)))
               : 0.0;
  b.mean_backtracks = backtracks / n;
  b.mean_depth = depth / n;
  return b;
}

double loglog_slope(const std::vector<std::uint32_t>& t_values,
                    const std::vector<double>& means) {
  if (t_values.size() != means.size() || t_values.size() < 2) {
    throw DomainError("loglog_slope needs matching lists of >= 2 points");
  }
  const double n = static_cast<double>(t_values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (t_values[i] == 0 || !(means[i] > 0.0)) {
      throw DomainError("loglog_slope needs positive values");
    }
    const double x = std::log(static_cast<double>(t_values[i]));
    const double y = std::log(means[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw DomainError("loglog_slope needs distinct T values");
  return (n * sxy - sx * sy) / den;
}

void write_stats_csv_header(std::ostream& out, std::uint64_t seed) {
  out << "# seed=" << seed << '\n';
  out << "gamma,T_max,delta,branch_budget,runs,successes,failure_rate,"
         "mean_expansions,sd_expansions,mean_backtracks,mean_depth,budget_c1\n";
}

void write_stats_csv_row(std::ostream& out, const SearchConfig& config,
                         const BatchStats& stats) {
  double min_gamma = 1.0;
  for (std::uint32_t t = 1; t <= config.T_max; ++t) {
    min_gamma = std::min(min_gamma, config.gamma.at(t));
  }
  out << '"' << config.gamma.text() << '"' << ',' << config.T_max << ','
      << format_double(config.delta) << ','
      << (config.branch_budget ? std::to_string(*config.branch_budget) : "")
      << ',' << stats.runs << ',' << stats.successes << ','
      << format_double(stats.failure_rate()) << ','
      << format_double(stats.mean_expansions) << ','
      << format_double(stats.sd_expansions) << ','
      << format_double(stats.mean_backtracks) << ','
      << format_double(stats.mean_depth) << ','
      << format_double(budget(config.T_max, config.delta, min_gamma)) << '\n';
}

}  // namespace gf2bench
