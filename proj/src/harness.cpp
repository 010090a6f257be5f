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

#include "gf2bench/harness.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "gf2bench/errors.hpp"
#include "gf2bench/parallel.hpp"
#include "gf2bench/rng.hpp"
#include "gf2bench/textio.hpp"

namespace gf2bench {

std::vector<std::uint32_t> exponential_depths(unsigned count) {
  std::vector<std::uint32_t> out;
  for (unsigned k = 1; k <= count; ++k) out.push_back((1u << k) - 1);
  return out;
}

void SweepSpec::validate() const {
  if (depths.empty()) throw ConfigError("sweep: depth list is empty");
  if (payload_sizes.empty()) throw ConfigError("sweep: p list is empty");
  if (d < 2) throw ConfigError("sweep: d must be at least 2");
  if (K < 1) throw ConfigError("sweep: K must be at least 1");
  if (estimators.empty()) throw ConfigError("sweep: no estimators");
  if (*std::ranges::max_element(depths) >= (1u << 20)) {
    throw ConfigError("sweep: depth too large");
  }
}

std::uint32_t SweepSpec::circuit_length() const {
  return *std::ranges::max_element(depths) + 1;
}

SweepSpec SweepSpec::from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {
      "depths", "p",    "d",       "K",     "trials",
      "estimators", "mode", "seed", "w_star"};
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.contains(key)) {
      throw ConfigError("sweep config: unknown key '" + key + "'");
    }
  }
  SweepSpec spec;
  try {
    if (j.contains("depths")) {
      spec.depths = j["depths"].get<std::vector<std::uint32_t>>();
    }
    if (j.contains("p")) {
      spec.payload_sizes = j["p"].is_array()
                               ? j["p"].get<std::vector<std::uint32_t>>()
                               : std::vector{j["p"].get<std::uint32_t>()};
    }
    if (j.contains("d")) spec.d = j["d"].get<std::uint32_t>();
    if (j.contains("K")) spec.K = j["K"].get<std::uint32_t>();
    if (j.contains("trials")) spec.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("estimators")) {
      spec.estimators.clear();
      for (const auto& e : j["estimators"]) {
        spec.estimators.push_back(EstimatorSpec::parse(e.get<std::string>()));
      }
    }
    if (j.contains("mode")) {
      spec.mode = parse_oracle_mode(j["mode"].get<std::string>());
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("w_star") && !j["w_star"].is_null()) {
      spec.w_star = j["w_star"].get<std::uint32_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("sweep config: ") + e.what());
  }
  spec.validate();
  return spec;
}

nlohmann::ordered_json SweepSpec::to_json() const {
  nlohmann::ordered_json j;
  j["depths"] = depths;
  j["p"] = payload_sizes;
  j["d"] = d;
  j["K"] = K;
  j["trials"] = trials;
  std::vector<std::string> names;
  for (const auto& e : estimators) names.push_back(e.name());
  j["estimators"] = names;
  j["mode"] = std::string(to_string(mode));
  j["seed"] = seed;
  j["w_star"] = w_star ? nlohmann::ordered_json(*w_star)
                        : nlohmann::ordered_json(nullptr);
  return j;
}

std::vector<TrialRecord> run_sweep(const SweepSpec& spec,
                                   const RunOptions& options) {
  spec.validate();
  const std::uint32_t n = spec.circuit_length();

  struct Cell {
    BenchmarkConfig config;
    std::uint32_t g;
  };
  std::vector<Cell> cells;
  for (std::uint32_t p : spec.payload_sizes) {
    if (p < spec.d - 1 || p > kMaxPayloadBits) {
      if (options.warn) {
        options.warn("skipping infeasible cell p=" + std::to_string(p) +
                     " (need d-1 <= p <= 64)");
      }
      continue;
    }
    const BenchmarkConfig cfg =
        make_config(n, p, spec.d, spec.K, spec.seed, spec.w_star);
    for (std::uint32_t g : spec.depths) cells.push_back({cfg, g});
  }

  const std::size_t n_est = spec.estimators.size();
  const std::size_t per_cell = spec.trials * n_est;
  std::vector<TrialRecord> records(cells.size() * per_cell);

  parallel_for(cells.size() * spec.trials, options.workers, [&](std::size_t i) {
    const Cell& cell = cells[i / spec.trials];
    const std::uint64_t t = i % spec.trials;
    const std::uint32_t p = cell.config.p;
    const std::uint32_t g = cell.g;

    Rng inst_rng = make_stream(spec.seed, {kInstanceStream, p, g, t});
    const Instance instance = sample_instance(cell.config, inst_rng);
    Rng batch_rng = make_stream(spec.seed, {kOracleStream, p, g, t});
    const EvidenceBatch batch =
        sample_step(instance, g, spec.K, spec.mode, batch_rng);
    const Prefix prefix(instance, g);
    const Support& truth = instance.support(g);
    const std::string id = "p" + std::to_string(p) + "-g" + std::to_string(g) +
                           "-t" + std::to_string(t);

    for (std::size_t e = 0; e < n_est; ++e) {
      Rng est_rng = make_stream(spec.seed, {kEstimatorStream, p, g, t, e});
      const Prediction pred =
          run_estimator(spec.estimators[e], prefix, batch, est_rng);
      TrialRecord& rec = records[i * n_est + e];
      rec.instance_id = id;
      rec.g = g;
      rec.p = p;
      rec.d = spec.d;
      rec.estimator = spec.estimators[e].name();
      rec.predicted = pred.support;
      rec.truth = truth;
      rec.correct = pred.support && *pred.support == truth;
      if (pred.decode) {
        rec.positives = pred.decode->positives;
        rec.intersection_size = pred.decode->intersection_size;
      }
      rec.failure = pred.failure;
    }
  });
  return records;
}

std::optional<GammaEstimate> estimate_cell(std::span<const TrialRecord> cell) {
  const auto successes = static_cast<std::uint64_t>(
      std::ranges::count_if(cell, [](const TrialRecord& r) { return r.correct; }));
  return gamma_estimate(successes, cell.size());
}

std::vector<CellSummary> summarize(std::span<const TrialRecord> records) {
  std::vector<CellKey> order;
  std::map<CellKey, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const TrialRecord& r : records) {
    CellKey key{r.estimator, r.g, r.p, r.d};
    auto [it, inserted] = counts.try_emplace(key, 0, 0);
    if (inserted) order.push_back(key);
    it->second.first += r.correct ? 1 : 0;
    it->second.second += 1;
  }
  std::vector<CellSummary> out;
  out.reserve(order.size());
  for (const CellKey& key : order) {
    const auto& [s, n] = counts.at(key);
    out.push_back({key, *gamma_estimate(s, n)});
  }
  return out;
}

SeparationReport separation_check(std::span<const CellSummary> cells, double Q,
                                  double band_factor) {
  using Grid = std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>;
  std::map<std::string, Grid> grids;
  std::vector<std::string> order;
  for (const CellSummary& c : cells) {
    if (!grids.contains(c.key.estimator)) order.push_back(c.key.estimator);
    grids[c.key.estimator].insert({c.key.p, c.key.d, c.key.g});
  }
  if (!grids.contains("diligent")) {
    throw ConfigError("separation check needs the diligent estimator");
  }
  for (const auto& [name, grid] : grids) {
    if (grid != grids.at("diligent")) {
      throw ConfigError("separation check: estimator '" + name +
                        "' covers a different grid than diligent");
    }
  }

  SeparationReport report;
  report.Q = Q;
  report.pass = true;
  std::set<std::pair<std::uint32_t, std::uint32_t>> pd;
  std::uint32_t g_max = 0;
  for (const auto& [p, d, g] : grids.at("diligent")) {
    pd.insert({p, d});
    g_max = std::max(g_max, g);
  }
  for (const auto& [p, d] : pd) {
    const std::string where = "p=" + std::to_string(p) + ",d=" + std::to_string(d);
    double min_gamma = 1.0;
    std::uint32_t argmin = 0;
    for (const CellSummary& c : cells) {
      if (c.key.estimator == "diligent" && c.key.p == p && c.key.d == d &&
          c.estimate.point <= min_gamma) {
        min_gamma = c.estimate.point;
        argmin = c.key.g;
      }
    }
    SeparationClause a{"diligent min_g gamma >= Q [" + where + "]",
                       min_gamma >= Q,
                       "min gamma " + format_double(min_gamma) + " at g=" +
                           std::to_string(argmin) + ", Q=" + format_double(Q)};
    report.pass = report.pass && a.pass;
    report.clauses.push_back(std::move(a));

    const double band = band_factor * gamma_trivial(p, d);
    for (const std::string& name : order) {
      if (name == "diligent") continue;
      for (const CellSummary& c : cells) {
        if (c.key.estimator != name || c.key.p != p || c.key.d != d ||
            c.key.g != g_max) {
          continue;
        }
        SeparationClause clause{
            name + " near chance at g=" + std::to_string(g_max) + " [" + where +
                "]",
            c.estimate.lo <= band,
            "Jeffreys [" + format_double(c.estimate.lo) + ", " +
                format_double(c.estimate.hi) + "] vs band <= " +
                format_double(band)};
        report.pass = report.pass && clause.pass;
        report.clauses.push_back(std::move(clause));
      }
    }
  }
  return report;
}

void write_trials_jsonl(std::ostream& out, std::span<const TrialRecord> records,
                        std::uint64_t seed) {
  nlohmann::ordered_json header;
  header["_header"] = {{"seed", seed}, {"records", records.size()}};
  out << header.dump() << '\n';
  for (const TrialRecord& r : records) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance_id;
    j["g"] = r.g;
    j["p"] = r.p;
    j["d"] = r.d;
    j["estimator"] = r.estimator;
    j["predicted"] = r.predicted ? nlohmann::ordered_json(r.predicted->indices())
                                 : nlohmann::ordered_json(nullptr);
    j["truth"] = r.truth.indices();
    j["correct"] = r.correct;
    if (r.positives) j["T"] = *r.positives;
    if (r.intersection_size) j["intersection_size"] = *r.intersection_size;
    if (!r.failure.empty()) j["failure"] = r.failure;
    out << j.dump() << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const CellSummary> cells,
                       std::uint64_t seed) {
  out << "# seed=" << seed << '\n';
  out << "estimator,g,p,d,trials,successes,gamma,lo,hi\n";
  for (const CellSummary& c : cells) {
    out << c.key.estimator << ',' << c.key.g << ',' << c.key.p << ','
        << c.key.d << ',' << c.estimate.trials << ',' << c.estimate.successes
        << ',' << format_double(c.estimate.point) << ','
        << format_double(c.estimate.lo) << ',' << format_double(c.estimate.hi)
        << '\n';
  }
}

std::vector<CellSummary> read_summary_csv(std::istream& in) {
  std::vector<CellSummary> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 9) throw IoError("summary.csv: expected 9 columns");
    CellSummary c;
    c.key.estimator = f[0];
    c.key.g = static_cast<std::uint32_t>(parse_u64(f[1]));
    c.key.p = static_cast<std::uint32_t>(parse_u64(f[2]));
    c.key.d = static_cast<std::uint32_t>(parse_u64(f[3]));
    c.estimate.trials = parse_u64(f[4]);
    c.estimate.successes = parse_u64(f[5]);
    c.estimate.point = parse_double(f[6]);
    c.estimate.lo = parse_double(f[7]);
    c.estimate.hi = parse_double(f[8]);
    out.push_back(std::move(c));
  }
  return out;
}

void write_heatmap_csv(std::ostream& out, const SweepSpec& spec,
                       std::span<const CellSummary> cells) {
  std::map<CellKey, const CellSummary*> index;
  for (const CellSummary& c : cells) index[c.key] = &c;
  out << "# seed=" << spec.seed << '\n';
  out << "estimator,g,p,trials,successes,gamma,lo,hi\n";
  for (const EstimatorSpec& e : spec.estimators) {
    const std::string name = e.name();
    for (std::uint32_t g : spec.depths) {
      for (std::uint32_t p : spec.payload_sizes) {
        out << name << ',' << g << ',' << p;
        auto it = index.find(CellKey{name, g, p, spec.d});
        if (it == index.end()) {
          out << ",,,,,\n";
          continue;
        }
        const GammaEstimate& est = it->second->estimate;
        out << ',' << est.trials << ',' << est.successes << ','
            << format_double(est.point) << ',' << format_double(est.lo) << ','
            << format_double(est.hi) << '\n';
      }
    }
  }
}

nlohmann::ordered_json to_json(const SeparationReport& report) {
  nlohmann::ordered_json j;
  j["Q"] = report.Q;
  j["pass"] = report.pass;
  j["clauses"] = nlohmann::ordered_json::array();
  for (const auto& c : report.clauses) {
    j["clauses"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return j;
}

}  // namespace gf2bench
