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

#include "gf2bench/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "gf2bench/combinatorics.hpp"
#include "gf2bench/errors.hpp"
#include "gf2bench/kernels.hpp"
#include "gf2bench/weights.hpp"

namespace gf2bench {

namespace {

void check_batch(const EvidenceBatch& batch, const BenchmarkConfig& config,
                 std::uint32_t g) {
  if (batch.g != g) {
    throw DimensionError("evidence batch was drawn at depth " +
                         std::to_string(batch.g) + ", expected " +
                         std::to_string(g));
  }
  for (const Example& ex : batch.examples) {
    if (ex.address.size() != config.n || ex.payload.size() != config.p) {
      throw DimensionError("evidence example does not match (n, p)");
    }
  }
}

Prediction map_select(const CandidateScores& scores, Rng& rng,
                      TieBreak ties) {
  const auto& ll = scores.log_likelihood;
  const double best = *std::ranges::max_element(ll);
  std::vector<std::size_t> argmax;
  for (std::size_t c = 0; c < ll.size(); ++c) {
    if (ll[c] == best) argmax.push_back(c);
  }
  Prediction out;
  if (argmax.size() == 1 || ties == TieBreak::kRandom) {
    std::size_t pick = argmax.front();
    if (argmax.size() > 1) {
      std::uniform_int_distribution<std::size_t> dist(0, argmax.size() - 1);
      pick = argmax[dist(rng)];
    }
    out.support = Support::from_mask(scores.candidates[pick]);
  } else {
    out.failure = "map-tie";
  }
  return out;
}

}  // namespace

CandidateScores score_candidates(const EvidenceBatch& batch,
                                 const BenchmarkConfig& config, std::uint32_t g,
                                 std::span<const std::uint64_t> known) {
  check_batch(batch, config, g);
  if (known.size() > g) throw DomainError("more known terms than depth g");

  std::vector<double> c_by_weight(config.p + 1);
  for (std::uint32_t w = 0; w <= config.p; ++w) {
    c_by_weight[w] = 1.0 - 2.0 * to_double(rho(config.p, config.d, w));
  }

  const kernels::KernelTable& kt = kernels::active();
  const std::size_t K = batch.examples.size();
  const auto known_count = static_cast<std::uint32_t>(known.size());
  std::vector<std::uint64_t> payloads(K);
  std::vector<double> w_fired(K), w_silent(K);
  for (std::size_t k = 0; k < K; ++k) {
    const Example& ex = batch.examples[k];
    payloads[k] = ex.payload.word0();
    const bool target =
        ex.label ^ kt.term_parity(known, ex.address.words(), payloads[k]);
    const std::uint32_t m =
        static_cast<std::uint32_t>(ex.address.popcount_prefix(g)) -
        static_cast<std::uint32_t>(ex.address.popcount_prefix(known_count));
    const double s =
        std::pow(c_by_weight[ex.payload.popcount()], static_cast<int>(m));
    const double agree = std::log(0.5 * (1.0 + s));
    const double disagree = std::log(0.5 * (1.0 - s));
    w_fired[k] = target ? agree : disagree;
    w_silent[k] = target ? disagree : agree;
  }

  CandidateScores out;
  out.candidates = enumerate_subsets(config.p, config.payload_degree());
  out.log_likelihood.resize(out.candidates.size());
  kt.score_candidates(out.candidates, payloads, w_fired, w_silent,
                      out.log_likelihood);
  return out;
}

Prediction estimate_diligent(const Prefix& prefix, const EvidenceBatch& batch) {
  const BenchmarkConfig& cfg = prefix.config();
  check_batch(batch, cfg, prefix.depth());
  std::vector<ResidualSample> samples;
  samples.reserve(batch.examples.size());
  for (const Example& ex : batch.examples) {
    samples.push_back({ex.payload.word0(), residual(prefix, ex)});
  }
  Prediction out;
  out.decode = intersect_decode(samples, cfg.p, cfg.d);
  if (out.decode->success()) {
    out.support = out.decode->result;
  } else {
    out.failure = std::string(to_string(out.decode->status));
  }
  return out;
}

Prediction estimate_data_only(const EvidenceBatch& batch,
                              const BenchmarkConfig& config, std::uint32_t g,
                              Rng& rng, TieBreak ties) {
  return map_select(score_candidates(batch, config, g, {}), rng, ties);
}

Prediction estimate_history_only(const Prefix& /*prefix*/,
                                 const BenchmarkConfig& config, Rng& rng) {
  Prediction out;
  out.support = sample_support(config.p, config.payload_degree(), rng);
  return out;
}

Prediction estimate_partial(const Prefix& prefix, const PartialAccessSpec& spec,
                            const EvidenceBatch& batch, Rng& rng,
                            TieBreak ties) {
  if (spec.known_count > prefix.depth()) {
    throw DomainError("partial estimator: k exceeds prefix depth");
  }
  return map_select(
      score_candidates(batch, prefix.config(), prefix.depth(),
                       prefix.masks().first(spec.known_count)),
      rng, ties);
}

std::string EstimatorSpec::name() const {
  switch (kind) {
    case Kind::kDiligent:
      return "diligent";
    case Kind::kDataOnly:
      return "data-only";
    case Kind::kHistoryOnly:
      return "history-only";
    case Kind::kPartial:
      return "partial:k=" + std::to_string(k);
  }
  return "unknown";
}

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  EstimatorSpec spec;
  if (text == "diligent") {
    spec.kind = Kind::kDiligent;
  } else if (text == "data-only") {
    spec.kind = Kind::kDataOnly;
  } else if (text == "history-only") {
    spec.kind = Kind::kHistoryOnly;
  } else if (text.starts_with("partial:k=")) {
    spec.kind = Kind::kPartial;
    const std::string_view num = text.substr(10);
    const auto [ptr, ec] =
        std::from_chars(num.data(), num.data() + num.size(), spec.k);
    if (num.empty() || ec != std::errc() || ptr != num.data() + num.size()) {
      throw ConfigError("bad partial estimator '" + std::string(text) + "'");
    }
  } else {
    throw ConfigError("unknown estimator '" + std::string(text) +
                      "' (expected diligent, data-only, history-only or "
                      "partial:k=<int>)");
  }
  return spec;
}

Prediction run_estimator(const EstimatorSpec& spec, const Prefix& prefix,
                         const EvidenceBatch& batch, Rng& rng) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::kDiligent:
      return estimate_diligent(prefix, batch);
    case EstimatorSpec::Kind::kDataOnly:
      return estimate_data_only(batch, prefix.config(), prefix.depth(), rng);
    case EstimatorSpec::Kind::kHistoryOnly:
      return estimate_history_only(prefix, prefix.config(), rng);
    case EstimatorSpec::Kind::kPartial:
      return estimate_partial(
          prefix, PartialAccessSpec{std::min(spec.k, prefix.depth())}, batch,
          rng);
  }
  throw ConfigError("unhandled estimator kind");
}

}  // namespace gf2bench
