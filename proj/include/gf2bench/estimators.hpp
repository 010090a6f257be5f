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

// Next-support estimators distinguished by what they may look at:
//
//   diligent      prefix + evidence   residuals, then intersection decoding
//   data-only     evidence only       Bayes-MAP over all (d-1)-subsets
//   history-only  prefix only         uniform guess
//   partial:k=K   first k prefix terms + evidence
//
// The MAP estimators score every candidate S with the per-sample marginal
// likelihood obtained by averaging over the unknown prefix supports:
//
//   P(y | S, a, v) = 1/2 [1 + (-1)^(y xor M_S(v)) * c(v)^m],
//   c(v) = 1 - 2 rho(|v|),
//
// where m is the number of active unknown prefix address bits. Under the
// adversarial oracle |v| = w_star for every sample.

#ifndef GF2BENCH_ESTIMATORS_HPP_
#define GF2BENCH_ESTIMATORS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gf2bench/core.hpp"
#include "gf2bench/decoder.hpp"
#include "gf2bench/oracle.hpp"
#include "gf2bench/rng.hpp"

namespace gf2bench {

struct Prediction {
  std::optional<Support> support;  // empty means the estimator gave up
  std::string failure;             // reason when support is empty
  std::optional<DecodeOutcome> decode;

  bool has_value() const { return support.has_value(); }
};

struct PartialAccessSpec {
  std::uint32_t known_count = 0;  // k; the first k prefix terms are visible
};

enum class TieBreak {
  kRandom,     // uniform over maximizers
  kFailOnTie,  // report failure unless the maximizer is unique
};

Prediction estimate_diligent(const Prefix& prefix, const EvidenceBatch& batch);

Prediction estimate_data_only(const EvidenceBatch& batch,
                              const BenchmarkConfig& config, std::uint32_t g,
                              Rng& rng, TieBreak ties = TieBreak::kRandom);

Prediction estimate_history_only(const Prefix& prefix,
                                 const BenchmarkConfig& config, Rng& rng);

// Requires spec.known_count <= prefix.depth().
Prediction estimate_partial(const Prefix& prefix, const PartialAccessSpec& spec,
                            const EvidenceBatch& batch, Rng& rng,
                            TieBreak ties = TieBreak::kRandom);

// Log-likelihood of every (d-1)-subset candidate, in enumerate_subsets order.
// `known` holds the masks of the visible prefix terms (bits [0, known.size())
// of each address); bits [known.size(), g) are the unknown prefix.
struct CandidateScores {
  std::vector<std::uint64_t> candidates;
  std::vector<double> log_likelihood;
};
CandidateScores score_candidates(const EvidenceBatch& batch,
                                 const BenchmarkConfig& config, std::uint32_t g,
                                 std::span<const std::uint64_t> known);

// Estimator selection by name: diligent | data-only | history-only |
// partial:k=<int>.
struct EstimatorSpec {
  enum class Kind { kDiligent, kDataOnly, kHistoryOnly, kPartial };
  Kind kind = Kind::kDiligent;
  std::uint32_t k = 0;

  std::string name() const;
  static EstimatorSpec parse(std::string_view text);

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

// Runs one estimator on a trial. A partial estimator asking for more terms
// than the depth provides sees the whole prefix.
Prediction run_estimator(const EstimatorSpec& spec, const Prefix& prefix,
                         const EvidenceBatch& batch, Rng& rng);

}  // namespace gf2bench

#endif  // GF2BENCH_ESTIMATORS_HPP_
