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

// Intersection decoder over residual labels, and its recovery guarantees for
// payloads drawn from a fixed-weight sphere.

#ifndef GF2BENCH_DECODER_HPP_
#define GF2BENCH_DECODER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "gf2bench/combinatorics.hpp"
#include "gf2bench/core.hpp"

namespace gf2bench {

struct ResidualSample {
  std::uint64_t payload = 0;  // payload bits as a mask
  bool residual = false;
};

enum class DecodeStatus {
  kSuccess,
  kNoPositives,   // T = 0
  kAmbiguous,     // intersection larger than d - 1
  kInconsistent,  // intersection smaller than d - 1; residuals are not exact
};

std::string_view to_string(DecodeStatus status);

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::kNoPositives;
  std::optional<Support> result;
  std::uint32_t positives = 0;          // T
  std::uint32_t intersection_size = 0;  // |S_hat|; p when T = 0
  std::uint64_t intersection = 0;

  bool success() const { return status == DecodeStatus::kSuccess; }
};

// S_hat = intersection of supp(v) over samples with residual 1. Succeeds iff
// T >= 1 and |S_hat| = d - 1.
DecodeOutcome intersect_decode(std::span<const ResidualSample> samples,
                               std::uint32_t p, std::uint32_t d);

// min{1, (p-(d-1)) * alpha^T},  alpha = (w-(d-1)) / (p-(d-1)).
// Upper bound on the decoder's failure probability given T >= 1 positives.
// Throws DomainError for T = 0.
Rational failure_bound(std::uint32_t p, std::uint32_t d, std::uint32_t w_star,
                       std::uint64_t T);

// (p-(d-1)) * E[alpha^T] for T ~ Bin(K, rho), capped at 1. Averages the
// conditional bound over the positive count, counting T = 0 as failure.
Rational expected_failure_bound(std::uint32_t p, std::uint32_t d,
                                std::uint32_t w_star, std::uint64_t K);

struct SampleComplexity {
  Rational alpha;
  std::uint64_t T0 = 0;
  std::uint64_t K = 0;
};

// K = ceil((1/rho) * max{2 T0, 8 ln(2/delta)}),
// T0 = ceil(ln(2(p-(d-1))/delta) / ln(1/alpha)), or 1 when alpha = 0.
SampleComplexity sample_complexity(std::uint32_t p, std::uint32_t d,
                                   std::uint32_t w_star, double delta);

}  // namespace gf2bench

#endif  // GF2BENCH_DECODER_HPP_
