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

// Inner-loop kernels for GF(2) term evaluation and candidate scoring.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is picked once at startup from CPUID and can be
// overridden with select() or the GF2BENCH_SIMD environment variable
// ("scalar" or "avx2"). All variants must agree bit-for-bit with the scalar
// reference: score_candidates accumulates samples in the same order in every
// lane, so tie detection in the estimators does not depend on the backend.

#ifndef GF2BENCH_KERNELS_HPP_
#define GF2BENCH_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <string_view>

namespace gf2bench::kernels {

enum class Backend { kScalar, kAvx2 };

// XOR over j of a_j * [S_j subset of v], where support_masks[j] is S_j and
// bit j of the address words is a_j. Only terms j < support_masks.size()
// contribute; address_words must cover that many bits.
using TermParityFn = bool (*)(std::span<const std::uint64_t> support_masks,
                              std::span<const std::uint64_t> address_words,
                              std::uint64_t payload);

// scores[c] = sum over samples k, in order k = 0, 1, ..., of
//   fired(c, k) ? w_fired[k] : w_silent[k],
// where fired(c, k) = (payloads[k] & candidates[c]) == candidates[c].
using ScoreCandidatesFn = void (*)(std::span<const std::uint64_t> candidates,
                                   std::span<const std::uint64_t> payloads,
                                   std::span<const double> w_fired,
                                   std::span<const double> w_silent,
                                   std::span<double> scores);

struct KernelTable {
  Backend backend;
  TermParityFn term_parity;
  ScoreCandidatesFn score_candidates;
};

bool supported(Backend backend);

// Kernel table for a specific backend; throws ConfigError if unsupported.
const KernelTable& table(Backend backend);

// The table used by the library.
const KernelTable& active();

void select(Backend backend);

std::string_view name(Backend backend);
Backend parse_backend(std::string_view text);

namespace scalar {
bool term_parity(std::span<const std::uint64_t> support_masks,
                 std::span<const std::uint64_t> address_words,
                 std::uint64_t payload);
void score_candidates(std::span<const std::uint64_t> candidates,
                      std::span<const std::uint64_t> payloads,
                      std::span<const double> w_fired,
                      std::span<const double> w_silent,
                      std::span<double> scores);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GF2BENCH_HAVE_AVX2_KERNELS 1
namespace avx2 {
bool term_parity(std::span<const std::uint64_t> support_masks,
                 std::span<const std::uint64_t> address_words,
                 std::uint64_t payload);
void score_candidates(std::span<const std::uint64_t> candidates,
                      std::span<const std::uint64_t> payloads,
                      std::span<const double> w_fired,
                      std::span<const double> w_silent,
                      std::span<double> scores);
}  // namespace avx2
#endif

}  // namespace gf2bench::kernels

#endif  // GF2BENCH_KERNELS_HPP_
