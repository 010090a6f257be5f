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

// AVX2 kernels. This file is compiled without -mavx2; each function carries a
// target attribute instead so no AVX2 code leaks into inline functions shared
// with the rest of the library. Callers must check kernels::supported() first.

#include "gf2bench/kernels.hpp"

#if defined(GF2BENCH_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define GF2BENCH_AVX2 __attribute__((target("avx2")))

namespace gf2bench::kernels::avx2 {

GF2BENCH_AVX2 bool term_parity(std::span<const std::uint64_t> support_masks,
                               std::span<const std::uint64_t> address_words,
                               std::uint64_t payload) {
  const std::size_t count = support_masks.size();
  const __m256i v = _mm256_set1_epi64x(static_cast<long long>(payload));
  const __m256i lane_shift = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i one = _mm256_set1_epi64x(1);
  __m256i acc = _mm256_setzero_si256();

  std::size_t j = 0;
  // Four terms per step; j stays a multiple of 4, so the four address bits
  // never straddle a 64-bit word.
  for (; j + 4 <= count; j += 4) {
    const __m256i s = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(support_masks.data() + j));
    const __m256i fired = _mm256_cmpeq_epi64(_mm256_and_si256(s, v), s);
    const std::uint64_t word = address_words[j >> 6] >> (j & 63);
    const __m256i bits = _mm256_and_si256(
        _mm256_srlv_epi64(_mm256_set1_epi64x(static_cast<long long>(word)),
                          lane_shift),
        one);
    acc = _mm256_xor_si256(acc, _mm256_and_si256(fired, bits));
  }

  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t parity = lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
  for (; j < count; ++j) {
    const std::uint64_t a = (address_words[j >> 6] >> (j & 63)) & 1u;
    const std::uint64_t s = support_masks[j];
    parity ^= a & static_cast<std::uint64_t>((payload & s) == s);
  }
  return (parity & 1u) != 0;
}

GF2BENCH_AVX2 void score_candidates(std::span<const std::uint64_t> candidates,
                                    std::span<const std::uint64_t> payloads,
                                    std::span<const double> w_fired,
                                    std::span<const double> w_silent,
                                    std::span<double> scores) {
  const std::size_t n_cand = candidates.size();
  const std::size_t n_samples = payloads.size();
  std::size_t c = 0;
  for (; c + 4 <= n_cand; c += 4) {
    const __m256i s = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(candidates.data() + c));
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n_samples; ++k) {
      const __m256i v =
          _mm256_set1_epi64x(static_cast<long long>(payloads[k]));
      const __m256i fired = _mm256_cmpeq_epi64(_mm256_and_si256(s, v), s);
      const __m256d w = _mm256_blendv_pd(_mm256_set1_pd(w_silent[k]),
                                         _mm256_set1_pd(w_fired[k]),
                                         _mm256_castsi256_pd(fired));
      acc = _mm256_add_pd(acc, w);
    }
    _mm256_storeu_pd(scores.data() + c, acc);
  }
  for (; c < n_cand; ++c) {
    const std::uint64_t s = candidates[c];
    double acc = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
      acc += (payloads[k] & s) == s ? w_fired[k] : w_silent[k];
    }
    scores[c] = acc;
  }
}

}  // namespace gf2bench::kernels::avx2

#endif  // GF2BENCH_HAVE_AVX2_KERNELS
