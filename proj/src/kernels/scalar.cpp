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

#include "gf2bench/kernels.hpp"

namespace gf2bench::kernels::scalar {

bool term_parity(std::span<const std::uint64_t> support_masks,
                 std::span<const std::uint64_t> address_words,
                 std::uint64_t payload) {
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < support_masks.size(); ++j) {
    const std::uint64_t a = (address_words[j >> 6] >> (j & 63)) & 1u;
    const std::uint64_t s = support_masks[j];
    acc ^= a & static_cast<std::uint64_t>((payload & s) == s);
  }
  return acc != 0;
}

void score_candidates(std::span<const std::uint64_t> candidates,
                      std::span<const std::uint64_t> payloads,
                      std::span<const double> w_fired,
                      std::span<const double> w_silent,
                      std::span<double> scores) {
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const std::uint64_t s = candidates[c];
    double acc = 0.0;
    for (std::size_t k = 0; k < payloads.size(); ++k) {
      acc += (payloads[k] & s) == s ? w_fired[k] : w_silent[k];
    }
    scores[c] = acc;
  }
}

}  // namespace gf2bench::kernels::scalar
