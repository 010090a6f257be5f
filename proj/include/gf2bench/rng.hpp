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

#ifndef GF2BENCH_RNG_HPP_
#define GF2BENCH_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gf2bench {

using Rng = std::mt19937_64;

// Derives an independent stream from a root seed and a path of stream ids.
//
// Every random draw in the toolkit comes from a stream made here, keyed by
// its position in the work grid (cell, trial, purpose, ...), so results do
// not depend on scheduling or worker count.
inline Rng make_stream(std::uint64_t root,
                       std::initializer_list<std::uint64_t> path) {
  std::seed_seq::result_type buf[2 + 2 * 8] = {};
  std::size_t len = 0;
  auto push = [&](std::uint64_t v) {
    buf[len++] = static_cast<std::uint32_t>(v);
    buf[len++] = static_cast<std::uint32_t>(v >> 32);
  };
  push(root);
  for (std::uint64_t id : path) {
    if (len + 2 > std::size(buf)) break;
    push(id);
  }
  std::seed_seq seq(buf, buf + len);
  return Rng(seq);
}

// Stream-purpose tags shared across modules.
enum StreamTag : std::uint64_t {
  kInstanceStream = 1,
  kOracleStream = 2,
  kEstimatorStream = 3,
  kSearchStream = 4,
  kSyntheticStream = 5,
};

}  // namespace gf2bench

#endif  // GF2BENCH_RNG_HPP_
