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

// Instances, examples and GF(2) evaluation for the address x payload circuit
// family
//
//   f(a, v) = XOR_j  a_j * prod_{i in S_j} v_i ,   |S_j| = d - 1.
//
// Indexing is 0-based throughout: support(0) is the first term, address bit 0
// gates it, and payload coordinates run over [0, p).

#ifndef GF2BENCH_CORE_HPP_
#define GF2BENCH_CORE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gf2bench/bitvec.hpp"
#include "gf2bench/rng.hpp"

namespace gf2bench {

// Payload coordinates are packed into one 64-bit mask.
inline constexpr std::uint32_t kMaxPayloadBits = 64;

struct BenchmarkConfig {
  std::uint32_t n = 1;       // address bits (circuit length)
  std::uint32_t p = 12;      // payload bits
  std::uint32_t d = 4;       // total monomial degree; payload degree is d - 1
  std::uint32_t w_star = 10; // payload Hamming weight
  std::uint32_t K = 32;      // evidence batch size
  std::uint64_t seed = 0;

  std::uint32_t payload_degree() const { return d - 1; }

  // Throws ConfigError when an invariant is violated.
  void validate() const;

  friend bool operator==(const BenchmarkConfig&,
                         const BenchmarkConfig&) = default;
};

// Builds a config with w_star = choose_weight(p, d) unless overridden.
BenchmarkConfig make_config(std::uint32_t n, std::uint32_t p, std::uint32_t d,
                            std::uint32_t K, std::uint64_t seed,
                            std::optional<std::uint32_t> w_override = {});

// Sorted set of d - 1 payload coordinates.
class Support {
 public:
  Support() = default;

  // Validates size, range and strict ordering after sorting; duplicates are
  // rejected rather than merged.
  static Support from_indices(std::vector<std::uint32_t> indices,
                              std::uint32_t p, std::uint32_t size);
  static Support from_mask(std::uint64_t mask);

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::uint64_t mask() const { return mask_; }

  // "{0,1,2}"
  std::string to_string() const;

  friend bool operator==(const Support& a, const Support& b) {
    return a.mask_ == b.mask_;
  }

 private:
  std::vector<std::uint32_t> indices_;
  std::uint64_t mask_ = 0;
};

class Instance {
 public:
  Instance(BenchmarkConfig config, std::vector<Support> supports);

  const BenchmarkConfig& config() const { return config_; }
  std::uint32_t length() const { return config_.n; }
  // 0-based: support(0) is S_1.
  const Support& support(std::size_t j) const { return supports_[j]; }
  const std::vector<Support>& supports() const { return supports_; }
  std::span<const std::uint64_t> masks() const { return masks_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  BenchmarkConfig config_;
  std::vector<Support> supports_;
  std::vector<std::uint64_t> masks_;
};

struct Example {
  BitVector address;  // length n
  BitVector payload;  // length p
  bool label = false;
};

// The first g terms of an instance. Holds copies of S_1..S_g only, so code
// given a Prefix has no path to the withheld terms.
class Prefix {
 public:
  Prefix(const Instance& instance, std::uint32_t g);

  std::uint32_t depth() const { return g_; }
  const BenchmarkConfig& config() const { return config_; }
  const Support& support(std::size_t j) const { return supports_[j]; }
  const std::vector<Support>& supports() const { return supports_; }
  std::span<const std::uint64_t> masks() const { return masks_; }

 private:
  BenchmarkConfig config_;
  std::uint32_t g_;
  std::vector<Support> supports_;
  std::vector<std::uint64_t> masks_;
};

// n supports drawn i.i.d. uniformly (with replacement across steps) from the
// (d-1)-subsets of [p].
Instance sample_instance(const BenchmarkConfig& config, Rng& rng);

// Uniform (d-1)-subset of [p].
Support sample_support(std::uint32_t p, std::uint32_t size, Rng& rng);

bool eval_circuit(const Instance& instance, const BitVector& address,
                  const BitVector& payload);

// XOR of the revealed terms a_j M_j(v), j < g.
bool prefix_mask(const Prefix& prefix, const BitVector& address,
                 const BitVector& payload);

// y XOR prefix_mask; equals the next-term signal under the step-g oracle.
bool residual(const Prefix& prefix, const Example& example);

// Number of set bits among the first g address bits.
std::uint32_t active_prefix_count(const BitVector& address, std::uint32_t g);

}  // namespace gf2bench

#endif  // GF2BENCH_CORE_HPP_
