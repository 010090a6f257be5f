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

#include "gf2bench/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ranges>

#include "gf2bench/errors.hpp"
#include "gf2bench/kernels.hpp"
#include "gf2bench/weights.hpp"

namespace gf2bench {

void BenchmarkConfig::validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (d < 2) throw ConfigError("d must be at least 2 (payload degree >= 1)");
  if (p > kMaxPayloadBits) throw ConfigError("p must be at most 64");
  if (p < d - 1) throw ConfigError("p must be at least d-1");
  if (w_star < d - 1 || w_star > p) {
    throw ConfigError("w_star must lie in [d-1, p]");
  }
  if (K < 1) throw ConfigError("K must be at least 1");
}

BenchmarkConfig make_config(std::uint32_t n, std::uint32_t p, std::uint32_t d,
                            std::uint32_t K, std::uint64_t seed,
                            std::optional<std::uint32_t> w_override) {
  BenchmarkConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.d = d;
  cfg.K = K;
  cfg.seed = seed;
  if (d < 2 || p < d - 1 || p > kMaxPayloadBits) {
    cfg.w_star = 0;
    cfg.validate();  // throws with the specific reason
  }
  cfg.w_star = w_override ? *w_override : choose_weight(p, d).w_star;
  cfg.validate();
  return cfg;
}

Support Support::from_indices(std::vector<std::uint32_t> indices,
                              std::uint32_t p, std::uint32_t size) {
  if (indices.size() != size) {
    throw DimensionError("support must have exactly " + std::to_string(size) +
                         " indices, got " + std::to_string(indices.size()));
  }
  std::ranges::sort(indices);
  Support s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= p || indices[i] >= kMaxPayloadBits) {
      throw DimensionError("support index " + std::to_string(indices[i]) +
                           " outside [0, p)");
    }
    if (i > 0 && indices[i] == indices[i - 1]) {
      throw DimensionError("support indices must be distinct");
    }
    s.mask_ |= 1ull << indices[i];
  }
  s.indices_ = std::move(indices);
  return s;
}

Support Support::from_mask(std::uint64_t mask) {
  Support s;
  s.mask_ = mask;
  while (mask != 0) {
    s.indices_.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

std::string Support::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices_[i]);
  }
  out += '}';
  return out;
}

Instance::Instance(BenchmarkConfig config, std::vector<Support> supports)
    : config_(config), supports_(std::move(supports)) {
  config_.validate();
  if (supports_.size() != config_.n) {
    throw DimensionError("instance needs exactly n supports");
  }
  masks_.reserve(supports_.size());
  for (const Support& s : supports_) {
    if (s.size() != config_.payload_degree()) {
      throw DimensionError("support size differs from d-1");
    }
    if (config_.p < 64 && (s.mask() >> config_.p) != 0) {
      throw DimensionError("support index outside [0, p)");
    }
    masks_.push_back(s.mask());
  }
}

Prefix::Prefix(const Instance& instance, std::uint32_t g)
    : config_(instance.config()), g_(g) {
  if (g > instance.length()) {
    throw DimensionError("prefix depth exceeds instance length");
  }
  supports_.assign(instance.supports().begin(),
                   instance.supports().begin() + g);
  masks_.assign(instance.masks().begin(), instance.masks().begin() + g);
}

Support sample_support(std::uint32_t p, std::uint32_t size, Rng& rng) {
  std::vector<std::uint32_t> picked;
  picked.reserve(size);
  // Selection sampling over an ordered range yields a sorted uniform subset.
  std::vector<std::uint32_t> all(p);
  std::iota(all.begin(), all.end(), 0u);
  std::ranges::sample(all, std::back_inserter(picked), size, rng);
  return Support::from_indices(std::move(picked), p, size);
}

Instance sample_instance(const BenchmarkConfig& config, Rng& rng) {
  config.validate();
  std::vector<Support> supports;
  supports.reserve(config.n);
  for (std::uint32_t j = 0; j < config.n; ++j) {
    supports.push_back(sample_support(config.p, config.payload_degree(), rng));
  }
  return Instance(config, std::move(supports));
}

namespace {

void check_dims(const BenchmarkConfig& cfg, const BitVector& address,
                const BitVector& payload) {
  if (address.size() != cfg.n) {
    throw DimensionError("address length " + std::to_string(address.size()) +
                         " != n = " + std::to_string(cfg.n));
  }
  if (payload.size() != cfg.p) {
    throw DimensionError("payload length " + std::to_string(payload.size()) +
                         " != p = " + std::to_string(cfg.p));
  }
}

}  // namespace

bool eval_circuit(const Instance& instance, const BitVector& address,
                  const BitVector& payload) {
  check_dims(instance.config(), address, payload);
  return kernels::active().term_parity(instance.masks(), address.words(),
                                       payload.word0());
}

bool prefix_mask(const Prefix& prefix, const BitVector& address,
                 const BitVector& payload) {
  check_dims(prefix.config(), address, payload);
  return kernels::active().term_parity(prefix.masks(), address.words(),
                                       payload.word0());
}

bool residual(const Prefix& prefix, const Example& example) {
  return example.label ^ prefix_mask(prefix, example.address, example.payload);
}

std::uint32_t active_prefix_count(const BitVector& address, std::uint32_t g) {
  if (g > address.size()) {
    throw DimensionError("active_prefix_count: g exceeds address length");
  }
  return static_cast<std::uint32_t>(address.popcount_prefix(g));
}

}  // namespace gf2bench
