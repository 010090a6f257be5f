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

#include <atomic>
#include <cstdlib>
#include <string>

#include "gf2bench/errors.hpp"
#include "gf2bench/kernels.hpp"

namespace gf2bench::kernels {

namespace {

constexpr KernelTable kScalarTable{Backend::kScalar, &scalar::term_parity,
                                   &scalar::score_candidates};

#if defined(GF2BENCH_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{Backend::kAvx2, &avx2::term_parity,
                                 &avx2::score_candidates};
#endif

const KernelTable* detect() {
  if (const char* env = std::getenv("GF2BENCH_SIMD")) {
    return &table(parse_backend(env));
  }
  if (supported(Backend::kAvx2)) return &table(Backend::kAvx2);
  return &kScalarTable;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{detect()};
  return ptr;
}

}  // namespace

bool supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(GF2BENCH_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!supported(backend)) {
    throw ConfigError("SIMD backend '" + std::string(name(backend)) +
                      "' is not supported on this CPU");
  }
#if defined(GF2BENCH_HAVE_AVX2_KERNELS)
  if (backend == Backend::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& active() {
  return *current().load(std::memory_order_acquire);
}

void select(Backend backend) {
  current().store(&table(backend), std::memory_order_release);
}

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Backend parse_backend(std::string_view text) {
  if (text == "scalar") return Backend::kScalar;
  if (text == "avx2") return Backend::kAvx2;
  throw ConfigError("unknown SIMD backend '" + std::string(text) +
                    "' (expected scalar or avx2)");
}

}  // namespace gf2bench::kernels
