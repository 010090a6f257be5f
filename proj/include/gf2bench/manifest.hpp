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

// Run manifests: enough to replay a command and check its outputs.

#ifndef GF2BENCH_MANIFEST_HPP_
#define GF2BENCH_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace gf2bench {

inline constexpr std::string_view kVersion = "0.3.0";

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

struct Manifest {
  std::string subcommand;
  std::vector<std::string> argv;
  nlohmann::ordered_json config;  // effective parameters; hashed on output
  std::uint64_t seed = 0;
  std::string kernel_backend;
  std::vector<std::filesystem::path> outputs;
};

nlohmann::ordered_json to_json(const Manifest& m);

// Writes <dir>/manifest-<subcommand>.json; output entries carry SHA-256 of
// each file's current content.
std::filesystem::path write_manifest(const std::filesystem::path& dir,
                                     const Manifest& m);

}  // namespace gf2bench

#endif  // GF2BENCH_MANIFEST_HPP_
