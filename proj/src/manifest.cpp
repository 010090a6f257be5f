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

#include "gf2bench/manifest.hpp"

#include <openssl/evp.h>

#include <iterator>
#include <sstream>

#include "gf2bench/errors.hpp"
#include "gf2bench/textio.hpp"

namespace gf2bench {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw DomainError("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

nlohmann::ordered_json to_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["subcommand"] = m.subcommand;
  j["command"] = m.argv;
  j["config"] = m.config;
  j["config_sha256"] = sha256_hex(m.config.dump());
  j["seed"] = m.seed;
  j["version"] = std::string(kVersion);
  j["kernel_backend"] = m.kernel_backend;
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& path : m.outputs) {
    std::ifstream in = open_input(path);
    const std::string content{std::istreambuf_iterator<char>(in), {}};
    j["outputs"].push_back(
        {{"path", path.filename().string()}, {"sha256", sha256_hex(content)}});
  }
  return j;
}

std::filesystem::path write_manifest(const std::filesystem::path& dir,
                                     const Manifest& m) {
  const auto path = dir / ("manifest-" + m.subcommand + ".json");
  std::ofstream out = open_output(path);
  out << to_json(m).dump(2) << '\n';
  return path;
}

}  // namespace gf2bench
