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

// Small helpers shared by the CSV/JSON writers.

#ifndef GF2BENCH_TEXTIO_HPP_
#define GF2BENCH_TEXTIO_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace gf2bench {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

// Splits one CSV line on commas. Fields never contain commas or quotes.
std::vector<std::string> split_csv(std::string_view line);

// Opens a file for writing, creating parent directories; throws IoError with
// the path on failure.
std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace gf2bench

#endif  // GF2BENCH_TEXTIO_HPP_
