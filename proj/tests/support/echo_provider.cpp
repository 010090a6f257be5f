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

// Command provider for tests: answers each prompt with the canonical answer
// looked up by GF2BENCH_PROMPT_ID in the truths file named by argv[1].
// Usage: echo_provider <truths.json> [canonical|names|silent|fail]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <nlohmann/json.hpp>

#include "gf2bench/llm_runner.hpp"
#include "gf2bench/promptkit.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: echo_provider <truths.json> [style]\n";
    return 2;
  }
  const std::string style = argc > 2 ? argv[2] : "canonical";
  std::string prompt((std::istreambuf_iterator<char>(std::cin)),
                     std::istreambuf_iterator<char>());
  if (style == "fail") return 3;
  const char* id = std::getenv("GF2BENCH_PROMPT_ID");
  std::ifstream in(argv[1]);
  const auto truths = gf2bench::truths_from_json(nlohmann::json::parse(in));
  const auto it = id ? truths.find(id) : truths.end();
  if (it == truths.end()) {
    std::cerr << "unknown prompt id\n";
    return 4;
  }
  std::cout << "Read " << prompt.size() << " bytes. Working through the table.\n";
  if (style == "silent") {
    std::cout << "I could not decide.\n";
  } else if (style == "names") {
    std::cout << "The next term multiplies";
    for (std::uint32_t i : it->second.support.indices()) {
      std::cout << " x_" << it->second.meta.n + i;
    }
    std::cout << ".\n";
  } else {
    std::cout << gf2bench::canonical_answer(it->second.support, it->second.meta.n)
              << '\n';
  }
  return 0;
}
