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

// Prompt rendering, tolerant answer parsing and O(d) validation.
//
// Template gf2-step-v1. Variables are flattened as x_0..x_{N-1} with the n
// address bits first, then the p payload bits, so payload coordinate i is
// x_{n+i}. Sections, in order:
//
//   ## Metadata        N, n, p, total degree d and payload count d-1
//   ## Revealed terms  "M_j = x_{j-1} AND x_{n+i} AND ..." for j = 1..g, or
//                      "No terms revealed yet."
//   ## Observations    one row per example: N space-separated bits, " | y"
//   ## Task            names x_g as the active address variable and [n, N-1]
//                      as the search range
//   ## Answer format   \boxed{[i, j, k]} with placeholders only
//
// An optional tool-condition paragraph is appended after the answer format.
// Any change to the wording must bump kPromptTemplate.

#ifndef GF2BENCH_PROMPTKIT_HPP_
#define GF2BENCH_PROMPTKIT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gf2bench/core.hpp"
#include "gf2bench/oracle.hpp"

namespace gf2bench {

inline constexpr std::string_view kPromptTemplate = "gf2-step-v1";

enum class ToolCondition { kUnspecified, kToolsAllowed, kNoTools };

std::string_view to_string(ToolCondition condition);
ToolCondition parse_tool_condition(std::string_view text);

struct PromptMeta {
  std::uint32_t N = 0;
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::uint32_t g = 0;  // index of the active address variable
};

struct PromptDoc {
  std::string text;
  Support truth;  // never rendered into text
  PromptMeta meta;
};

// Throws DimensionError when batch.g != g or g >= n.
PromptDoc render_prompt(const Instance& instance, std::uint32_t g,
                        const EvidenceBatch& batch,
                        ToolCondition tools = ToolCondition::kUnspecified);

// "\boxed{[14, 17, 20]}" with flattened indices n + i.
std::string canonical_answer(const Support& support, std::uint32_t n);

struct ParsedAnswer {
  bool parsed = false;                 // false: nothing extractable
  std::vector<std::uint32_t> indices;  // flattened, sorted, deduplicated
  std::vector<std::string> notes;      // leniencies applied, in order
};

// Ladder: last \boxed{...} region, then last [...] list, then the last line
// naming x_i variables, then the last line holding at least d-1 integers.
// The address index g is removed if present. Total on arbitrary bytes.
ParsedAnswer parse_answer(std::string_view text, const BenchmarkConfig& config,
                          std::uint32_t g);

enum class Verdict {
  kAccept,
  kUnparseable,
  kRejectCount,     // |indices| != d-1
  kRejectRange,     // some index outside [n, N-1]
  kRejectMismatch,  // well-formed but not the next support
};

std::string_view to_string(Verdict verdict);

Verdict validate(const ParsedAnswer& answer, const Support& truth,
                 std::uint32_t n, std::uint32_t p, std::uint32_t d);
Verdict validate(const ParsedAnswer& answer, const Instance& instance,
                 std::uint32_t g);

}  // namespace gf2bench

#endif  // GF2BENCH_PROMPTKIT_HPP_
