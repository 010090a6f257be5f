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

#include "gf2bench/promptkit.hpp"

#include <algorithm>
#include <optional>

#include "gf2bench/errors.hpp"

namespace gf2bench {
namespace {

std::string var(std::uint32_t i) { return "x_" + std::to_string(i); }

std::string placeholders(std::uint32_t count) {
  static constexpr std::string_view kLetters = "ijklmqrs";
  std::string out;
  if (count <= kLetters.size()) {
    for (std::uint32_t i = 0; i < count; ++i) {
      if (i) out += ", ";
      out += kLetters[i];
    }
    return out;
  }
  return "i_1, i_2, ..., i_" + std::to_string(count);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Digit runs longer than this cannot be valid indices and are skipped.
constexpr std::size_t kMaxDigits = 9;

std::vector<std::uint32_t> extract_integers(std::string_view s) {
  std::vector<std::uint32_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_digit(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_digit(s[j])) ++j;
    if (j - i <= kMaxDigits) {
      std::uint32_t v = 0;
      for (std::size_t k = i; k < j; ++k) v = v * 10 + (s[k] - '0');
      out.push_back(v);
    }
    i = j;
  }
  return out;
}

// Indices written as x_14 or x_{14}.
std::vector<std::uint32_t> extract_names(std::string_view s) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    if ((s[i] != 'x' && s[i] != 'X') || s[i + 1] != '_') continue;
    std::size_t j = i + 2;
    if (j < s.size() && s[j] == '{') ++j;
    const std::size_t start = j;
    while (j < s.size() && is_digit(s[j])) ++j;
    if (j > start && j - start <= kMaxDigits) {
      std::uint32_t v = 0;
      for (std::size_t k = start; k < j; ++k) v = v * 10 + (s[k] - '0');
      out.push_back(v);
    }
  }
  return out;
}

std::optional<std::vector<std::uint32_t>> from_boxed(std::string_view text) {
  const std::size_t at = text.rfind("boxed{");
  if (at == std::string_view::npos) return std::nullopt;
  std::size_t pos = at + 6;
  std::size_t depth = 1;
  std::size_t end = pos;
  for (; end < text.size(); ++end) {
    if (text[end] == '{') ++depth;
    if (text[end] == '}' && --depth == 0) break;
  }
  auto ints = extract_integers(text.substr(pos, end - pos));
  if (ints.empty()) return std::nullopt;
  return ints;
}

std::optional<std::vector<std::uint32_t>> from_brackets(std::string_view text) {
  std::size_t search = text.size();
  while (search > 0) {
    const std::size_t open = text.rfind('[', search - 1);
    if (open == std::string_view::npos) return std::nullopt;
    const std::size_t close = text.find(']', open);
    const std::size_t stop = close == std::string_view::npos ? text.size() : close;
    auto ints = extract_integers(text.substr(open + 1, stop - open - 1));
    if (!ints.empty()) return ints;
    search = open;
  }
  return std::nullopt;
}

std::vector<std::string_view> lines_reversed(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t end = text.size();
  while (true) {
    const std::size_t nl = end == 0 ? std::string_view::npos
                                    : text.rfind('\n', end - 1);
    const std::size_t start = nl == std::string_view::npos ? 0 : nl + 1;
    out.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    end = nl;
  }
  return out;
}

}  // namespace

std::string_view to_string(ToolCondition condition) {
  switch (condition) {
    case ToolCondition::kUnspecified: return "unspecified";
    case ToolCondition::kToolsAllowed: return "tools";
    case ToolCondition::kNoTools: return "no-tools";
  }
  return "unspecified";
}

ToolCondition parse_tool_condition(std::string_view text) {
  if (text == "unspecified") return ToolCondition::kUnspecified;
  if (text == "tools") return ToolCondition::kToolsAllowed;
  if (text == "no-tools") return ToolCondition::kNoTools;
  throw ConfigError("unknown tool condition '" + std::string(text) +
                    "' (expected unspecified, tools or no-tools)");
}

PromptDoc render_prompt(const Instance& instance, std::uint32_t g,
                        const EvidenceBatch& batch, ToolCondition tools) {
  const BenchmarkConfig& c = instance.config();
  if (batch.g != g) {
    throw DimensionError("render_prompt: batch depth " + std::to_string(batch.g) +
                         " != g=" + std::to_string(g));
  }
  if (g >= c.n) throw DimensionError("render_prompt: g must be < n");
  const std::uint32_t n = c.n;
  const std::uint32_t N = c.n + c.p;
  const std::uint32_t m = c.payload_degree();

  PromptDoc doc;
  doc.truth = instance.support(g);
  doc.meta = {N, n, c.p, c.d, g};

  std::string& t = doc.text;
  t.reserve(256 + batch.examples.size() * (2 * N + 8) + g * 48);
  t += "You are reconstructing a Boolean circuit over GF(2) one term at a time.\n\n";
  t += "## Metadata\n";
  t += "- Variables: N = " + std::to_string(N) + ", flattened as x_0 .. " +
       var(N - 1) + ".\n";
  t += "- Address variables: x_0 .. " + var(n - 1) + " (n = " +
       std::to_string(n) + ").\n";
  t += "- Payload variables: " + var(n) + " .. " + var(N - 1) + " (p = " +
       std::to_string(c.p) + ").\n";
  t += "- Every term is a monomial of total degree d = " + std::to_string(c.d) +
       ": one address variable AND " + std::to_string(m) +
       " payload variables.\n";
  t += "- The circuit output y is the XOR of all terms.\n\n";

  t += "## Revealed terms\n";
  if (g == 0) {
    t += "No terms revealed yet.\n";
  } else {
    for (std::uint32_t j = 0; j < g; ++j) {
      t += "M_" + std::to_string(j + 1) + " = " + var(j);
      for (std::uint32_t i : instance.support(j).indices()) {
        t += " AND " + var(n + i);
      }
      t += '\n';
    }
  }
  t += '\n';

  t += "## Observations\n";
  t += "Each row lists the bits x_0 .. " + var(N - 1) +
       " separated by spaces, then | and the output y.\n";
  for (const Example& ex : batch.examples) {
    for (std::size_t i = 0; i < ex.address.size(); ++i) {
      t += ex.address.get(i) ? '1' : '0';
      t += ' ';
    }
    for (std::size_t i = 0; i < ex.payload.size(); ++i) {
      t += ex.payload.get(i) ? '1' : '0';
      t += ' ';
    }
    t += "| ";
    t += ex.label ? '1' : '0';
    t += '\n';
  }
  t += '\n';

  t += "## Task\n";
  t += "The next term uses the active address variable " + var(g) +
       ". Identify its " + std::to_string(m) +
       " payload variables. Search strictly within the payload index range [" +
       std::to_string(n) + ", " + std::to_string(N - 1) + "].\n\n";

  t += "## Answer format\n";
  t += "Give the payload indices in ascending order as \\boxed{[" +
       placeholders(m) + "]}.\n";

  switch (tools) {
    case ToolCondition::kUnspecified: break;
    case ToolCondition::kToolsAllowed:
      t += "\nYou may use code execution or other tools.\n";
      break;
    case ToolCondition::kNoTools:
      t += "\nDo not use code execution or any other tools; reason directly.\n";
      break;
  }
  return doc;
}

std::string canonical_answer(const Support& support, std::uint32_t n) {
  std::string out = "\\boxed{[";
  bool first = true;
  for (std::uint32_t i : support.indices()) {
    if (!first) out += ", ";
    out += std::to_string(n + i);
    first = false;
  }
  return out + "]}";
}

ParsedAnswer parse_answer(std::string_view text, const BenchmarkConfig& config,
                          std::uint32_t g) {
  ParsedAnswer ans;
  std::optional<std::vector<std::uint32_t>> found = from_boxed(text);
  if (found) {
    ans.notes.push_back("boxed");
  } else if ((found = from_brackets(text))) {
    ans.notes.push_back("bracketed-list");
  } else {
    const auto lines = lines_reversed(text);
    for (std::string_view line : lines) {
      auto names = extract_names(line);
      if (!names.empty()) {
        found = std::move(names);
        ans.notes.push_back("variable-names");
        break;
      }
    }
    if (!found) {
      const std::size_t need = std::max<std::uint32_t>(1, config.payload_degree());
      for (std::string_view line : lines) {
        auto ints = extract_integers(line);
        if (ints.size() >= need) {
          found = std::move(ints);
          ans.notes.push_back("integer-line");
          break;
        }
      }
    }
  }
  if (!found) return ans;

  std::vector<std::uint32_t>& v = *found;
  if (std::erase(v, g) > 0) ans.notes.push_back("stripped-address");
  std::ranges::sort(v);
  const auto dup = std::ranges::unique(v);
  if (!dup.empty()) {
    v.erase(dup.begin(), dup.end());
    ans.notes.push_back("deduplicated");
  }
  ans.indices = std::move(v);
  ans.parsed = !ans.indices.empty();
  return ans;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAccept: return "correct";
    case Verdict::kUnparseable: return "unparseable";
    case Verdict::kRejectCount: return "wrong-count";
    case Verdict::kRejectRange: return "out-of-range";
    case Verdict::kRejectMismatch: return "incorrect";
  }
  return "incorrect";
}

Verdict validate(const ParsedAnswer& answer, const Support& truth,
                 std::uint32_t n, std::uint32_t p, std::uint32_t d) {
  if (!answer.parsed) return Verdict::kUnparseable;
  if (answer.indices.size() != d - 1) return Verdict::kRejectCount;
  std::uint64_t mask = 0;
  for (std::uint32_t x : answer.indices) {
    if (x < n || x - n >= p) return Verdict::kRejectRange;
    mask |= std::uint64_t{1} << (x - n);
  }
  return mask == truth.mask() ? Verdict::kAccept : Verdict::kRejectMismatch;
}

Verdict validate(const ParsedAnswer& answer, const Instance& instance,
                 std::uint32_t g) {
  const BenchmarkConfig& c = instance.config();
  if (g >= c.n) throw DimensionError("validate: g must be < n");
  return validate(answer, instance.support(g), c.n, c.p, c.d);
}

}  // namespace gf2bench
