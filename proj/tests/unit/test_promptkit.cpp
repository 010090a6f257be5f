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

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "gf2bench/decoder.hpp"
#include "gf2bench/errors.hpp"
#include "gf2bench/promptkit.hpp"

using namespace gf2bench;

namespace {

struct Fixture {
  BenchmarkConfig cfg = make_config(8, 12, 4, 32, 0);
  Rng rng = make_stream(50, {});
  Instance inst = sample_instance(cfg, rng);
};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::uint32_t> flat(std::initializer_list<std::uint32_t> v) { return v; }

}  // namespace

TEST_CASE("rendered prompt layout") {
  Fixture f;
  const EvidenceBatch batch = sample_step(f.inst, 3, 32, OracleMode::kAdversarial, f.rng);
  const PromptDoc doc = render_prompt(f.inst, 3, batch);
  const std::string& t = doc.text;
  std::size_t last = 0;
  for (const char* h : {"## Metadata", "## Revealed terms", "## Observations", "## Task",
                        "## Answer format"}) {
    const std::size_t at = t.find(h);
    REQUIRE(at != std::string::npos);
    CHECK(at >= last);
    last = at;
  }
  CHECK(t.find("N = 20") != std::string::npos);
  CHECK(t.find("d = 4") != std::string::npos);
  CHECK(t.find("M_3 = x_2 AND") != std::string::npos);
  CHECK(t.find("M_4 =") == std::string::npos);
  CHECK(t.find("active address variable x_3") != std::string::npos);
  CHECK(t.find("[8, 19]") != std::string::npos);
  CHECK(t.find("\\boxed{[") != std::string::npos);
  CHECK(t.find("tools") == std::string::npos);
  int rows = 0;
  for (const auto& line : lines_of(t)) rows += line[0] == '0' || line[0] == '1';
  CHECK(rows == 32);
  CHECK(doc.meta.N == 20);
  CHECK(doc.meta.g == 3);
  CHECK(doc.truth == f.inst.support(3));
  // The answer itself is never rendered.
  CHECK(t.find(canonical_answer(doc.truth, 8)) == std::string::npos);

  CHECK(render_prompt(f.inst, 0, sample_step(f.inst, 0, 4, OracleMode::kAdversarial, f.rng))
            .text.find("No terms revealed yet.") != std::string::npos);
  CHECK(render_prompt(f.inst, 3, batch, ToolCondition::kNoTools).text.find("Do not use") !=
        std::string::npos);
  CHECK_THROWS_AS(render_prompt(f.inst, 4, batch), DimensionError);
  CHECK_THROWS_AS(render_prompt(f.inst, 8, batch), DimensionError);
}

TEST_CASE("prompt text carries enough to decode; rows read back exactly") {
  // Rebuild the revealed terms and table from the text, then run the
  // intersection decoder on the recovered residuals.
  Fixture f;
  int solved = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Instance inst = sample_instance(make_config(10, 12, 4, 103, 0), f.rng);
    const std::uint32_t g = f.rng() % 10;
    const EvidenceBatch batch = sample_step(inst, g, 103, OracleMode::kAdversarial, f.rng);
    const std::string text = render_prompt(inst, g, batch).text;
    std::vector<std::uint64_t> terms;
    std::vector<ResidualSample> samples;
    for (const auto& line : lines_of(text)) {
      if (line.starts_with("M_")) {
        std::uint64_t m = 0;
        for (std::size_t at = line.find("AND x_"); at != std::string::npos;
             at = line.find("AND x_", at + 1)) {
          m |= std::uint64_t{1} << (std::stoul(line.substr(at + 6)) - 10);
        }
        terms.push_back(m);
      } else if (line.find(" | ") != std::string::npos && line[0] != 'E') {
        std::istringstream in(line);
        std::vector<int> bits;
        std::string tok;
        while (in >> tok && tok != "|") bits.push_back(std::stoi(tok));
        in >> tok;
        REQUIRE(bits.size() == 22);
        std::uint64_t v = 0;
        for (int i = 0; i < 12; ++i) v |= std::uint64_t(bits[10 + i]) << i;
        bool r = tok == "1";
        for (std::size_t j = 0; j < terms.size(); ++j) {
          if (bits[j] && (v & terms[j]) == terms[j]) r = !r;
        }
        samples.push_back({v, r});
      }
    }
    REQUIRE(terms.size() == g);
    REQUIRE(samples.size() == 103);
    const auto out = intersect_decode(samples, 12, 4);
    if (out.success()) REQUIRE(*out.result == inst.support(g));
    solved += out.success();
    REQUIRE(text.find(canonical_answer(inst.support(g), 10)) == std::string::npos);
  }
  CHECK(solved >= 980);
}

TEST_CASE("canonical answers parse and validate") {
  Fixture f;
  for (int i = 0; i < 1000; ++i) {
    const Instance inst = sample_instance(f.cfg, f.rng);
    const std::uint32_t g = f.rng() % 8;
    const ParsedAnswer a = parse_answer(canonical_answer(inst.support(g), 8), f.cfg, g);
    REQUIRE(a.parsed);
    REQUIRE(a.notes == std::vector<std::string>{"boxed"});
    REQUIRE(validate(a, inst, g) == Verdict::kAccept);
  }
}

TEST_CASE("lenient formats") {
  const BenchmarkConfig cfg = make_config(8, 16, 4, 32, 0);
  const auto a = parse_answer("\\boxed{[14, 17, 20]}", cfg, 3);
  CHECK(a.indices == flat({14, 17, 20}));
  const auto b = parse_answer("After some thought, the variables are x_14, x_17 and x_20.", cfg, 3);
  CHECK(b.indices == flat({14, 17, 20}));
  CHECK(b.notes.front() == "variable-names");
  const auto c = parse_answer("monomial = x_3 * x_14 * x_17 * x_20", cfg, 3);
  CHECK(c.indices == flat({14, 17, 20}));
  CHECK(std::ranges::find(c.notes, "stripped-address") != c.notes.end());
  const auto d = parse_answer("I think [20, 14, 17, 14]", cfg, 3);
  CHECK(d.indices == flat({14, 17, 20}));
  CHECK(std::ranges::find(d.notes, "deduplicated") != d.notes.end());
  const auto e = parse_answer("first try 1 2 3\nfinal: 14 17 20\n", cfg, 3);
  CHECK(e.indices == flat({14, 17, 20}));
  CHECK(e.notes.front() == "integer-line");
  const auto last_box = parse_answer("\\boxed{[1, 2, 3]} no wait \\boxed{[9, 10, 11]}", cfg, 3);
  CHECK(last_box.indices == flat({9, 10, 11}));
  CHECK(parse_answer("x_{14} x_{17} x_{20}", cfg, 3).indices == flat({14, 17, 20}));
  CHECK_FALSE(parse_answer("I cannot tell.", cfg, 3).parsed);
  CHECK_FALSE(parse_answer("", cfg, 3).parsed);
}

TEST_CASE("verdicts") {
  const BenchmarkConfig cfg = make_config(8, 16, 4, 32, 0);
  const Support truth = Support::from_indices({6, 9, 12}, 16, 3);
  auto v = [&](std::string_view s) { return validate(parse_answer(s, cfg, 3), truth, 8, 16, 4); };
  CHECK(v("\\boxed{[14, 17, 20]}") == Verdict::kAccept);
  CHECK(v("\\boxed{[14, 17]}") == Verdict::kRejectCount);
  CHECK(v("\\boxed{[14, 17, 24]}") == Verdict::kRejectRange);
  CHECK(v("\\boxed{[7, 17, 20]}") == Verdict::kRejectRange);
  CHECK(v("\\boxed{[14, 17, 21]}") == Verdict::kRejectMismatch);
  CHECK(v("no idea") == Verdict::kUnparseable);
  CHECK(to_string(Verdict::kAccept) == "correct");
  CHECK(to_string(Verdict::kUnparseable) == "unparseable");
}

TEST_CASE("tool condition names") {
  for (auto c : {ToolCondition::kUnspecified, ToolCondition::kToolsAllowed, ToolCondition::kNoTools}) {
    CHECK(parse_tool_condition(to_string(c)) == c);
  }
  CHECK_THROWS_AS(parse_tool_condition("sometimes"), ConfigError);
}

TEST_CASE("parser is total on arbitrary input") {
  Rng rng = make_stream(51, {});
  const BenchmarkConfig cfg = make_config(8, 16, 4, 32, 0);
  const std::string alphabet = "x_{}[], 0123456789\\boxed\n*ANDand-=.";
  for (int i = 0; i < 100000; ++i) {
    std::string s(rng() % 80, ' ');
    for (char& ch : s) {
      ch = (rng() % 4 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
    }
    const ParsedAnswer a = parse_answer(s, cfg, 3);
    REQUIRE(std::ranges::is_sorted(a.indices));
    REQUIRE(std::ranges::adjacent_find(a.indices) == a.indices.end());
    REQUIRE(a.parsed == !a.indices.empty());
    REQUIRE(std::ranges::find(a.indices, 3u) == a.indices.end());
    (void)validate(a, Support::from_indices({0, 1, 2}, 16, 3), 8, 16, 4);
  }
}
