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
#include <httplib.h>
#include <stdlib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "gf2bench/errors.hpp"
#include "gf2bench/llm_runner.hpp"
#include "prompt_fixture.hpp"

using namespace gf2bench;
namespace fs = std::filesystem;

namespace {

class MockProvider final : public Provider {
 public:
  using Fn = std::function<ProviderReply(const std::string&, const std::string&)>;
  explicit MockProvider(Fn fn) : fn_(std::move(fn)) {}
  ProviderReply complete(const std::string& id, const std::string& prompt) override {
    ++calls;
    return fn_(id, prompt);
  }
  std::atomic<int> calls{0};

 private:
  Fn fn_;
};

ProviderReply ok(std::string text) {
  ProviderReply r;
  r.ok = true;
  r.text = std::move(text);
  return r;
}

MockProvider::Fn oracle_answers(const TruthMap& truths) {
  return [&truths](const std::string& id, const std::string&) {
    const TruthEntry& t = truths.at(id);
    return ok("Let me think.\n" + canonical_answer(t.support, t.meta.n));
  };
}

ProviderConfig mock_config() {
  ProviderConfig c;
  c.command = std::vector<std::string>{"unused"};
  c.model = "mock";
  c.retry_backoff_s = 0;
  return c;
}

struct TempDir {
  fs::path path;
  TempDir() {
    char tmpl[] = "/tmp/gf2bench-test-XXXXXX";
    path = ::mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<Transcript> load(const fs::path& p) {
  std::ifstream in(p);
  return read_transcripts_jsonl(in);
}

}  // namespace

TEST_CASE("provider config validation") {
  CHECK_NOTHROW(ProviderConfig::from_json({{"command", {"cat"}}}));
  const auto c = ProviderConfig::from_json(
      {{"endpoint", "http://127.0.0.1:1/v1"}, {"rate_limit_per_min", 30}, {"model", "m"}});
  CHECK(c.rate_limit_per_min == 30);
  CHECK(c.model == "m");
  CHECK_THROWS_AS(ProviderConfig::from_json({{"command", {"cat"}}, {"api_key", "sk-123"}}),
                  ConfigError);
  CHECK_THROWS_AS(ProviderConfig::from_json(nlohmann::json::object()), ConfigError);
  CHECK_THROWS_AS(ProviderConfig::from_json({{"command", {"cat"}}, {"endpoint", "http://x/"}}),
                  ConfigError);
  CHECK_THROWS_AS(ProviderConfig::from_json({{"command", nlohmann::json::array()}}), ConfigError);
  CHECK_THROWS_AS(ProviderConfig::from_json({{"command", {"cat"}}, {"timeout_s", 0}}), ConfigError);
  CHECK_THROWS_AS(ProviderConfig::from_json({{"command", {"cat"}}, {"concurrency", "two"}}),
                  ConfigError);
  CHECK_THROWS_AS(make_provider(ProviderConfig::from_json(
                      {{"endpoint", "http://127.0.0.1:1/"},
                       {"auth_env", "GF2BENCH_SURELY_UNSET_VAR"}})),
                  ConfigError);
}

TEST_CASE("rate limiter holds a sliding one-minute window") {
  using Clock = RateLimiter::Clock;
  Clock::time_point now{};
  std::vector<double> granted;
  RateLimiter rl(
      2, [&] { return now; }, [&](Clock::duration d) { now += d; });
  for (int i = 0; i < 5; ++i) {
    rl.acquire();
    granted.push_back(std::chrono::duration<double>(now.time_since_epoch()).count());
    now += std::chrono::seconds(1);
  }
  CHECK(granted == std::vector<double>{0, 1, 60, 61, 120});
  RateLimiter unlimited(0, [&] { return now; }, [](Clock::duration) { FAIL("slept"); });
  for (int i = 0; i < 100; ++i) unlimited.acquire();
}

TEST_CASE("a provider that knows the answers scores gamma 1") {
  const auto set = fixture::make_prompts(40, 70);
  TempDir tmp;
  MockProvider provider(oracle_answers(set.truths));
  BatchOptions opts;
  opts.truths = &set.truths;
  const auto s = run_batch(set.prompts, provider, mock_config(), tmp.path / "t.jsonl", opts);
  CHECK(s.completed == 40);
  CHECK_FALSE(s.aborted);
  const auto ts = load(tmp.path / "t.jsonl");
  REQUIRE(ts.size() == 40);
  for (const Transcript& t : ts) {
    CHECK(t.verdict == Verdict::kAccept);
    CHECK(t.provider_error.empty());
    CHECK(t.attempts == 1);
    CHECK(t.model == "mock");
  }
  const auto rows = score_transcripts(ts, set.truths);
  CHECK(rows.size() == 8);  // one per g
  for (const ScoreRow& r : rows) {
    CHECK(r.estimate.point == 1.0);
    CHECK(r.unparseable == 0);
  }
  std::ostringstream csv;
  write_gamma_csv(csv, rows, 70);
  CHECK(csv.str().find("model,g,p,d,trials,successes,unparseable,gamma,lo,hi") != std::string::npos);
}

TEST_CASE("empty replies are unparseable, not errors") {
  const auto set = fixture::make_prompts(10, 71);
  TempDir tmp;
  MockProvider provider([](const std::string&, const std::string&) { return ok(""); });
  BatchOptions opts;
  opts.truths = &set.truths;
  run_batch(set.prompts, provider, mock_config(), tmp.path / "t.jsonl", opts);
  std::uint64_t unparseable = 0, trials = 0;
  for (const ScoreRow& r : score_transcripts(load(tmp.path / "t.jsonl"), set.truths)) {
    unparseable += r.unparseable;
    trials += r.estimate.trials;
    CHECK(r.estimate.successes == 0);
  }
  CHECK(unparseable == 10);
  CHECK(trials == 10);
}

TEST_CASE("a resumed run matches an uninterrupted one") {
  const auto set = fixture::make_prompts(30, 72);
  TempDir tmp;
  MockProvider p1(oracle_answers(set.truths)), p2(oracle_answers(set.truths));
  BatchOptions limited;
  limited.limit = 7;
  const auto first = run_batch(set.prompts, p1, mock_config(), tmp.path / "a.jsonl", limited);
  CHECK(first.completed == 7);
  const auto second = run_batch(set.prompts, p1, mock_config(), tmp.path / "a.jsonl");
  CHECK(second.skipped == 7);
  CHECK(second.completed == 23);
  CHECK(p1.calls == 30);
  run_batch(set.prompts, p2, mock_config(), tmp.path / "b.jsonl");
  const auto a = latest_transcripts(load(tmp.path / "a.jsonl"));
  const auto b = latest_transcripts(load(tmp.path / "b.jsonl"));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].output == b[i].output);
    CHECK(a[i].parse.indices == b[i].parse.indices);
  }
  // Nothing left to do.
  CHECK(run_batch(set.prompts, p1, mock_config(), tmp.path / "a.jsonl").completed == 0);
}

TEST_CASE("retries back off, and repeated failures abort with partial results kept") {
  const auto set = fixture::make_prompts(20, 73);
  TempDir tmp;
  std::vector<double> sleeps;
  BatchOptions opts;
  opts.sleep = [&](RateLimiter::Clock::duration d) {
    sleeps.push_back(std::chrono::duration<double>(d).count());
  };
  ProviderConfig cfg = mock_config();
  cfg.retry_backoff_s = 0.5;
  cfg.max_retries = 2;
  std::map<std::string, int> seen;
  MockProvider flaky([&](const std::string& id, const std::string&) {
    if (seen[id]++ == 0) {
      ProviderReply r;
      r.error = "503";
      return r;
    }
    return ok(canonical_answer(set.truths.at(id).support, 8));
  });
  std::vector<PromptRecord> two(set.prompts.begin(), set.prompts.begin() + 2);
  run_batch(two, flaky, cfg, tmp.path / "r.jsonl", opts);
  CHECK(sleeps == std::vector<double>{0.5, 0.5});
  for (const Transcript& t : load(tmp.path / "r.jsonl")) CHECK(t.attempts == 2);

  cfg.max_retries = 0;
  cfg.max_consecutive_failures = 3;
  int good_calls = 0;
  MockProvider down([&](const std::string& id, const std::string&) {
    ProviderReply r;
    if (++good_calls <= 4) {
      r = ok(canonical_answer(set.truths.at(id).support, 8));
    } else {
      r.error = "connection refused";
    }
    return r;
  });
  const auto s = run_batch(set.prompts, down, cfg, tmp.path / "d.jsonl");
  CHECK(s.aborted);
  CHECK(s.completed == 7);
  CHECK(s.provider_errors == 3);
  MockProvider back(oracle_answers(set.truths));
  const auto resumed = run_batch(set.prompts, back, cfg, tmp.path / "d.jsonl");
  CHECK(resumed.skipped == 4);
  CHECK(resumed.completed == 16);
  const auto latest = latest_transcripts(load(tmp.path / "d.jsonl"));
  CHECK(latest.size() == 20);
  for (const Transcript& t : latest) CHECK(t.provider_error.empty());
}

TEST_CASE("command provider") {
  ProviderConfig cfg;
  cfg.command = std::vector<std::string>{"cat"};
  cfg.timeout_s = 5;
  auto cat = make_provider(cfg);
  const std::string big(1 << 20, 'z');  // larger than a pipe buffer
  const ProviderReply r = cat->complete("id-1", big);
  CHECK(r.ok);
  CHECK(r.text == big);

  cfg.command = std::vector<std::string>{"sh", "-c", "printf %s \"$GF2BENCH_PROMPT_ID\""};
  CHECK(make_provider(cfg)->complete("abc", "").text == "abc");

  cfg.command = std::vector<std::string>{"sleep", "10"};
  cfg.timeout_s = 0.3;
  const auto t0 = std::chrono::steady_clock::now();
  const ProviderReply slow = make_provider(cfg)->complete("x", "");
  CHECK_FALSE(slow.ok);
  CHECK(slow.error == "command timed out");
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(5));

  cfg.timeout_s = 5;
  cfg.command = std::vector<std::string>{"false"};
  CHECK(make_provider(cfg)->complete("x", "").error.find("status 1") != std::string::npos);
  cfg.command = std::vector<std::string>{"/nonexistent/provider"};
  CHECK_FALSE(make_provider(cfg)->complete("x", "").ok);

  const auto set = fixture::make_prompts(5, 74);
  TempDir tmp;
  std::ofstream(tmp.path / "truths.json") << to_json(set.truths).dump();
  cfg.command = std::vector<std::string>{ECHO_PROVIDER_PATH, (tmp.path / "truths.json").string()};
  auto echo = make_provider(cfg);
  const ProviderReply e = echo->complete(set.prompts[2].id, set.prompts[2].prompt);
  REQUIRE(e.ok);
  CHECK(e.text.find(canonical_answer(set.truths.at(set.prompts[2].id).support, 8)) !=
        std::string::npos);
}

TEST_CASE("scoring") {
  const auto set = fixture::make_prompts(60, 75);
  std::vector<Transcript> ts;
  int i = 0;
  for (const PromptRecord& p : set.prompts) {
    Transcript t;
    t.id = p.id;
    t.model = "m";
    t.output = (i++ % 20 == 0) ? "no clue" : canonical_answer(set.truths.at(p.id).support, 8);
    ts.push_back(t);
  }
  std::uint64_t unparseable = 0, successes = 0;
  for (const ScoreRow& r : score_transcripts(ts, set.truths)) {
    unparseable += r.unparseable;
    successes += r.estimate.successes;
  }
  CHECK(unparseable == 3);
  CHECK(successes == 57);

  // Later lines for the same id replace earlier ones.
  Transcript fix = ts[0];
  fix.output = canonical_answer(set.truths.at(fix.id).support, 8);
  ts.push_back(fix);
  unparseable = 0;
  for (const ScoreRow& r : score_transcripts(ts, set.truths)) unparseable += r.unparseable;
  CHECK(unparseable == 2);

  Transcript stray;
  stray.id = "missing";
  ts.push_back(stray);
  CHECK_THROWS_AS(score_transcripts(ts, set.truths), DomainError);
}

TEST_CASE("uniform guessing scores near chance") {
  const auto set = fixture::make_prompts(6000, 76);
  Rng rng = make_stream(77, {});
  std::vector<Transcript> ts;
  for (const PromptRecord& p : set.prompts) {
    Transcript t;
    t.id = p.id;
    t.model = "guess";
    t.output = canonical_answer(sample_support(12, 3, rng), 8);
    ts.push_back(t);
  }
  std::uint64_t s = 0, n = 0;
  for (const ScoreRow& r : score_transcripts(ts, set.truths)) {
    s += r.estimate.successes;
    n += r.estimate.trials;
  }
  const double q = 1.0 / 220, rate = double(s) / n;
  CHECK(std::abs(rate - q) <= 4 * std::sqrt(q * (1 - q) / n));
}

TEST_CASE("prompt records carry no truth") {
  const auto set = fixture::make_prompts(16, 78);
  std::stringstream ss;
  for (const PromptRecord& p : set.prompts) ss << to_json(p).dump() << '\n';
  const std::string all = ss.str();
  CHECK(all.find("support") == std::string::npos);
  CHECK(all.find("truth") == std::string::npos);
  const auto back = read_prompts_jsonl(ss);
  REQUIRE(back.size() == 16);
  CHECK(back[3].prompt == set.prompts[3].prompt);
  CHECK(back[3].meta.g == set.prompts[3].meta.g);
  for (const PromptRecord& p : set.prompts) {
    CHECK(p.prompt.find(canonical_answer(set.truths.at(p.id).support, 8)) == std::string::npos);
  }
  std::stringstream dup(to_json(set.prompts[0]).dump() + "\n" + to_json(set.prompts[0]).dump() + "\n");
  CHECK_THROWS_AS(read_prompts_jsonl(dup), IoError);

  const TruthMap back_truths = truths_from_json(nlohmann::json::parse(to_json(set.truths).dump()));
  CHECK(back_truths.size() == 16);
  CHECK(back_truths.at("q00003").support == set.truths.at("q00003").support);
}

TEST_CASE("transcript JSON round trip") {
  Transcript t;
  t.id = "q1";
  t.model = "m";
  t.output = "\\boxed{[9, 10, 11]}";
  t.latency_s = 1.5;
  t.attempts = 2;
  t.parse.parsed = true;
  t.parse.indices = {9, 10, 11};
  t.parse.notes = {"boxed"};
  t.verdict = Verdict::kRejectMismatch;
  const Transcript b = transcript_from_json(nlohmann::json::parse(to_json(t).dump()));
  CHECK(b.id == t.id);
  CHECK(b.output == t.output);
  CHECK(b.attempts == 2);
  CHECK(b.parse.indices == t.parse.indices);
  CHECK(b.verdict == t.verdict);
}

TEST_CASE("HTTP provider posts JSON with a bearer token") {
  httplib::Server server;
  std::string seen_auth, seen_model;
  server.Post("/v1/complete", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    const auto body = nlohmann::json::parse(req.body);
    seen_model = body.at("model");
    if (body.at("prompt") == "fail") {
      res.status = 500;
      return;
    }
    res.set_content(nlohmann::json{{"text", "echo:" + body.at("prompt").get<std::string>()}}.dump(),
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("GF2BENCH_TEST_TOKEN", "s3cret", 1);
  ProviderConfig cfg;
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/complete";
  cfg.auth_env = "GF2BENCH_TEST_TOKEN";
  cfg.model = "tiny";
  cfg.timeout_s = 5;
  auto http = make_provider(cfg);
  const ProviderReply r = http->complete("q", "hello");
  CHECK(r.ok);
  CHECK(r.text == "echo:hello");
  CHECK(seen_auth == "Bearer s3cret");
  CHECK(seen_model == "tiny");
  const ProviderReply bad = http->complete("q", "fail");
  CHECK_FALSE(bad.ok);
  CHECK(bad.error == "http status 500");

  server.stop();
  th.join();
  const ProviderReply down = http->complete("q", "hello");
  CHECK_FALSE(down.ok);
  CHECK(down.error.starts_with("http: "));
}
