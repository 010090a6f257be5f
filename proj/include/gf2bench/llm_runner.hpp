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

// Drives a text-completion provider over rendered prompts and scores the
// transcripts.
//
// Provider contract, single turn:
//   HTTP     POST {"model", "prompt", "max_tokens"} to the endpoint; the reply
//            is a JSON object with a "text" field. A bearer token is read from
//            the environment variable named by auth_env, never from files.
//   command  argv is spawned per prompt, the prompt is written to stdin, the
//            answer is read from stdout. GF2BENCH_PROMPT_ID holds the id.
//
// Transcripts are appended as JSONL in completion order. A rerun skips ids
// that already have a transcript without a provider error; for an id with
// several lines the last one wins.

#ifndef GF2BENCH_LLM_RUNNER_HPP_
#define GF2BENCH_LLM_RUNNER_HPP_

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gf2bench/core.hpp"
#include "gf2bench/promptkit.hpp"
#include "gf2bench/stats.hpp"

namespace gf2bench {

struct ProviderConfig {
  std::optional<std::string> endpoint;
  std::optional<std::vector<std::string>> command;
  double timeout_s = 120.0;
  std::uint32_t max_retries = 2;
  double retry_backoff_s = 1.0;  // doubled after each failed attempt
  double rate_limit_per_min = 0.0;  // 0: unlimited
  std::string auth_env;
  std::string model = "unnamed";
  std::uint32_t max_tokens = 8192;
  unsigned concurrency = 1;
  std::uint32_t max_consecutive_failures = 5;

  void validate() const;
  // Unknown keys are rejected, so secrets cannot hide in config files.
  static ProviderConfig from_json(const nlohmann::json& j);
};

struct ProviderReply {
  bool ok = false;
  std::string text;
  std::string error;
  nlohmann::json metadata = nlohmann::json::object();
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual ProviderReply complete(const std::string& id,
                                 const std::string& prompt) = 0;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

// Sliding one-minute window: acquire() blocks until fewer than the limit
// requests were granted in the last 60 s.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;
  using Now = std::function<Clock::time_point()>;
  using Sleep = std::function<void(Clock::duration)>;

  explicit RateLimiter(double per_minute, Now now = Clock::now,
                       Sleep sleep = default_sleep);

  void acquire();

 private:
  static void default_sleep(Clock::duration d);

  std::size_t limit_;
  Now now_;
  Sleep sleep_;
  std::mutex mu_;
  std::deque<Clock::time_point> granted_;
};

struct PromptRecord {
  std::string id;
  std::string prompt;
  PromptMeta meta;
  std::string tools = "unspecified";
};

nlohmann::ordered_json to_json(const PromptRecord& record);
PromptRecord prompt_from_json(const nlohmann::json& j);
std::vector<PromptRecord> read_prompts_jsonl(std::istream& in);

// Payload coordinates of the next support plus the shape needed to score it.
struct TruthEntry {
  Support support;
  PromptMeta meta;
};
using TruthMap = std::map<std::string, TruthEntry>;

nlohmann::ordered_json to_json(const TruthMap& truths);
TruthMap truths_from_json(const nlohmann::json& j);

struct Transcript {
  std::string id;
  std::string model;
  std::string output;  // verbatim
  double latency_s = 0.0;
  std::uint32_t attempts = 0;
  std::string provider_error;  // empty on success
  nlohmann::json metadata = nlohmann::json::object();
  ParsedAnswer parse;
  std::optional<Verdict> verdict;
};

nlohmann::ordered_json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);
// All lines, in file order.
std::vector<Transcript> read_transcripts_jsonl(std::istream& in);
// Last line per id, sorted by id.
std::vector<Transcript> latest_transcripts(std::vector<Transcript> all);

struct BatchOptions {
  std::optional<std::uint64_t> limit;  // at most this many new requests
  const TruthMap* truths = nullptr;    // fills verdicts when set
  RateLimiter::Sleep sleep;            // retry backoff; real sleep when empty
};

struct BatchSummary {
  std::uint64_t skipped = 0;
  std::uint64_t completed = 0;
  std::uint64_t provider_errors = 0;
  bool aborted = false;
};

BatchSummary run_batch(const std::vector<PromptRecord>& prompts,
                       Provider& provider, const ProviderConfig& config,
                       const std::filesystem::path& out,
                       const BatchOptions& options = {});

struct ScoreRow {
  std::string model;
  std::uint32_t g = 0;
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  GammaEstimate estimate;
  std::uint64_t unparseable = 0;
};

// Pure in (transcripts, truths). Throws DomainError when a transcript id has
// no truth entry.
std::vector<ScoreRow> score_transcripts(const std::vector<Transcript>& transcripts,
                                        const TruthMap& truths);

// Columns model,g,p,d,trials,successes,unparseable,gamma,lo,hi.
void write_gamma_csv(std::ostream& out, const std::vector<ScoreRow>& rows,
                     std::optional<std::uint64_t> seed);

}  // namespace gf2bench

#endif  // GF2BENCH_LLM_RUNNER_HPP_
