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

#include "gf2bench/llm_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <thread>

#include "gf2bench/errors.hpp"
#include "gf2bench/parallel.hpp"
#include "gf2bench/textio.hpp"

namespace gf2bench {
namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->template get<T>();
}

BenchmarkConfig parse_config(const PromptMeta& meta) {
  BenchmarkConfig c;
  c.n = meta.n;
  c.p = meta.p;
  c.d = meta.d;
  return c;
}

OJson meta_json(const PromptMeta& m) {
  return OJson{{"N", m.N}, {"n", m.n}, {"p", m.p}, {"d", m.d}, {"g", m.g}};
}

PromptMeta meta_from_json(const Json& j) {
  PromptMeta m;
  m.N = j.at("N").get<std::uint32_t>();
  m.n = j.at("n").get<std::uint32_t>();
  m.p = j.at("p").get<std::uint32_t>();
  m.d = j.at("d").get<std::uint32_t>();
  m.g = j.at("g").get<std::uint32_t>();
  if (m.N != m.n + m.p || m.g >= m.n || m.d < 2 || m.p > kMaxPayloadBits) {
    throw ConfigError("prompt meta violates N = n + p, g < n or d >= 2");
  }
  return m;
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::kAccept, Verdict::kUnparseable, Verdict::kRejectCount,
                    Verdict::kRejectRange, Verdict::kRejectMismatch}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown verdict '" + s + "'");
}

template <class Fn>
auto jsonl_lines(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw IoError(std::string(what) + ": malformed JSON on line " +
                    std::to_string(lineno));
    }
    try {
      fn(j);
    } catch (const Json::exception& e) {
      throw IoError(std::string(what) + ": line " + std::to_string(lineno) +
                    ": " + e.what());
    }
  }
}

}  // namespace

void ProviderConfig::validate() const {
  if (endpoint.has_value() == command.has_value()) {
    throw ConfigError("provider: set exactly one of endpoint and command");
  }
  if (command && command->empty()) throw ConfigError("provider: empty command");
  if (!(timeout_s > 0.0)) throw ConfigError("provider: timeout_s must be > 0");
  if (rate_limit_per_min < 0.0) {
    throw ConfigError("provider: rate_limit_per_min must be >= 0");
  }
  if (retry_backoff_s < 0.0) throw ConfigError("provider: negative backoff");
  if (concurrency < 1) throw ConfigError("provider: concurrency must be >= 1");
  if (max_consecutive_failures < 1) {
    throw ConfigError("provider: max_consecutive_failures must be >= 1");
  }
}

ProviderConfig ProviderConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {
      "endpoint",   "command",     "timeout_s",   "max_retries",
      "retry_backoff_s", "rate_limit_per_min", "auth_env", "model",
      "max_tokens", "concurrency", "max_consecutive_failures"};
  if (!j.is_object()) throw ConfigError("provider config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.contains(key)) {
      throw ConfigError("provider config: unknown key '" + key + "'");
    }
  }
  ProviderConfig c;
  try {
    if (j.contains("endpoint")) c.endpoint = j["endpoint"].get<std::string>();
    if (j.contains("command")) {
      c.command = j["command"].get<std::vector<std::string>>();
    }
    c.timeout_s = get_or(j, "timeout_s", c.timeout_s);
    c.max_retries = get_or(j, "max_retries", c.max_retries);
    c.retry_backoff_s = get_or(j, "retry_backoff_s", c.retry_backoff_s);
    c.rate_limit_per_min = get_or(j, "rate_limit_per_min", c.rate_limit_per_min);
    c.auth_env = get_or(j, "auth_env", c.auth_env);
    c.model = get_or(j, "model", c.model);
    c.max_tokens = get_or(j, "max_tokens", c.max_tokens);
    c.concurrency = get_or(j, "concurrency", c.concurrency);
    c.max_consecutive_failures =
        get_or(j, "max_consecutive_failures", c.max_consecutive_failures);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("provider config: ") + e.what());
  }
  c.validate();
  return c;
}

RateLimiter::RateLimiter(double per_minute, Now now, Sleep sleep)
    : limit_(per_minute > 0.0
                 ? std::max<std::size_t>(1, static_cast<std::size_t>(per_minute))
                 : 0),
      now_(std::move(now)),
      sleep_(std::move(sleep)) {}

void RateLimiter::default_sleep(Clock::duration d) {
  std::this_thread::sleep_for(d);
}

void RateLimiter::acquire() {
  if (limit_ == 0) return;
  std::lock_guard lock(mu_);
  constexpr auto kWindow = std::chrono::minutes(1);
  for (;;) {
    const auto t = now_();
    while (!granted_.empty() && t - granted_.front() >= kWindow) {
      granted_.pop_front();
    }
    if (granted_.size() < limit_) {
      granted_.push_back(t);
      return;
    }
    sleep_(granted_.front() + kWindow - t);
  }
}

OJson to_json(const PromptRecord& r) {
  OJson meta = meta_json(r.meta);
  meta["template"] = std::string(kPromptTemplate);
  meta["tools"] = r.tools;
  return OJson{{"id", r.id}, {"prompt", r.prompt}, {"meta", meta}};
}

PromptRecord prompt_from_json(const nlohmann::json& j) {
  PromptRecord r;
  r.id = j.at("id").get<std::string>();
  r.prompt = j.at("prompt").get<std::string>();
  r.meta = meta_from_json(j.at("meta"));
  r.tools = get_or<std::string>(j.at("meta"), "tools", "unspecified");
  return r;
}

std::vector<PromptRecord> read_prompts_jsonl(std::istream& in) {
  std::vector<PromptRecord> out;
  std::set<std::string> seen;
  jsonl_lines(in, "prompts", [&](const Json& j) {
    out.push_back(prompt_from_json(j));
    if (!seen.insert(out.back().id).second) {
      throw IoError("prompts: duplicate id '" + out.back().id + "'");
    }
  });
  return out;
}

OJson to_json(const TruthMap& truths) {
  OJson j = OJson::object();
  for (const auto& [id, t] : truths) {
    OJson e = meta_json(t.meta);
    e["support"] = t.support.indices();
    j[id] = e;
  }
  return j;
}

TruthMap truths_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("truths must be a JSON object");
  TruthMap out;
  try {
    for (const auto& [id, e] : j.items()) {
      TruthEntry t;
      t.meta = meta_from_json(e);
      t.support = Support::from_indices(
          e.at("support").get<std::vector<std::uint32_t>>(), t.meta.p,
          t.meta.d - 1);
      out.emplace(id, std::move(t));
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("truths: ") + e.what());
  }
  return out;
}

OJson to_json(const Transcript& t) {
  OJson j;
  j["id"] = t.id;
  j["model"] = t.model;
  j["output"] = t.output;
  j["latency_s"] = t.latency_s;
  j["attempts"] = t.attempts;
  if (!t.provider_error.empty()) j["error"] = t.provider_error;
  j["provider"] = t.metadata;
  j["parse"] = OJson{{"parsed", t.parse.parsed},
                     {"indices", t.parse.indices},
                     {"notes", t.parse.notes}};
  if (t.verdict) j["verdict"] = std::string(to_string(*t.verdict));
  return j;
}

Transcript transcript_from_json(const nlohmann::json& j) {
  Transcript t;
  t.id = j.at("id").get<std::string>();
  t.model = get_or<std::string>(j, "model", "");
  t.output = j.at("output").get<std::string>();
  t.latency_s = get_or(j, "latency_s", 0.0);
  t.attempts = get_or<std::uint32_t>(j, "attempts", 0);
  t.provider_error = get_or<std::string>(j, "error", "");
  if (j.contains("provider")) t.metadata = j["provider"];
  if (j.contains("parse")) {
    const Json& p = j["parse"];
    t.parse.parsed = get_or(p, "parsed", false);
    t.parse.indices = get_or(p, "indices", std::vector<std::uint32_t>{});
    t.parse.notes = get_or(p, "notes", std::vector<std::string>{});
  }
  if (j.contains("verdict")) {
    t.verdict = verdict_from_string(j["verdict"].get<std::string>());
  }
  return t;
}

std::vector<Transcript> read_transcripts_jsonl(std::istream& in) {
  std::vector<Transcript> out;
  jsonl_lines(in, "transcripts",
              [&](const Json& j) { out.push_back(transcript_from_json(j)); });
  return out;
}

std::vector<Transcript> latest_transcripts(std::vector<Transcript> all) {
  std::map<std::string, Transcript> last;
  for (Transcript& t : all) last.insert_or_assign(t.id, std::move(t));
  std::vector<Transcript> out;
  out.reserve(last.size());
  for (auto& [_, t] : last) out.push_back(std::move(t));
  return out;
}

BatchSummary run_batch(const std::vector<PromptRecord>& prompts,
                       Provider& provider, const ProviderConfig& config,
                       const std::filesystem::path& out,
                       const BatchOptions& options) {
  config.validate();
  BatchSummary summary;

  std::set<std::string> done;
  if (std::filesystem::exists(out)) {
    std::ifstream in = open_input(out);
    for (const Transcript& t : latest_transcripts(read_transcripts_jsonl(in))) {
      if (t.provider_error.empty()) done.insert(t.id);
    }
  }
  std::vector<const PromptRecord*> pending;
  for (const PromptRecord& r : prompts) {
    if (done.contains(r.id)) {
      ++summary.skipped;
    } else if (!options.limit || pending.size() < *options.limit) {
      pending.push_back(&r);
    }
  }

  std::ofstream sink;
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  sink.open(out, std::ios::binary | std::ios::app);
  if (!sink) throw IoError("cannot open for appending: " + out.string());

  RateLimiter limiter(config.rate_limit_per_min);
  const RateLimiter::Sleep sleep =
      options.sleep ? options.sleep : [](RateLimiter::Clock::duration d) {
        std::this_thread::sleep_for(d);
      };
  std::mutex sink_mu;
  std::atomic<std::uint32_t> consecutive{0};
  std::atomic<bool> abort{false};

  parallel_for(pending.size(), config.concurrency, [&](std::size_t i) {
    if (abort.load()) return;
    const PromptRecord& rec = *pending[i];
    Transcript t;
    t.id = rec.id;
    t.model = config.model;
    ProviderReply reply;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint32_t attempt = 0; attempt <= config.max_retries; ++attempt) {
      if (attempt > 0 && config.retry_backoff_s > 0.0) {
        sleep(std::chrono::duration_cast<RateLimiter::Clock::duration>(
            std::chrono::duration<double>(config.retry_backoff_s *
                                          std::ldexp(1.0, attempt - 1))));
      }
      limiter.acquire();
      ++t.attempts;
      reply = provider.complete(rec.id, rec.prompt);
      if (reply.ok) break;
    }
    t.latency_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    t.metadata = reply.metadata;
    if (reply.ok) {
      t.output = reply.text;
    } else {
      t.provider_error = reply.error.empty() ? "provider error" : reply.error;
    }
    t.parse = parse_answer(t.output, parse_config(rec.meta), rec.meta.g);
    if (options.truths) {
      auto it = options.truths->find(rec.id);
      if (it != options.truths->end()) {
        const TruthEntry& te = it->second;
        t.verdict = validate(t.parse, te.support, te.meta.n, te.meta.p, te.meta.d);
      }
    }

    std::lock_guard lock(sink_mu);
    sink << to_json(t).dump() << '\n';
    sink.flush();
    ++summary.completed;
    if (reply.ok) {
      consecutive = 0;
    } else {
      ++summary.provider_errors;
      if (++consecutive >= config.max_consecutive_failures) abort = true;
    }
  });
  summary.aborted = abort.load();
  return summary;
}

std::vector<ScoreRow> score_transcripts(const std::vector<Transcript>& transcripts,
                                        const TruthMap& truths) {
  struct Acc {
    std::uint64_t s = 0, n = 0, unparseable = 0;
  };
  std::map<std::tuple<std::string, std::uint32_t, std::uint32_t, std::uint32_t>,
           Acc>
      cells;
  for (const Transcript& t : latest_transcripts(transcripts)) {
    auto it = truths.find(t.id);
    if (it == truths.end()) {
      throw DomainError("no truth entry for transcript id '" + t.id + "'");
    }
    const TruthEntry& te = it->second;
    const ParsedAnswer parsed =
        parse_answer(t.output, parse_config(te.meta), te.meta.g);
    const Verdict v = validate(parsed, te.support, te.meta.n, te.meta.p, te.meta.d);
    Acc& a = cells[{t.model, te.meta.g, te.meta.p, te.meta.d}];
    ++a.n;
    a.s += v == Verdict::kAccept;
    a.unparseable += v == Verdict::kUnparseable;
  }
  std::vector<ScoreRow> rows;
  for (const auto& [key, a] : cells) {
    const auto& [model, g, p, d] = key;
    rows.push_back({model, g, p, d, *gamma_estimate(a.s, a.n), a.unparseable});
  }
  return rows;
}

void write_gamma_csv(std::ostream& out, const std::vector<ScoreRow>& rows,
                     std::optional<std::uint64_t> seed) {
  if (seed) out << "# seed=" << *seed << '\n';
  out << "model,g,p,d,trials,successes,unparseable,gamma,lo,hi\n";
  for (const ScoreRow& r : rows) {
    out << r.model << ',' << r.g << ',' << r.p << ',' << r.d << ','
        << r.estimate.trials << ',' << r.estimate.successes << ','
        << r.unparseable << ',' << format_double(r.estimate.point) << ','
        << format_double(r.estimate.lo) << ',' << format_double(r.estimate.hi)
        << '\n';
  }
}

}  // namespace gf2bench
