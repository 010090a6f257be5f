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

// gf2bench: command-line entry point.
//
// Exit codes: 0 success, 1 domain or I/O error, 2 usage or configuration error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gf2bench/combinatorics.hpp"
#include "gf2bench/decoder.hpp"
#include "gf2bench/dfs_sim.hpp"
#include "gf2bench/errors.hpp"
#include "gf2bench/fitkit.hpp"
#include "gf2bench/harness.hpp"
#include "gf2bench/instance_io.hpp"
#include "gf2bench/kernels.hpp"
#include "gf2bench/llm_runner.hpp"
#include "gf2bench/manifest.hpp"
#include "gf2bench/promptkit.hpp"
#include "gf2bench/textio.hpp"
#include "gf2bench/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace gf2bench {
namespace {

struct Global {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string verbosity = "info";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string simd = "auto";
  std::vector<std::string> argv;
};

fs::path dir_of(const fs::path& file) {
  return file.has_parent_path() ? file.parent_path() : fs::path(".");
}

nlohmann::json load_json(const fs::path& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw IoError("malformed JSON: " + path.string());
  return j;
}

void manifest(const Global& g, const std::string& sub, const fs::path& dir,
              ordered_json config, std::uint64_t seed,
              std::vector<fs::path> outputs) {
  Manifest m;
  m.subcommand = sub;
  m.argv = g.argv;
  m.config = std::move(config);
  m.seed = seed;
  m.kernel_backend = std::string(kernels::name(kernels::active().backend));
  m.outputs = std::move(outputs);
  spdlog::debug("manifest written to {}", write_manifest(dir, m).string());
}

// --- generate ------------------------------------------------------------

struct GenerateArgs {
  std::uint32_t n = 32, p = 12, d = 4, K = 32;
  std::optional<std::uint32_t> w_star;
  std::uint64_t count = 100;
  fs::path out;
};

int run_generate(const Global& g, const GenerateArgs& a) {
  const BenchmarkConfig cfg = make_config(a.n, a.p, a.d, a.K, g.seed, a.w_star);
  std::vector<Instance> instances;
  instances.reserve(a.count);
  for (std::uint64_t i = 0; i < a.count; ++i) {
    Rng rng = make_stream(g.seed, {kInstanceStream, i});
    instances.push_back(sample_instance(cfg, rng));
  }
  {
    std::ofstream out = open_output(a.out);
    write_instances_jsonl(out, instances);
  }
  manifest(g, "generate", dir_of(a.out),
           {{"n", a.n}, {"p", a.p}, {"d", a.d}, {"K", a.K},
            {"w_star", cfg.w_star}, {"count", a.count}},
           g.seed, {a.out});
  spdlog::info("wrote {} instances to {}", a.count, a.out.string());
  return 0;
}

// --- sweep ---------------------------------------------------------------

struct SweepArgs {
  fs::path config;
  fs::path out;
  double Q = 0.85;
  double band = 2.0;
};

int run_sweep_cmd(const Global& g, const SweepArgs& a) {
  SweepSpec spec = SweepSpec::from_json(load_json(a.config));
  if (g.seed_given) spec.seed = g.seed;
  RunOptions opts;
  opts.workers = g.workers;
  opts.warn = [](std::string_view msg) { spdlog::warn("{}", msg); };
  const auto records = run_sweep(spec, opts);
  const auto cells = summarize(records);

  fs::create_directories(a.out);
  const fs::path trials = a.out / "trials.jsonl";
  const fs::path summary = a.out / "summary.csv";
  const fs::path heatmap = a.out / "heatmap.csv";
  const fs::path separation = a.out / "separation.json";
  {
    std::ofstream out = open_output(trials);
    write_trials_jsonl(out, records, spec.seed);
  }
  {
    std::ofstream out = open_output(summary);
    write_summary_csv(out, cells, spec.seed);
  }
  {
    std::ofstream out = open_output(heatmap);
    write_heatmap_csv(out, spec, cells);
  }
  bool separated = false;
  {
    std::ofstream out = open_output(separation);
    try {
      const SeparationReport report = separation_check(cells, a.Q, a.band);
      separated = report.pass;
      out << to_json(report).dump(2) << '\n';
    } catch (const ConfigError& e) {
      spdlog::warn("separation check skipped: {}", e.what());
      out << ordered_json{{"skipped", e.what()}}.dump(2) << '\n';
    }
  }
  ordered_json config = spec.to_json();
  config["Q"] = a.Q;
  config["band"] = a.band;
  manifest(g, "sweep", a.out, config, spec.seed,
           {trials, summary, heatmap, separation});
  for (const CellSummary& c : cells) {
    spdlog::info("{:<14} p={:<3} g={:<4} gamma={:.4f} [{:.4f}, {:.4f}]",
                 c.key.estimator, c.key.p, c.key.g, c.estimate.point,
                 c.estimate.lo, c.estimate.hi);
  }
  spdlog::info("separation {}", separated ? "holds" : "does not hold");
  return 0;
}

// --- render --------------------------------------------------------------

struct RenderArgs {
  fs::path instances;
  std::vector<std::uint32_t> depths;
  fs::path out;
  fs::path truths;
  std::string tools = "unspecified";
  std::string mode = "adversarial";
};

int run_render(const Global& g, const RenderArgs& a) {
  std::vector<Instance> instances;
  {
    std::ifstream in = open_input(a.instances);
    instances = read_instances_jsonl(in);
  }
  const ToolCondition tools = parse_tool_condition(a.tools);
  const OracleMode mode = parse_oracle_mode(a.mode);
  const fs::path truths_path =
      a.truths.empty() ? dir_of(a.out) / "truths.json" : a.truths;

  TruthMap truths;
  std::ofstream out = open_output(a.out);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    for (std::uint32_t depth : a.depths) {
      if (depth >= inst.length()) {
        throw DomainError("instance " + std::to_string(i) + " has n=" +
                          std::to_string(inst.length()) + ", cannot render g=" +
                          std::to_string(depth));
      }
      Rng rng = make_stream(g.seed, {kOracleStream, i, depth});
      const EvidenceBatch batch =
          sample_step(inst, depth, inst.config().K, mode, rng);
      PromptDoc doc = render_prompt(inst, depth, batch, tools);
      PromptRecord rec{"i" + std::to_string(i) + "-g" + std::to_string(depth),
                       std::move(doc.text), doc.meta, std::string(to_string(tools))};
      out << to_json(rec).dump() << '\n';
      truths.emplace(rec.id, TruthEntry{doc.truth, doc.meta});
    }
  }
  out.close();
  {
    std::ofstream tout = open_output(truths_path);
    tout << to_json(truths).dump(2) << '\n';
  }
  manifest(g, "render", dir_of(a.out),
           {{"instances", a.instances.filename().string()},
            {"g", a.depths},
            {"tools", a.tools},
            {"mode", a.mode},
            {"template", std::string(kPromptTemplate)}},
           g.seed, {a.out, truths_path});
  spdlog::info("rendered {} prompts; truths in {}", truths.size(),
               truths_path.string());
  return 0;
}

// --- run -----------------------------------------------------------------

struct RunArgs {
  fs::path prompts;
  fs::path provider;
  fs::path out;
  fs::path truths;
  std::optional<std::uint64_t> limit;
};

int run_run(const Global& g, const RunArgs& a) {
  const ProviderConfig config = ProviderConfig::from_json(load_json(a.provider));
  std::vector<PromptRecord> prompts;
  {
    std::ifstream in = open_input(a.prompts);
    prompts = read_prompts_jsonl(in);
  }
  std::optional<TruthMap> truths;
  if (!a.truths.empty()) truths = truths_from_json(load_json(a.truths));
  auto provider = make_provider(config);
  BatchOptions opts;
  opts.limit = a.limit;
  opts.truths = truths ? &*truths : nullptr;
  const BatchSummary s = run_batch(prompts, *provider, config, a.out, opts);
  spdlog::info("completed {} (provider errors {}), skipped {}", s.completed,
               s.provider_errors, s.skipped);
  ordered_json cfg{{"model", config.model},
                   {"prompts", a.prompts.filename().string()}};
  manifest(g, "run", dir_of(a.out), cfg, g.seed, {a.out});
  if (s.aborted) {
    spdlog::error("aborted after {} consecutive provider failures",
                  config.max_consecutive_failures);
    return 1;
  }
  return 0;
}

// --- score ---------------------------------------------------------------

struct ScoreArgs {
  fs::path prompts;
  fs::path answers;
  fs::path transcripts;
  fs::path truths;
  fs::path out;
};

int run_score(const Global& g, const ScoreArgs& a) {
  std::vector<Transcript> transcripts;
  if (!a.transcripts.empty()) {
    if (!a.prompts.empty() || !a.answers.empty()) {
      throw CLI::ValidationError("score: use either --transcripts or --prompts/--answers");
    }
    std::ifstream in = open_input(a.transcripts);
    transcripts = read_transcripts_jsonl(in);
  } else {
    if (a.prompts.empty() || a.answers.empty()) {
      throw CLI::ValidationError("score: need --transcripts, or --prompts and --answers");
    }
    std::ifstream pin = open_input(a.prompts);
    std::map<std::string, PromptRecord> by_id;
    for (PromptRecord& r : read_prompts_jsonl(pin)) {
      by_id.emplace(r.id, std::move(r));
    }
    std::ifstream ain = open_input(a.answers);
    std::string line;
    while (std::getline(ain, line)) {
      if (line.empty()) continue;
      const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("id") || !j.contains("answer")) {
        throw IoError("answers: each line needs {\"id\", \"answer\"}");
      }
      Transcript t;
      t.id = j["id"].get<std::string>();
      if (!by_id.contains(t.id)) {
        throw DomainError("answer id '" + t.id + "' is not in the prompts file");
      }
      t.model = j.value("model", std::string("answers"));
      t.output = j["answer"].get<std::string>();
      transcripts.push_back(std::move(t));
    }
  }
  const fs::path truths_path =
      a.truths.empty()
          ? dir_of(a.prompts.empty() ? a.transcripts : a.prompts) / "truths.json"
          : a.truths;
  const TruthMap truths = truths_from_json(load_json(truths_path));
  const auto rows = score_transcripts(transcripts, truths);

  std::vector<fs::path> outputs{a.out};
  {
    std::ofstream out = open_output(a.out);
    if (!a.transcripts.empty()) {
      write_gamma_csv(out, rows, std::nullopt);
    } else {
      out << "id,g,p,d,verdict,indices,notes\n";
      for (const Transcript& t : latest_transcripts(transcripts)) {
        const TruthEntry& te = truths.at(t.id);
        BenchmarkConfig c;
        c.n = te.meta.n;
        c.p = te.meta.p;
        c.d = te.meta.d;
        const ParsedAnswer pa = parse_answer(t.output, c, te.meta.g);
        std::string idx, notes;
        for (std::uint32_t x : pa.indices) idx += (idx.empty() ? "" : " ") + std::to_string(x);
        for (const auto& n : pa.notes) notes += (notes.empty() ? "" : ";") + n;
        out << t.id << ',' << te.meta.g << ',' << te.meta.p << ',' << te.meta.d
            << ',' << to_string(validate(pa, te.support, te.meta.n, te.meta.p,
                                         te.meta.d))
            << ',' << idx << ',' << notes << '\n';
      }
      const fs::path gamma = dir_of(a.out) / "gamma.csv";
      std::ofstream gout = open_output(gamma);
      write_gamma_csv(gout, rows, std::nullopt);
      outputs.push_back(gamma);
    }
  }
  for (const ScoreRow& r : rows) {
    spdlog::info("{} g={} p={} d={}: {}/{} correct, {} unparseable", r.model,
                 r.g, r.p, r.d, r.estimate.successes, r.estimate.trials,
                 r.unparseable);
  }
  manifest(g, "score", dir_of(a.out), {{"mode", a.transcripts.empty() ? "answers" : "transcripts"}},
           g.seed, outputs);
  return 0;
}

// --- table / fit ---------------------------------------------------------

struct TableArgs {
  TableSpec spec;
  std::string mode = "adversarial";
  fs::path out;
};

int run_table(const Global& g, TableArgs a) {
  a.spec.seed = g.seed;
  a.spec.mode = parse_oracle_mode(a.mode);
  std::ranges::sort(a.spec.depths);
  const AccuracyTable table = partial_accuracy_table(a.spec, g.workers);
  {
    std::ofstream out = open_output(a.out);
    write_table_csv(out, table, g.seed);
  }
  manifest(g, "table", dir_of(a.out),
           {{"p", a.spec.p}, {"d", a.spec.d}, {"K", a.spec.K},
            {"depths", a.spec.depths}, {"trials", a.spec.trials},
            {"mode", a.mode}},
           g.seed, {a.out});
  return 0;
}

struct FitArgs {
  fs::path curve;
  fs::path table;
  fs::path out;
};

int run_fit(const Global& g, const FitArgs& a) {
  std::ifstream cin_ = open_input(a.curve);
  const AccuracyCurve curve = read_curve_csv(cin_);
  std::ifstream tin = open_input(a.table);
  const AccuracyTable table = read_table_csv(tin);
  const FitResult r = fit(curve, table);
  {
    std::ofstream out = open_output(a.out);
    out << to_json(r).dump(2) << '\n';
  }
  std::cout << to_json(r).dump() << '\n';
  manifest(g, "fit", dir_of(a.out),
           {{"curve", a.curve.filename().string()},
            {"table", a.table.filename().string()}},
           g.seed, {a.out});
  return 0;
}

// --- dfs-sim -------------------------------------------------------------

struct DfsArgs {
  std::string gamma = "0.5";
  std::vector<std::uint32_t> tmax = {20};
  double delta = 0.05;
  std::uint64_t runs = 10000;
  std::string budget = "auto";
  std::string sampling = "plain";
  fs::path out;
};

int run_dfs(const Global& g, const DfsArgs& a) {
  const GammaSchedule schedule = GammaSchedule::parse(a.gamma);
  Sampling sampling;
  if (a.sampling == "plain") {
    sampling = Sampling::kPlain;
  } else if (a.sampling == "stratified") {
    sampling = Sampling::kStratified;
  } else {
    throw CLI::ValidationError("--sampling must be plain or stratified");
  }
  std::ofstream out = open_output(a.out);
  write_stats_csv_header(out, g.seed);
  std::vector<double> means;
  for (std::uint32_t T : a.tmax) {
    SearchConfig cfg{schedule, T, a.delta, std::nullopt};
    if (a.budget == "auto") {
      double min_gamma = 1.0;
      for (std::uint32_t t = 1; t <= T; ++t) min_gamma = std::min(min_gamma, schedule.at(t));
      cfg.branch_budget = retry_budget(T, a.delta, min_gamma);
    } else if (a.budget != "none") {
      cfg.branch_budget = parse_u64(a.budget);
    }
    const BatchStats s = simulate_batch(cfg, a.runs, g.seed, g.workers, sampling);
    write_stats_csv_row(out, cfg, s);
    means.push_back(s.mean_expansions);
    spdlog::info("T_max={} mean expansions {:.4f}, failure rate {:.5f}", T,
                 s.mean_expansions, s.failure_rate());
  }
  out.close();
  if (a.tmax.size() >= 2) {
    std::cout << "loglog_slope=" << format_double(loglog_slope(a.tmax, means))
              << '\n';
  }
  manifest(g, "dfs-sim", dir_of(a.out),
           {{"gamma", a.gamma}, {"tmax", a.tmax}, {"delta", a.delta},
            {"runs", a.runs}, {"budget", a.budget}, {"sampling", a.sampling}},
           g.seed, {a.out});
  return 0;
}

// --- bounds --------------------------------------------------------------

struct BoundsArgs {
  std::uint32_t p = 12, d = 4, K = 32;
  double delta = 0.02;
  std::optional<std::uint32_t> w_star;
};

int run_bounds(const BoundsArgs& a) {
  WeightChoice choice = choose_weight(a.p, a.d);
  std::uint32_t w = a.w_star.value_or(choice.w_star);
  const Rational r = rho(a.p, a.d, w);
  const SampleComplexity sc = sample_complexity(a.p, a.d, w, a.delta);
  std::cout << "w*=" << w << '\n'
            << "rho=" << to_string(r) << '\n'
            << "alpha=" << to_string(sc.alpha) << '\n'
            << "T0=" << sc.T0 << '\n'
            << "K=" << sc.K << '\n'
            << "expected_failure_bound(K=" << a.K << ")="
            << format_double(to_double(expected_failure_bound(a.p, a.d, w, a.K)))
            << '\n';
  return 0;
}

}  // namespace
}  // namespace gf2bench

int main(int argc, char** argv) {
  using namespace gf2bench;
  Global g;
  g.argv.assign(argv, argv + argc);

  CLI::App app{"GF(2) stepwise circuit-reconstruction benchmark toolkit",
               "gf2bench"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "root seed for every random stream");
  app.add_option("--verbosity", g.verbosity, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));
  app.add_option("--workers", g.workers, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--simd", g.simd, "kernel backend: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::function<int()> action;

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "sample instances to JSONL");
  c_gen->add_option("--n", gen.n, "address bits (circuit length)");
  c_gen->add_option("--p", gen.p, "payload bits");
  c_gen->add_option("--d", gen.d, "total degree");
  c_gen->add_option("--K", gen.K, "evidence batch size");
  c_gen->add_option("--w-star", gen.w_star, "payload weight override");
  c_gen->add_option("--count", gen.count, "number of instances");
  c_gen->add_option("--out", gen.out, "output JSONL")->required();
  c_gen->callback([&] { action = [&] { return run_generate(g, gen); }; });

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "Monte Carlo step-success sweep");
  c_sw->add_option("--config", sw.config, "SweepSpec JSON")->required()->check(CLI::ExistingFile);
  c_sw->add_option("--out", sw.out, "output directory")->required();
  c_sw->add_option("--Q", sw.Q, "separation threshold for the diligent estimator");
  c_sw->add_option("--band", sw.band, "chance band factor for the separation check");
  c_sw->callback([&] { action = [&] { return run_sweep_cmd(g, sw); }; });

  RenderArgs rd;
  auto* c_rd = app.add_subcommand("render", "render prompts for instances");
  c_rd->add_option("--instances", rd.instances, "instances JSONL")->required()->check(CLI::ExistingFile);
  c_rd->add_option("--g", rd.depths, "depths, comma separated")->required()->delimiter(',');
  c_rd->add_option("--out", rd.out, "prompts JSONL")->required();
  c_rd->add_option("--truths", rd.truths, "truths JSON (default: truths.json beside --out)");
  c_rd->add_option("--tools", rd.tools, "unspecified, tools or no-tools");
  c_rd->add_option("--mode", rd.mode, "adversarial or baseline");
  c_rd->callback([&] { action = [&] { return run_render(g, rd); }; });

  RunArgs rn;
  auto* c_rn = app.add_subcommand("run", "query a provider over prompts");
  c_rn->add_option("--prompts", rn.prompts, "prompts JSONL")->required()->check(CLI::ExistingFile);
  c_rn->add_option("--provider", rn.provider, "provider JSON")->required()->check(CLI::ExistingFile);
  c_rn->add_option("--out", rn.out, "transcripts JSONL (appended)")->required();
  c_rn->add_option("--truths", rn.truths, "truths JSON; fills verdicts");
  c_rn->add_option("--limit", rn.limit, "maximum new requests");
  c_rn->callback([&] { action = [&] { return run_run(g, rn); }; });

  ScoreArgs sc;
  auto* c_sc = app.add_subcommand("score", "score answers or transcripts");
  c_sc->add_option("--prompts", sc.prompts, "prompts JSONL");
  c_sc->add_option("--answers", sc.answers, "answers JSONL: {id, answer}");
  c_sc->add_option("--transcripts", sc.transcripts, "transcripts JSONL");
  c_sc->add_option("--truths", sc.truths, "truths JSON (default: truths.json beside the input)");
  c_sc->add_option("--out", sc.out, "output CSV")->required();
  c_sc->callback([&] { action = [&] { return run_score(g, sc); }; });

  TableArgs tb;
  auto* c_tb = app.add_subcommand("table", "simulate the partial-estimator accuracy table");
  c_tb->add_option("--p", tb.spec.p, "payload bits");
  c_tb->add_option("--d", tb.spec.d, "total degree");
  c_tb->add_option("--K", tb.spec.K, "evidence batch size");
  c_tb->add_option("--depths", tb.spec.depths, "depths, comma separated")->delimiter(',');
  c_tb->add_option("--trials", tb.spec.trials, "trials per depth");
  c_tb->add_option("--mode", tb.mode, "adversarial or baseline");
  c_tb->add_option("--out", tb.out, "table CSV")->required();
  c_tb->callback([&] { action = [&] { return run_table(g, tb); }; });

  FitArgs ft;
  auto* c_ft = app.add_subcommand("fit", "fit effective-prefix models to a curve");
  c_ft->add_option("--curve", ft.curve, "curve CSV (g,successes,trials)")->required()->check(CLI::ExistingFile);
  c_ft->add_option("--table", ft.table, "table CSV from `table`")->required()->check(CLI::ExistingFile);
  c_ft->add_option("--out", ft.out, "fit JSON")->required();
  c_ft->callback([&] { action = [&] { return run_fit(g, ft); }; });

  DfsArgs dfs;
  auto* c_dfs = app.add_subcommand("dfs-sim", "simulate validator-guided search");
  c_dfs->add_option("--gamma", dfs.gamma, "constant, harmonic:c, or a comma list");
  c_dfs->add_option("--tmax", dfs.tmax, "maximum depth(s), comma separated")->delimiter(',');
  c_dfs->add_option("--delta", dfs.delta, "target failure probability");
  c_dfs->add_option("--runs", dfs.runs, "runs per T_max");
  c_dfs->add_option("--budget", dfs.budget, "per-node retries: auto, none or an integer");
  c_dfs->add_option("--sampling", dfs.sampling, "plain or stratified");
  c_dfs->add_option("--out", dfs.out, "stats CSV")->required();
  c_dfs->callback([&] { action = [&] { return run_dfs(g, dfs); }; });

  BoundsArgs bd;
  auto* c_bd = app.add_subcommand("bounds", "print weight choice and decoder bounds");
  c_bd->add_option("--p", bd.p, "payload bits");
  c_bd->add_option("--d", bd.d, "total degree");
  c_bd->add_option("--K", bd.K, "batch size for the expected failure bound");
  c_bd->add_option("--delta", bd.delta, "target failure probability");
  c_bd->add_option("--w-star", bd.w_star, "payload weight override");
  c_bd->callback([&] { action = [&] { return run_bounds(bd); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  g.seed_given = app.count("--seed") > 0;

  auto logger = spdlog::stderr_color_st("gf2bench");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");
  spdlog::set_level(spdlog::level::from_str(g.verbosity));

  try {
    if (g.simd != "auto") kernels::select(kernels::parse_backend(g.simd));
    return action();
  } catch (const CLI::ValidationError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
