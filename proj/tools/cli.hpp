// Copyright 2026 The Ramsey Proximity Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: gen, build, query and eval.

#ifndef RAMSEY_TOOLS_CLI_HPP_
#define RAMSEY_TOOLS_CLI_HPP_

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/chain.hpp"
#include "ramsey/eval.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/ranking.hpp"

namespace ramsey::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string metric_path;
  std::string out_path;
  std::string index_path;
  std::string requests_path;
  std::string kind = "euclidean:2";
  std::string mode = "oracle";
  std::string suite = "all";
  double k = 2;
  double epsilon = 0.5;
  double alpha = 32;
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::size_t n = 64;
};

inline const std::vector<std::string>& suites() {
  static const std::vector<std::string> names = {
      "padding", "complete", "subset",        "extension", "moments", "oracle",
      "ranking", "size_ancestor", "lip_um", "lip_chain", "all"};
  return names;
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes to --out when given, otherwise to `fallback`.
inline void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out.flush()) throw ParseError("cannot write " + path);
}

inline MetricSpace metric_for(const RunConfig& cfg) {
  if (!cfg.metric_path.empty()) return metric_from_string(read_file(cfg.metric_path));
  return gen_metric(MetricKind::parse(cfg.kind), cfg.n, cfg.seed);
}

inline std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline int finish(const StatsReport& report, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream os;
  report.write(os);
  emit(cfg.out_path, os.str(), out);
  return report.all_pass() ? kPass : kCheckFailed;
}

}  // namespace detail

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const MetricSpace m = gen_metric(MetricKind::parse(cfg.kind), cfg.n, cfg.seed);
  detail::emit(cfg.out_path, metric_to_string(m), out);
  return kPass;
}

// Serializes the index to --out and prints a report of its properties.
inline int cmd_build(const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) throw CLI::ValidationError("build: --out is required");
  const MetricSpace m = metric_from_string(detail::read_file(cfg.metric_path));
  StatsReport report;
  std::string text;
  const RamseyChain* chain = nullptr;
  OracleIndex oracle;
  RankingIndex ranking;
  RamseyChain plain;
  if (cfg.mode == "oracle") {
    oracle = build_oracle(m, cfg.k, cfg.seed);
    text = oracle_to_string(oracle);
    chain = &oracle.chain();
    eval::check_oracle_index(report, "oracle", m, oracle);
  } else if (cfg.mode == "ranking") {
    ranking = build_ranking(m, cfg.k, cfg.seed);
    text = ranking_to_string(ranking);
    chain = &ranking.chain();
    eval::check_ranking_index(report, "ranking", m, ranking);
  } else {
    plain = build_chain(m, cfg.k, cfg.seed, parse_chain_mode(cfg.mode));
    text = chain_to_string(plain);
    chain = &plain;
    eval::check_chain(report, "chain", m, plain);
  }
  StatsReport head;
  head.note("n", static_cast<double>(m.size()));
  head.note("levels", static_cast<double>(chain->s()));
  head.note("storage_leaves", static_cast<double>(chain->storage_leaves()));
  head.append(report);
  detail::emit(cfg.out_path, text, out);
  std::ostringstream os;
  head.write(os);
  out << os.str();
  return head.all_pass() ? kPass : kCheckFailed;
}

// One answer line per request: "dist x y", "access x i" or "rank x u".
inline int cmd_query(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const std::string text = detail::read_file(cfg.index_path);
  std::istringstream head(text);
  std::string kind;
  head >> kind;
  std::optional<OracleIndex> oracle;
  std::optional<RankingIndex> ranking;
  if (kind == "oracle") {
    oracle = oracle_from_string(text);
  } else if (kind == "ranking") {
    ranking = ranking_from_string(text);
  } else {
    throw ParseError("query: index file must hold an oracle or a ranking");
  }
  std::ifstream file;
  if (!cfg.requests_path.empty()) {
    file.open(cfg.requests_path);
    if (!file) throw ParseError("cannot open " + cfg.requests_path);
  }
  std::istream& requests = cfg.requests_path.empty() ? in : file;
  std::ostringstream answers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(requests, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op[0] == '#') continue;
    long long a = 0;
    long long b = 0;
    std::string rest;
    if (!(ls >> a >> b) || (ls >> rest) || a < 0) {
      throw ParseError("request line " + std::to_string(line_no) + ": expected '<op> <int> <int>'");
    }
    const auto x = static_cast<PointId>(a);
    if (op == "dist" && oracle) {
      if (b < 0) throw std::out_of_range("oracle query: unknown point");
      answers << detail::number(oracle->query(x, static_cast<PointId>(b))) << '\n';
    } else if (op == "access" && ranking) {
      answers << ranking->access(x, b) << '\n';
    } else if (op == "rank" && ranking) {
      if (b < 0) throw std::out_of_range("rank_of: unknown point");
      answers << ranking->rank_of(x, static_cast<PointId>(b)) << '\n';
    } else {
      throw ParseError("request line " + std::to_string(line_no) + ": '" + op +
                       "' is not supported by a " + kind + " index");
    }
  }
  detail::emit(cfg.out_path, answers.str(), out);
  return kPass;
}

inline StatsReport run_suite(const RunConfig& cfg) {
  const std::string& s = cfg.suite;
  StatsReport report;
  const bool all = s == "all";
  const std::uint64_t seed = cfg.seed;
  const std::size_t trials = cfg.trials;
  std::optional<MetricSpace> metric;
  auto m = [&]() -> const MetricSpace& {
    if (!metric) metric = detail::metric_for(cfg);
    return *metric;
  };
  if (all || s == "padding") {
    int i = 0;
    for (const auto& c : eval::padding_configs(m(), derive_seed(seed, 100))) {
      eval::check_padding(report, "padding." + std::to_string(i++), m(), c, trials, derive_seed(seed, 101));
    }
  }
  if (all || s == "complete") {
    eval::check_complete_padding(report, "complete", m(), cfg.alpha, trials, derive_seed(seed, 102));
  }
  if (all || s == "subset") {
    eval::check_ramsey_subset(report, "subset", m(), cfg.epsilon, trials, derive_seed(seed, 103));
  }
  if (all || s == "extension") {
    eval::check_extension(report, "extension", trials, cfg.n, derive_seed(seed, 104));
  }
  if (all || s == "moments") {
    eval::check_moments(report, "moments", m(), cfg.k, {0, 1, 2}, trials, derive_seed(seed, 105));
  }
  if (all || s == "oracle") eval::check_oracle(report, "oracle", m(), cfg.k, derive_seed(seed, 106));
  if (all || s == "ranking") eval::check_ranking(report, "ranking", m(), cfg.k, derive_seed(seed, 107));
  if (all || s == "size_ancestor") {
    eval::check_size_ancestor(report, "size_ancestor", trials, cfg.n, {1, 2, 8}, derive_seed(seed, 108));
  }
  if (all || s == "lip_um") eval::check_lip_um(report, "lip_um", trials, cfg.n, derive_seed(seed, 109));
  if (all || s == "lip_chain") {
    eval::check_chain_lipschitz(report, "lip_chain", cfg.k, trials, cfg.n, derive_seed(seed, 110));
  }
  return report;
}

inline int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  return detail::finish(run_suite(cfg), cfg, out);
}

// Exit status: 0 when everything passes, 1 when a check fails, 2 on usage,
// parse or input errors.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Ramsey partitions: metric generation, distance oracles, rankings, evaluation"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a random metric");
  gen->add_option("--kind", cfg.kind, "euclidean:<dim>, graph:<density>, equilateral, uniform_matrix")
      ->capture_default_str();
  gen->add_option("--n", cfg.n, "number of points")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", cfg.seed)->capture_default_str();
  gen->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto* build = app.add_subcommand("build", "build and serialize an index");
  build->add_option("--metric", cfg.metric_path, "metric file")->required();
  build->add_option("--out", cfg.out_path, "index file")->required();
  build->add_option("--mode", cfg.mode, "oracle, ranking, restricted or extended")
      ->check(CLI::IsMember({"oracle", "ranking", "restricted", "extended"}))
      ->capture_default_str();
  build->add_option("--k", cfg.k)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  build->add_option("--seed", cfg.seed)->capture_default_str();

  auto* query = app.add_subcommand("query", "answer requests against a serialized index");
  query->add_option("--index", cfg.index_path, "oracle or ranking file")->required();
  query->add_option("--requests", cfg.requests_path, "request file (default stdin)");
  query->add_option("--out", cfg.out_path, "answer file (default stdout)");

  auto* ev = app.add_subcommand("eval", "run evaluation checks and print a report");
  ev->add_option("--suite", cfg.suite)->check(CLI::IsMember(suites()))->capture_default_str();
  ev->add_option("--metric", cfg.metric_path, "metric file (default: generated from --kind/--n)");
  ev->add_option("--kind", cfg.kind)->capture_default_str();
  ev->add_option("--n", cfg.n, "points, or the largest generated instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ev->add_option("--k", cfg.k)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  ev->add_option("--epsilon", cfg.epsilon)->check(CLI::Range(1e-9, 1.0 - 1e-9))->capture_default_str();
  ev->add_option("--alpha", cfg.alpha)->check(CLI::Range(1.0 + 1e-9, 1e9))->capture_default_str();
  ev->add_option("--trials", cfg.trials, "samples, repetitions or instances per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ev->add_option("--seed", cfg.seed)->capture_default_str();
  ev->add_option("--out", cfg.out_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(cfg, out);
    if (*build) return cmd_build(cfg, out);
    if (*query) return cmd_query(cfg, in, out);
    return cmd_eval(cfg, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace ramsey::cli

#endif  // RAMSEY_TOOLS_CLI_HPP_
