// Copyright 2026 The splitmerge Authors
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>

#include "splitmerge/dynamics.hpp"
#include "splitmerge/errors.hpp"
#include "splitmerge/game.hpp"
#include "splitmerge/game_io.hpp"
#include "splitmerge/oracle.hpp"
#include "splitmerge/shapley.hpp"
#include "splitmerge/trace_io.hpp"
#include "splitmerge/verify.hpp"

namespace splitmerge::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  double tol = kDefaultTol;
  std::string mode = "composite";
  std::string policy = "lex";
  std::uint64_t max_iters = 0;
  std::string out;
};

struct GameSource {
  std::string file;
  std::string generator;
  int n = 0;  // 0: generator default
  std::uint64_t seed = 0;
  bool shift = false;
  double noise = 1.0;
  double singleton_lo = -0.5;
  double singleton_hi = 1.0;
  double bonus = 1.0;
  CaseStudyParams case_study;
  std::string productive = "1,2,3,4";
};

void add_generator_options(CLI::App* cmd, GameSource& src) {
  cmd->add_option("--n", src.n, "Player count (default 10 for case-study, 5 otherwise)");
  cmd->add_option("--seed", src.seed, "Generator seed");
  cmd->add_flag("--shift", src.shift,
                "Shift singletons to be nonnegative: v'(S) = v(S) + sum max(0, -v({i}))");
  cmd->add_option("--noise", src.noise, "random: coalition noise level");
  cmd->add_option("--singleton-lo", src.singleton_lo, "random: lowest singleton value");
  cmd->add_option("--singleton-hi", src.singleton_hi, "random: highest singleton value");
  cmd->add_option("--bonus", src.bonus, "superadditive: per-member bonus");
  cmd->add_option("--productive", src.productive,
                  "case-study: productive set C as 1-based ids, e.g. 1,2,3,4");
  cmd->add_option("--standalone-in", src.case_study.standalone_in,
                  "case-study: standalone value of players in C");
  cmd->add_option("--standalone-out", src.case_study.standalone_out,
                  "case-study: standalone value of players outside C");
  cmd->add_option("--inside-rate", src.case_study.inside_surplus_rate,
                  "case-study: per-member surplus of coalitions inside C");
  cmd->add_option("--synergy", src.case_study.synergy_bonus,
                  "case-study: bonus for coalitions containing C");
  cmd->add_option("--mixed-penalty", src.case_study.mixed_penalty,
                  "case-study: penalty per outsider in mixed coalitions");
}

void add_game_source(CLI::App* cmd, GameSource& src) {
  auto* file = cmd->add_option("--game", src.file, "Game file (JSON)");
  auto* gen = cmd->add_option("--generator", src.generator,
                              "Generate the game instead: case-study|random|additive|superadditive")
                  ->check(CLI::IsMember({"case-study", "random", "additive", "superadditive"}));
  file->excludes(gen);
  add_generator_options(cmd, src);
}

Game generate(const std::string& kind, const GameSource& src) {
  Game g = [&]() -> Game {
    if (kind == "case-study") {
      CaseStudyParams p = src.case_study;
      p.n = src.n > 0 ? src.n : 10;
      p.productive_set = parse_coalition(src.productive, p.n);
      return case_study_game(p);
    }
    const int n = src.n > 0 ? src.n : 5;
    if (kind == "random") {
      RandomGameParams p;
      p.n = n;
      p.seed = src.seed;
      p.coalition_noise = src.noise;
      p.singleton_lo = src.singleton_lo;
      p.singleton_hi = src.singleton_hi;
      p.enforce_a1 = false;
      return random_game(p);
    }
    if (n < 1 || n > kDefaultMaxPlayers) throw ValidationError("player count out of range");
    Rng rng(src.seed);
    std::vector<double> singles(static_cast<std::size_t>(n));
    for (double& x : singles) x = rng.uniform(0.0, 1.0);
    if (kind == "additive") return additive_game(singles);
    if (kind == "superadditive") return superadditive_game(singles, src.bonus);
    throw ValidationError("unknown generator '" + kind + "'");
  }();
  return src.shift ? shift_to_nonneg_singletons(g) : g;
}

Game load_source(const GameSource& src) {
  if (!src.file.empty()) {
    Game g = load_game_file(src.file);
    return src.shift ? shift_to_nonneg_singletons(g) : g;
  }
  if (!src.generator.empty()) return generate(src.generator, src);
  throw ValidationError("no game given: use --game FILE or --generator KIND");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << content;
}

Partition initial_partition(const std::string& spec, int n) {
  if (spec == "singletons") return Partition::singletons(n);
  if (spec == "grand") return Partition::grand(n);
  if (spec.starts_with("random:")) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw FormatError("initial partition 'random:<seed>' needs an integer seed");
    }
    Rng rng(seed);
    return random_partition(n, rng);
  }
  return parse_partition(spec, n);
}

DynamicsConfig dynamics_config(const GlobalOptions& g) {
  DynamicsConfig c;
  c.mode = parse_step_mode(g.mode);
  c.tol = g.tol;
  c.policy = MergePolicy::parse(g.policy);
  c.max_iters = g.max_iters;
  return c;
}

struct RunOptions {
  GameSource source;
  std::string init = "singletons";
  std::string plot;
  std::string membership;
  std::string summary;
};

int cmd_run(const GlobalOptions& global, const RunOptions& opt,
            std::ostream& out) {
  const Game g = load_source(opt.source);
  const Partition p0 = initial_partition(opt.init, g.n());
  const DynamicsConfig config = dynamics_config(global);
  const Trace trace = run(g, p0, config);

  if (!global.out.empty()) write_file(global.out, trace_to_jsonl(trace));
  if (!opt.plot.empty()) write_file(opt.plot, plot_table_csv(trace));
  if (!opt.membership.empty()) write_file(opt.membership, membership_csv(trace));

  const TraceStep& last = trace.last();
  const bool truncated = trace.verdict.kind == Verdict::Kind::Truncated;
  json summary{{"game", g.name()},
               {"fingerprint", g.fingerprint()},
               {"n", g.n()},
               {"mode", std::string(to_string(config.mode))},
               {"policy", config.policy.to_string()},
               {"tol", config.tol},
               {"initial_partition", partition_to_json(p0)},
               {"initial_psi", trace.steps.front().psi},
               {"initial_phi", trace.steps.front().phi},
               {"verdict", to_json(trace.verdict)},
               {"final_partition", partition_to_json(last.partition)},
               {"final_psi", last.psi},
               {"final_phi", last.phi},
               {"truncated", truncated}};
  if (!truncated) summary["iterations_to_invariance"] = trace.verdict.t;
  if (!opt.summary.empty()) write_file(opt.summary, summary.dump(2) + "\n");

  out << "game: " << (g.name().empty() ? "(unnamed)" : g.name()) << " n=" << g.n()
      << " fingerprint=" << g.fingerprint() << "\n";
  out << "verdict: " << trace.verdict.to_string() << "\n";
  if (truncated) {
    out << "WARNING: truncated before reaching a fixed point or cycle\n";
  } else {
    out << "iterations_to_invariance: " << trace.verdict.t << "\n";
  }
  out << "final_partition: " << last.partition.to_string() << "\n";
  out << "final_psi: " << format_real(last.psi) << "\n";
  out << "final_phi: " << format_real(last.phi) << "\n";
  return kOk;
}

struct ShapleyOptions {
  GameSource source;
  std::string coalition;
  std::string method = "exact";
  std::int64_t samples = 10000;
  std::uint64_t sample_seed = 0;
};

int cmd_shapley(const GlobalOptions& global, const ShapleyOptions& opt,
                std::ostream& out) {
  const Game g = load_source(opt.source);
  const Coalition s =
      opt.coalition.empty() ? g.players() : parse_coalition(opt.coalition, g.n());
  ShapleyVector sv;
  std::optional<std::vector<double>> std_error;
  if (opt.method == "exact") {
    sv = shapley_exact(g, s);
  } else if (opt.method == "oracle") {
    sv = shapley_permutation_oracle(g, s);
  } else {
    SampledShapley sampled = shapley_sampled(g, s, opt.samples, opt.sample_seed);
    sv = std::move(sampled.estimate);
    std_error = std::move(sampled.std_error);
  }
  const SignSplit signs = sign_split(sv, global.tol);

  out << "coalition: " << s.to_string() << " method: " << opt.method << "\n";
  const auto members = s.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    out << "phi[" << members[k].display() << "] = " << format_real(sv.phi[k]);
    if (std_error) out << " +/- " << format_real((*std_error)[k]);
    out << "\n";
  }
  out << "theta: " << format_real(negative_mass(sv)) << "\n";
  out << "P+: " << signs.positive.to_string() << "\n";
  out << "P-: " << signs.negative.to_string() << "\n";

  if (!global.out.empty()) {
    json doc{{"coalition", s.to_string()},
             {"method", opt.method},
             {"phi", to_json(sv)},
             {"theta", negative_mass(sv)},
             {"positive", signs.positive.to_string()},
             {"negative", signs.negative.to_string()}};
    if (std_error) {
      json se = json::object();
      for (std::size_t k = 0; k < members.size(); ++k) {
        const double x = (*std_error)[k];
        se[std::to_string(members[k].display())] =
            std::isnan(x) ? json(nullptr) : json(x);
      }
      doc["std_error"] = se;
    }
    write_file(global.out, doc.dump() + "\n");
  }
  return kOk;
}

struct VerifyOptions {
  std::string suite;
  SuiteParams params;
};

int cmd_verify(const GlobalOptions& global, VerifyOptions opt,
               std::ostream& out) {
  opt.params.tol = global.tol;
  opt.params.mode = parse_step_mode(global.mode);
  const SuiteResult result = run_suite(opt.suite, opt.params);
  out << result.suite << ": " << (result.passed ? "PASS" : "FAIL") << " - "
      << result.summary << "\n";
  out << result.table;
  if (!global.out.empty()) {
    write_file(global.out, result.report.empty() ? result.table : result.report);
  }
  return result.passed ? kOk : kCheckFailed;
}

struct GenerateOptions {
  std::string kind;
  GameSource source;
};

int cmd_generate(const GlobalOptions& global, const GenerateOptions& opt,
                 std::ostream& out) {
  const Game g = generate(opt.kind, opt.source);
  const std::string text = save_game(g);
  if (global.out.empty()) {
    out << text;
  } else {
    write_file(global.out, text);
    const auto bad = check_assumption1(g);
    out << "wrote " << global.out << " (n=" << g.n() << ", fingerprint "
        << g.fingerprint() << ", "
        << (bad.empty() ? "nonnegative singletons"
                        : std::to_string(bad.size()) + " negative singletons")
        << ")\n";
  }
  return kOk;
}

struct EnumerateOptions {
  std::string what;
  GameSource source;
};

int cmd_enumerate(const GlobalOptions& global, const EnumerateOptions& opt,
                  std::ostream& out) {
  std::vector<Partition> listing;
  if (opt.what == "partitions" && opt.source.file.empty() &&
      opt.source.generator.empty()) {
    if (opt.source.n < 1) throw ValidationError("enumerate partitions needs --n or a game");
    listing = enumerate_partitions(opt.source.n);
  } else {
    const Game g = load_source(opt.source);
    if (opt.what == "partitions") {
      listing = enumerate_partitions(g.n());
    } else if (opt.what == "sfms") {
      listing = enumerate_sfms(g, global.tol);
    } else if (opt.what == "fixed-points") {
      listing = fixed_points(g, global.tol).fixed_points;
    } else if (opt.what == "zero-progress") {
      const PartitionSet set = zero_progress_set(g, global.tol);
      listing.assign(set.begin(), set.end());
    } else {
      const PartitionSet set = largest_weakly_invariant(g, global.tol);
      listing.assign(set.begin(), set.end());
    }
  }
  std::string text;
  for (const Partition& p : listing) text += p.to_string() + "\n";
  out << text << "count: " << listing.size() << "\n";
  if (!global.out.empty()) write_file(global.out, text);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Merge-split coalition formation: Shapley values, split/merge "
               "dynamics, and exhaustive verification"};
  app.name("splitmerge");
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI config file");
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  GlobalOptions global;
  app.add_option("--tol", global.tol, "Sign and surplus tolerance")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--mode", global.mode, "Step map: composite|atomic")
      ->capture_default_str()
      ->check(CLI::IsMember({"composite", "atomic"}));
  app.add_option("--policy", global.policy, "Merge order: lex|random:<seed>")
      ->capture_default_str();
  app.add_option("--max-iters", global.max_iters,
                 "Step limit for run (0 = Bell(n))")
      ->capture_default_str();
  app.add_option("--out", global.out,
                 "Output file (trace, report, game file or listing)");
  std::string write_config;
  app.add_option("--write-config", write_config,
                 "Write the effective options to this config file and exit")
      ->configurable(false);

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "Run the merge-split dynamics and emit a trace");
  run_cmd->fallthrough();
  add_game_source(run_cmd, run_opt.source);
  run_cmd->add_option("--init", run_opt.init,
                      "Initial partition: singletons|grand|random:<seed>|[[1,2],[3]]")
      ->capture_default_str();
  run_cmd->add_option("--plot", run_opt.plot, "Write t,psi,phi,num_coalitions CSV");
  run_cmd->add_option("--membership", run_opt.membership,
                      "Write player-by-iteration block membership CSV");
  run_cmd->add_option("--summary", run_opt.summary, "Write the run summary as JSON");

  ShapleyOptions shap_opt;
  CLI::App* shap_cmd = app.add_subcommand("shapley", "Shapley values of one coalition");
  shap_cmd->fallthrough();
  add_game_source(shap_cmd, shap_opt.source);
  shap_cmd->add_option("--coalition", shap_opt.coalition,
                       "Coalition as 1-based ids, e.g. 1,2 (default: all players)");
  shap_cmd->add_option("--method", shap_opt.method, "exact|oracle|sampled")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "oracle", "sampled"}));
  shap_cmd->add_option("--samples", shap_opt.samples, "Permutations for sampled")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  shap_cmd->add_option("--sample-seed", shap_opt.sample_seed, "Seed for sampled")
      ->capture_default_str();

  VerifyOptions ver_opt;
  CLI::App* ver_cmd = app.add_subcommand("verify", "Run a verification sweep");
  ver_cmd->fallthrough();
  std::vector<std::string> suites(suite_names().begin(), suite_names().end());
  ver_cmd->add_option("suite", ver_opt.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suites));
  ver_cmd->add_option("--games", ver_opt.params.games,
                      "Games (or game/partition pairs for efficiency and split-fairness)")
      ->capture_default_str();
  ver_cmd->add_option("--n", ver_opt.params.n, "Player count")->capture_default_str();
  ver_cmd->add_option("--seed", ver_opt.params.seed, "Sweep seed")->capture_default_str();
  ver_cmd->add_option("--starts", ver_opt.params.starts,
                      "Initial partitions per game")
      ->capture_default_str();
  ver_cmd->add_flag("--exhaustive", ver_opt.params.exhaustive,
                    "split-fairness: check every partition of each game");

  GenerateOptions gen_opt;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a game file");
  gen_cmd->fallthrough();
  gen_cmd->add_option("kind", gen_opt.kind, "case-study|random|additive|superadditive")
      ->required()
      ->check(CLI::IsMember({"case-study", "random", "additive", "superadditive"}));
  add_generator_options(gen_cmd, gen_opt.source);

  EnumerateOptions enum_opt;
  CLI::App* enum_cmd = app.add_subcommand("enumerate", "List partitions with a property");
  enum_cmd->fallthrough();
  enum_cmd->add_option("what", enum_opt.what,
                       "partitions|sfms|fixed-points|zero-progress|invariant-set")
      ->required()
      ->check(CLI::IsMember(
          {"partitions", "sfms", "fixed-points", "zero-progress", "invariant-set"}));
  add_game_source(enum_cmd, enum_opt.source);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  if (!write_config.empty()) {
    write_file(write_config, app.config_to_str(false, false));
    return kOk;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(global, run_opt, out);
    if (shap_cmd->parsed()) return cmd_shapley(global, shap_opt, out);
    if (ver_cmd->parsed()) return cmd_verify(global, ver_opt, out);
    if (gen_cmd->parsed()) return cmd_generate(global, gen_opt, out);
    if (enum_cmd->parsed()) return cmd_enumerate(global, enum_opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace splitmerge::cli
