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

#include "splitmerge/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "splitmerge/errors.hpp"
#include "splitmerge/oracle.hpp"
#include "splitmerge/trace_io.hpp"

namespace splitmerge {
namespace {

constexpr std::array<std::string_view, 6> kSuites = {
    "efficiency",        "split-fairness",     "fixed-point-sfms",
    "invariance",        "monotonicity-audit", "cycle-search"};

std::vector<Partition> random_starts(int n, std::uint64_t seed, int index,
                                     int count) {
  Rng rng(mix_seed(seed ^ 0x5a5a5a5aULL, static_cast<std::uint64_t>(index)));
  std::vector<Partition> out;
  for (int s = 0; s < count; ++s) out.push_back(random_partition(n, rng));
  return out;
}

SuiteResult efficiency(const SuiteParams& p) {
  SuiteResult r{"efficiency", true, {}, {}, {}};
  Rng rng(p.seed);
  double worst = 0.0;
  for (int k = 0; k < p.games; ++k) {
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.n)));
    RandomGameParams gp;
    gp.n = n;
    gp.seed = rng.next();
    gp.enforce_a1 = false;
    const Game g = random_game(gp);
    const Mask mask = 1 + static_cast<Mask>(rng.below((std::uint64_t{1} << n) - 1));
    const ShapleyVector sv = shapley_exact(g, Coalition(mask));
    worst = std::max(worst, std::abs(sv.sum() - g[mask]));
  }
  r.passed = worst <= 1e-9;
  r.summary = std::to_string(p.games) + " pairs, max |sum(phi) - v(S)| = " +
              format_real(worst);
  return r;
}

SuiteResult split_fairness(const SuiteParams& p) {
  SuiteResult r{"split-fairness", true, {}, {}, {}};
  const double bound = p.tol * p.n;
  std::int64_t checked = 0, violations = 0;
  double worst = 0.0;
  auto check = [&](const Game& g, const Partition& part) {
    const double psi = fairness_violation(g, split_operator(g, part, p.tol));
    worst = std::max(worst, psi);
    ++checked;
    if (psi > bound) ++violations;
  };
  for (int i = 0; i < p.games; ++i) {
    const Game g = sweep_game(p.n, p.seed, i);
    if (p.exhaustive) {
      for_each_partition(p.n, [&](const Partition& part) { check(g, part); });
    } else {
      check(g, random_starts(p.n, p.seed, i, 1).front());
    }
  }
  r.passed = violations == 0;
  r.summary = std::to_string(checked) + " (game, partition) pairs, " +
              std::to_string(violations) + " violations, max Psi after split = " +
              format_real(worst);
  return r;
}

SuiteResult fixed_point_sfms(const SuiteParams& p) {
  SuiteResult r{"fixed-point-sfms", true, {}, {}, {}};
  r.table = "fingerprint,fixed_points,sfms,equal,cycles,max_period\n";
  int mismatched = 0;
  DynamicsConfig config;
  config.tol = p.tol;
  for (int i = 0; i < p.games; ++i) {
    const Game g = sweep_game(p.n, p.seed, i);
    const FixedPointReport fp = fixed_points(g, p.tol);
    std::int64_t cycles = 0, max_period = 0;
    for (const Partition& start : random_starts(p.n, p.seed, i, p.starts)) {
      const Trace trace = run(g, start, config);
      if (trace.verdict.kind == Verdict::Kind::Cycle) ++cycles;
      max_period = std::max(max_period, trace.verdict.period);
    }
    if (!fp.equal) ++mismatched;
    r.table += g.fingerprint() + "," + std::to_string(fp.fixed_points.size()) +
               "," + std::to_string(fp.sfms.size()) + "," +
               (fp.equal ? "true" : "false") + "," + std::to_string(cycles) +
               "," + std::to_string(max_period) + "\n";
  }
  r.passed = mismatched == 0;
  r.summary = std::to_string(p.games) + " games at n=" + std::to_string(p.n) +
              ", " + std::to_string(mismatched) + " with fixed points != SFMS";
  return r;
}

SuiteResult invariance(const SuiteParams& p) {
  SuiteResult r{"invariance", true, {}, {}, {}};
  r.table =
      "fingerprint,zero_progress,invariant,fixed_points,lex_attractor,"
      "invariant_eq_attractor,terminal_in_invariant\n";
  DynamicsConfig config;
  config.tol = p.tol;
  config.mode = p.mode;
  int failures = 0, attractor_diffs = 0;
  for (int i = 0; i < p.games; ++i) {
    const Game g = sweep_game(p.n, p.seed, i);
    const InvarianceAnalysis a = analyze_invariance(g, p.tol);
    bool ok = std::includes(a.zero_progress.begin(), a.zero_progress.end(),
                            a.invariant.begin(), a.invariant.end()) &&
              std::includes(a.invariant.begin(), a.invariant.end(),
                            a.fixed_points.begin(), a.fixed_points.end());
    bool terminal_ok = true;
    for (const Partition& start : random_starts(p.n, p.seed, i, p.starts)) {
      const Trace trace = run(g, start, config);
      if (trace.verdict.kind == Verdict::Kind::Truncated) terminal_ok = false;
      for (auto t = static_cast<std::size_t>(trace.verdict.t);
           t < trace.steps.size(); ++t) {
        if (!a.invariant.contains(trace.steps[t].partition)) terminal_ok = false;
      }
    }
    ok = ok && terminal_ok;
    if (!ok) ++failures;
    const bool same = a.invariant == a.lex_attractor;
    if (!same) ++attractor_diffs;
    r.table += g.fingerprint() + "," + std::to_string(a.zero_progress.size()) +
               "," + std::to_string(a.invariant.size()) + "," +
               std::to_string(a.fixed_points.size()) + "," +
               std::to_string(a.lex_attractor.size()) + "," +
               (same ? "true" : "false") + "," +
               (terminal_ok ? "true" : "false") + "\n";
  }
  r.passed = failures == 0;
  r.summary = std::to_string(p.games) + " games at n=" + std::to_string(p.n) +
              ", " + std::to_string(failures) + " inclusion failures, " +
              std::to_string(attractor_diffs) +
              " games where I differs from the lex-policy attractor";
  return r;
}

SuiteResult audit(const SuiteParams& p) {
  AuditParams ap;
  ap.games = p.games;
  ap.n = p.n;
  ap.seed = p.seed;
  ap.mode = p.mode;
  ap.tol = p.tol;
  ap.starts_per_game = p.starts;
  const AuditReport report = monotonicity_audit(ap);
  SuiteResult r{"monotonicity-audit", report.split_violations_count == 0, {}, {},
                audit_report_to_jsonl(report)};
  r.summary = std::to_string(report.games_tested) + " games, " +
              std::to_string(report.steps_tested) + " steps, " +
              std::to_string(report.split_violations_count) +
              " split violations, lexicographic decreases: " +
              std::to_string(report.lex_less) + " (reported, non-fatal)";
  return r;
}

SuiteResult cycles(const SuiteParams& p) {
  CycleSearchParams cp;
  cp.games = p.games;
  cp.n = p.n;
  cp.seed = p.seed;
  cp.tol = p.tol;
  cp.starts_per_game = p.starts;
  cp.mode = p.mode;
  const CycleSearchReport report = cycle_search(cp);
  SuiteResult r{"cycle-search",
                report.truncated == 0 && report.value_violations == 0,
                {},
                {},
                cycle_report_to_jsonl(report)};
  r.summary = std::to_string(report.runs) + " runs: " +
              std::to_string(report.fixed_points) + " fixed points, " +
              std::to_string(report.cycles) + " cycles (max period " +
              std::to_string(report.max_period) + "), " +
              std::to_string(report.truncated) + " truncated, " +
              std::to_string(report.value_violations) +
              " cycles with non-constant Psi/Phi";
  return r;
}

}  // namespace

std::span<const std::string_view> suite_names() { return kSuites; }

SuiteResult run_suite(std::string_view name, const SuiteParams& params) {
  if (name == "efficiency") return efficiency(params);
  if (name == "split-fairness") return split_fairness(params);
  if (name == "fixed-point-sfms") return fixed_point_sfms(params);
  if (name == "invariance") return invariance(params);
  if (name == "monotonicity-audit") return audit(params);
  if (name == "cycle-search") return cycles(params);
  throw ValidationError("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace splitmerge
