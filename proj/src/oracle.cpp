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

#include "splitmerge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "splitmerge/errors.hpp"
#include "splitmerge/game_io.hpp"

namespace splitmerge {
namespace {

void check_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw CapError(std::string(what) + " is limited to n <= " +
                   std::to_string(cap) + " players, got n = " +
                   std::to_string(n));
  }
}

bool lyapunov_equal(const LyapunovValue& a, const LyapunovValue& b) {
  return std::abs(a.neg_fairness - b.neg_fairness) <= kLyapunovEqualTol &&
         std::abs(a.surplus - b.surplus) <= kLyapunovEqualTol;
}

constexpr std::size_t kMaxArchivedFindings = 32;

}  // namespace

PartitionSpace::PartitionSpace(int n) : n_(n) {
  if (n < 1) throw ValidationError("partition space needs n >= 1");
  check_cap(n, kPartitionEnumCap, "partition enumeration");
  labels_.assign(static_cast<std::size_t>(n), 0);
  prefix_max_.assign(static_cast<std::size_t>(n), 0);
}

bool PartitionSpace::next(Partition& out) {
  if (done_) return false;
  if (started_) {
    // Rightmost position that can still grow, then reset everything after.
    int i = n_ - 1;
    while (i > 0 && labels_[static_cast<std::size_t>(i)] >
                        prefix_max_[static_cast<std::size_t>(i - 1)]) {
      --i;
    }
    if (i == 0) {
      done_ = true;
      return false;
    }
    const auto ui = static_cast<std::size_t>(i);
    ++labels_[ui];
    prefix_max_[ui] = std::max(prefix_max_[ui - 1], labels_[ui]);
    for (auto j = ui + 1; j < labels_.size(); ++j) {
      labels_[j] = 0;
      prefix_max_[j] = prefix_max_[ui];
    }
  }
  started_ = true;

  std::vector<Coalition> blocks(static_cast<std::size_t>(prefix_max_.back() + 1));
  for (int p = 0; p < n_; ++p) {
    auto& b = blocks[static_cast<std::size_t>(labels_[static_cast<std::size_t>(p)])];
    b = b.with(p);
  }
  // Labels appear in order of first occurrence, so blocks are already
  // sorted by smallest member.
  out = canonical_unchecked(std::move(blocks), n_);
  return true;
}

void for_each_partition(int n,
                        const std::function<void(const Partition&)>& fn) {
  PartitionSpace space(n);
  Partition p;
  while (space.next(p)) fn(p);
}

std::vector<Partition> enumerate_partitions(int n) {
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(bell_number(n)));
  for_each_partition(n, [&out](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<Partition> enumerate_sfms(const Game& g, double tol) {
  check_cap(g.n(), kFixedPointCap, "SFMS enumeration");
  std::vector<Partition> out;
  for_each_partition(g.n(), [&](const Partition& p) {
    if (is_sfms(g, p, tol)) out.push_back(p);
  });
  return out;
}

FixedPointReport fixed_points(const Game& g, double tol) {
  check_cap(g.n(), kFixedPointCap, "fixed-point enumeration");
  FixedPointReport report;
  for_each_partition(g.n(), [&](const Partition& p) {
    const bool fixed = composite_step(g, p, MergePolicy{}, tol).next == p;
    const bool sfms = is_sfms(g, p, tol).sfms;
    if (fixed) report.fixed_points.push_back(p);
    if (sfms) report.sfms.push_back(p);
    if (fixed && !sfms) report.fixed_not_sfms.push_back(p);
    if (sfms && !fixed) report.sfms_not_fixed.push_back(p);
  });
  report.equal = report.fixed_not_sfms.empty() && report.sfms_not_fixed.empty();
  return report;
}

PartitionSet enumerate_successors(const Game& g, const Partition& p,
                                  double tol) {
  check_cap(g.n(), kSuccessorCap, "successor enumeration");
  PartitionSet terminal;
  std::unordered_set<Partition, PartitionHash> visited;
  std::vector<Partition> stack{split_operator(g, p, tol)};
  visited.insert(stack.back());
  while (!stack.empty()) {
    Partition state = std::move(stack.back());
    stack.pop_back();
    const auto pairs = profitable_pairs(g, state, tol);
    if (pairs.empty()) {
      terminal.insert(std::move(state));
      continue;
    }
    for (const auto& [i, j] : pairs) {
      std::vector<Coalition> blocks(state.blocks().begin(), state.blocks().end());
      blocks[i] = blocks[i] | blocks[j];
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
      Partition merged = canonical_unchecked(std::move(blocks), state.n());
      if (visited.insert(merged).second) {
        if (visited.size() > kSuccessorStateCap) {
          throw CapError("successor enumeration exceeded " +
                         std::to_string(kSuccessorStateCap) +
                         " intermediate states");
        }
        stack.push_back(std::move(merged));
      }
    }
  }
  return terminal;
}

InvarianceAnalysis analyze_invariance(const Game& g, double tol) {
  check_cap(g.n(), kInvariantSetCap, "invariant-set computation");
  const std::vector<Partition> states = enumerate_partitions(g.n());
  std::unordered_map<Partition, std::size_t, PartitionHash> index;
  for (std::size_t k = 0; k < states.size(); ++k) index.emplace(states[k], k);

  std::vector<LyapunovValue> values(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) values[k] = lyapunov(g, states[k]);

  std::vector<std::vector<std::size_t>> successors(states.size());
  std::vector<std::size_t> lex_next(states.size());
  InvarianceAnalysis out;
  std::vector<bool> in_set(states.size(), false);
  for (std::size_t k = 0; k < states.size(); ++k) {
    bool zero_progress = false;
    for (const Partition& s : enumerate_successors(g, states[k], tol)) {
      const std::size_t j = index.at(s);
      successors[k].push_back(j);
      if (lyapunov_equal(values[j], values[k])) zero_progress = true;
    }
    lex_next[k] = index.at(composite_step(g, states[k], MergePolicy{}, tol).next);
    if (lex_next[k] == k) out.fixed_points.insert(states[k]);
    if (zero_progress) {
      in_set[k] = true;
      out.zero_progress.insert(states[k]);
    }
  }

  // Prune states without a successor left in the candidate set.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (!in_set[k]) continue;
      const bool keep = std::any_of(successors[k].begin(), successors[k].end(),
                                    [&](std::size_t j) { return in_set[j]; });
      if (!keep) {
        in_set[k] = false;
        changed = true;
      }
    }
  }
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (in_set[k]) out.invariant.insert(states[k]);
  }

  // States on cycles of the deterministic map: walk from every state and
  // mark the loop closed by the walk.
  std::vector<int> color(states.size(), 0);  // 0 new, 1 on stack, 2 done
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<std::size_t> path;
    std::size_t cur = k;
    while (color[cur] == 0) {
      color[cur] = 1;
      path.push_back(cur);
      cur = lex_next[cur];
    }
    if (color[cur] == 1) {
      auto it = std::find(path.begin(), path.end(), cur);
      for (; it != path.end(); ++it) out.lex_attractor.insert(states[*it]);
    }
    for (std::size_t s : path) color[s] = 2;
  }
  return out;
}

PartitionSet zero_progress_set(const Game& g, double tol) {
  return analyze_invariance(g, tol).zero_progress;
}

PartitionSet largest_weakly_invariant(const Game& g, double tol) {
  return analyze_invariance(g, tol).invariant;
}

Game sweep_game(int n, std::uint64_t seed, int index) {
  RandomGameParams params;
  params.n = n;
  params.seed = mix_seed(seed, static_cast<std::uint64_t>(index));
  params.enforce_a1 = true;
  return random_game(params);
}

void audit_game(const Game& g, const std::vector<Partition>& starts,
                StepMode mode, double tol, AuditReport& report) {
  DynamicsConfig config;
  config.mode = mode;
  config.tol = tol;
  const double split_bound = tol * g.n();
  const std::string fingerprint = g.fingerprint();

  for (const Partition& start : starts) {
    const Trace trace = run(g, start, config);
    const auto& steps = trace.steps;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      const LyapunovValue before{-steps[t].psi, steps[t].phi};

      // Split operator in isolation.
      const Partition split = split_operator(g, steps[t].partition, tol);
      const LyapunovValue after_split = lyapunov(g, split);
      if (split != steps[t].partition) ++report.split_transitions;
      if (after_split.psi() > split_bound ||
          lex_cmp(after_split, before, kLyapunovEqualTol) == LexOrder::Less) {
        ++report.split_violations_count;
        if (report.split_violations.size() < kMaxArchivedFindings) {
          report.split_violations.push_back(
              {fingerprint, save_game(g), steps[t].partition, split, before,
               after_split});
        }
      }

      // Full step t -> t+1; the closing step of a cycle returns to its entry.
      const TraceStep* next = nullptr;
      if (t + 1 < steps.size()) {
        next = &steps[t + 1];
      } else if (trace.verdict.kind == Verdict::Kind::Cycle) {
        next = &steps[static_cast<std::size_t>(trace.verdict.t)];
      }
      if (next == nullptr) continue;
      ++report.steps_tested;
      const LyapunovValue after{-next->psi, next->phi};
      const LexOrder order = lex_cmp(after, before, kLyapunovEqualTol);
      const bool split_only =
          !next->ops.empty() &&
          std::all_of(next->ops.begin(), next->ops.end(), [](const Operation& op) {
            return std::holds_alternative<SplitOp>(op);
          });
      if (split_only && order == LexOrder::Less && next == &steps[t + 1]) {
        ++report.split_violations_count;
        if (report.split_violations.size() < kMaxArchivedFindings) {
          report.split_violations.push_back({fingerprint, save_game(g),
                                             steps[t].partition,
                                             next->partition, before, after});
        }
      }
      switch (order) {
        case LexOrder::Less:
          ++report.lex_less;
          if (report.lex_violations.size() < kMaxArchivedFindings) {
            report.lex_violations.push_back(
                {fingerprint, save_game(g), steps[t].partition, next->partition,
                 describe(next->ops), before, after});
          }
          break;
        case LexOrder::Equal: ++report.lex_equal; break;
        case LexOrder::Greater: ++report.lex_greater; break;
      }
    }
  }
  ++report.games_tested;
}

AuditReport monotonicity_audit(const AuditParams& params) {
  AuditReport report;
  for (int i = 0; i < params.games; ++i) {
    const Game g = sweep_game(params.n, params.seed, i);
    Rng rng(mix_seed(params.seed ^ 0x5a5a5a5aULL, static_cast<std::uint64_t>(i)));
    std::vector<Partition> starts;
    for (int s = 0; s < params.starts_per_game; ++s) {
      starts.push_back(random_partition(params.n, rng));
    }
    audit_game(g, starts, params.mode, params.tol, report);
  }
  return report;
}

CycleSearchReport cycle_search(const CycleSearchParams& params) {
  check_cap(params.n, kSuccessorCap, "cycle search");
  CycleSearchReport report;
  DynamicsConfig config;
  config.mode = params.mode;
  config.tol = params.tol;
  config.policy = params.policy;
  for (int i = 0; i < params.games; ++i) {
    const Game g = sweep_game(params.n, params.seed, i);
    Rng rng(mix_seed(params.seed ^ 0xc3c3c3c3ULL, static_cast<std::uint64_t>(i)));
    for (int s = 0; s < params.starts_per_game; ++s) {
      const Partition start = random_partition(params.n, rng);
      const Trace trace = run(g, start, config);
      ++report.runs;
      report.max_iterations =
          std::max<std::int64_t>(report.max_iterations,
                                 static_cast<std::int64_t>(trace.steps.size()));
      switch (trace.verdict.kind) {
        case Verdict::Kind::FixedPoint:
          ++report.fixed_points;
          report.max_period = std::max<std::int64_t>(report.max_period, 1);
          break;
        case Verdict::Kind::Truncated: ++report.truncated; break;
        case Verdict::Kind::Cycle: {
          ++report.cycles;
          report.max_period = std::max(report.max_period, trace.verdict.period);
          double psi_lo = INFINITY, psi_hi = -INFINITY;
          double phi_lo = INFINITY, phi_hi = -INFINITY;
          for (auto t = static_cast<std::size_t>(trace.verdict.t);
               t < trace.steps.size(); ++t) {
            psi_lo = std::min(psi_lo, trace.steps[t].psi);
            psi_hi = std::max(psi_hi, trace.steps[t].psi);
            phi_lo = std::min(phi_lo, trace.steps[t].phi);
            phi_hi = std::max(phi_hi, trace.steps[t].phi);
          }
          CycleRecord record{g.fingerprint(), start, trace.verdict.t,
                             trace.verdict.period, psi_hi - psi_lo,
                             phi_hi - phi_lo};
          if (record.psi_range > 1e-9 || record.phi_range > 1e-9) {
            ++report.value_violations;
          }
          report.cycle_records.push_back(std::move(record));
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace splitmerge
