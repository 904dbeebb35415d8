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

#ifndef SPLITMERGE_DYNAMICS_HPP
#define SPLITMERGE_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "splitmerge/coalition.hpp"
#include "splitmerge/game.hpp"
#include "splitmerge/rng.hpp"
#include "splitmerge/shapley.hpp"

namespace splitmerge {

/// Vector Lyapunov value (-Psi, Phi), ordered lexicographically.
struct LyapunovValue {
  double neg_fairness = 0.0;  // -Psi, always <= 0
  double surplus = 0.0;       // Phi

  double psi() const { return -neg_fairness; }
  double phi() const { return surplus; }
};

enum class LexOrder { Less, Equal, Greater };

/// Compares neg_fairness first, then surplus. Components closer than eps are
/// treated as equal; eps = 0 gives the exact total order.
LexOrder lex_cmp(const LyapunovValue& u, const LyapunovValue& v,
                 double eps = 0.0);

std::string_view to_string(LexOrder order);

/// Which profitable pair merge_closure takes when several qualify.
struct MergePolicy {
  enum class Kind { Lexicographic, Random };

  Kind kind = Kind::Lexicographic;
  std::uint64_t seed = 0;

  static MergePolicy lexicographic() { return {}; }
  static MergePolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }

  // "lex" or "random:<seed>"
  std::string to_string() const;
  static MergePolicy parse(std::string_view text);

  friend bool operator==(const MergePolicy&, const MergePolicy&) = default;
};

/// Stateful pair chooser. The lexicographic policy always takes candidate 0
/// (candidates are listed in canonical pair order); the random policy draws
/// Rng::below(count) from one stream seeded once, so a whole trajectory is
/// replayable from the seed.
class MergeSelector {
 public:
  explicit MergeSelector(MergePolicy policy)
      : policy_(policy), rng_(policy.seed) {}

  const MergePolicy& policy() const { return policy_; }
  std::size_t choose(std::size_t candidates);

 private:
  MergePolicy policy_;
  Rng rng_;
};

enum class StepMode { Composite, Atomic };

std::string_view to_string(StepMode mode);
StepMode parse_step_mode(std::string_view text);

struct SplitOp {
  Coalition block;
  std::vector<Coalition> parts;
};

struct MergeOp {
  Coalition a;
  Coalition b;
};

using Operation = std::variant<SplitOp, MergeOp>;

// "split:[1,2,3]→[[1,2],[3]]" or "merge:[1]+[2]".
std::string describe(const Operation& op);
// Operations joined by ';', or "none".
std::string describe(std::span<const Operation> ops);

/// Fairness-stable split of one coalition.
///
/// With P_+ and P_- the sign classes of phi(S) at tolerance tol: returns {S}
/// if P_- is empty. Otherwise R = P_+ is kept whole, next to the members of
/// P_- as singletons, unless R is empty or its own negative mass exceeds
/// tol * |R|, in which case S falls apart into singletons. Parts are in
/// canonical order. Throws ValidationError for an empty coalition.
std::vector<Coalition> split_rule(const Game& g, Coalition s,
                                  double tol = kDefaultTol);

/// Applies split_rule to every block. Blocks that actually change are
/// appended to ops when given.
Partition split_operator(const Game& g, const Partition& p,
                         double tol = kDefaultTol,
                         std::vector<Operation>* ops = nullptr);

/// v(A u B) - v(A) - v(B). Throws ValidationError for overlapping or empty
/// coalitions.
double merge_surplus(const Game& g, Coalition a, Coalition b);

/// All block pairs (i < j) with surplus > tol, in canonical pair order.
std::vector<std::pair<std::size_t, std::size_t>> profitable_pairs(
    const Game& g, const Partition& p, double tol = kDefaultTol);

/// Merges profitable pairs one at a time, chosen by the selector, until none
/// is left. At most |p| - 1 merges.
Partition merge_closure(const Game& g, const Partition& p,
                        MergeSelector& selector, double tol = kDefaultTol,
                        std::vector<Operation>* ops = nullptr);
Partition merge_closure(const Game& g, const Partition& p,
                        MergePolicy policy = {}, double tol = kDefaultTol);

struct StepResult {
  Partition next;
  std::vector<Operation> ops;  // empty when nothing fired
};

/// merge_closure(split_operator(p)).
StepResult composite_step(const Game& g, const Partition& p,
                          MergeSelector& selector, double tol = kDefaultTol);
StepResult composite_step(const Game& g, const Partition& p,
                          MergePolicy policy = {}, double tol = kDefaultTol);

/// One operation: the split of the first block (canonical order) whose split
/// rule changes it; failing that, one merge picked by the selector; failing
/// that, nothing.
StepResult atomic_step(const Game& g, const Partition& p,
                       MergeSelector& selector, double tol = kDefaultTol);
StepResult atomic_step(const Game& g, const Partition& p,
                       MergePolicy policy = {}, double tol = kDefaultTol);

StepResult step(const Game& g, const Partition& p, StepMode mode,
                MergeSelector& selector, double tol = kDefaultTol);

/// Psi: total negative Shapley mass over the blocks.
double fairness_violation(const Game& g, const Partition& p);
/// Phi: sum of block values.
double total_surplus(const Game& g, const Partition& p);
LyapunovValue lyapunov(const Game& g, const Partition& p);

struct SfmsVerdict {
  bool sfms = false;
  // Set when some member has phi < -tol.
  std::optional<PlayerId> unfair_player;
  Coalition unfair_block;
  // Set when some pair has surplus > tol.
  std::optional<std::pair<Coalition, Coalition>> profitable_pair;

  explicit operator bool() const { return sfms; }
};

/// Shapley-fair (every phi >= -tol) and merge-stable (every pairwise surplus
/// <= tol). On failure the first witness in canonical order is reported.
SfmsVerdict is_sfms(const Game& g, const Partition& p,
                    double tol = kDefaultTol);

/// Bell number B(n), saturating at UINT64_MAX beyond n = 25.
std::uint64_t bell_number(int n);

struct DynamicsConfig {
  StepMode mode = StepMode::Composite;
  double tol = kDefaultTol;
  MergePolicy policy;
  std::uint64_t max_iters = 0;  // 0 means Bell(n)
};

struct TraceStep {
  std::int64_t t = 0;
  Partition partition;
  std::vector<Operation> ops;  // what produced this state from t - 1
  double psi = 0.0;
  double phi = 0.0;
};

struct Verdict {
  enum class Kind { FixedPoint, Cycle, Truncated };

  Kind kind = Kind::Truncated;
  std::int64_t t = 0;       // fixed point time, or cycle entry time
  std::int64_t period = 0;  // 1 for fixed points
  std::uint64_t max_iters = 0;

  std::string to_string() const;
};

struct Trace {
  std::vector<TraceStep> steps;
  Verdict verdict;

  const TraceStep& last() const { return steps.back(); }
};

/// Iterates the configured step map from p0.
///
/// Every visited state is hashed; the run stops at the first step whose
/// successor equals the current state (FixedPoint at that t) or an earlier
/// state (Cycle with entry t1 and period p, the trace holding states
/// t1..t1+p-1 at its end), or after max_iters step applications
/// (Truncated). The revisited state is not appended again.
Trace run(const Game& g, const Partition& p0, const DynamicsConfig& config);

}  // namespace splitmerge

#endif  // SPLITMERGE_DYNAMICS_HPP
