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

#ifndef SPLITMERGE_ORACLE_HPP
#define SPLITMERGE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splitmerge/dynamics.hpp"

namespace splitmerge {

inline constexpr int kPartitionEnumCap = 12;
inline constexpr int kFixedPointCap = 10;
inline constexpr int kSuccessorCap = 8;
inline constexpr int kInvariantSetCap = 7;
// Distinct intermediate states a single successor enumeration may visit.
inline constexpr std::size_t kSuccessorStateCap = 1'000'000;
// Per-component tolerance for Lyapunov equality in the zero-progress set.
inline constexpr double kLyapunovEqualTol = 1e-12;

using PartitionSet = std::set<Partition>;

/// Enumerates the set partitions of {1..n} through restricted growth strings
/// a[0..n-1] with a[0] = 0 and a[i] <= 1 + max(a[0..i-1]); each string is one
/// partition, block k holding the players labelled k.
class PartitionSpace {
 public:
  /// Throws CapError for n > kPartitionEnumCap, ValidationError for n < 1.
  explicit PartitionSpace(int n);

  int n() const { return n_; }
  /// Fills `out` with the next partition; false once exhausted.
  bool next(Partition& out);

 private:
  int n_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> labels_;
  std::vector<int> prefix_max_;  // max label in labels_[0..i]
};

void for_each_partition(int n, const std::function<void(const Partition&)>& fn);
std::vector<Partition> enumerate_partitions(int n);

/// SFMS partitions of g. Throws CapError above kFixedPointCap players.
std::vector<Partition> enumerate_sfms(const Game& g, double tol = kDefaultTol);

struct FixedPointReport {
  std::vector<Partition> fixed_points;  // composite_step(p) == p, lex policy
  std::vector<Partition> sfms;
  bool equal = false;
  // Symmetric difference, for reporting mismatches.
  std::vector<Partition> fixed_not_sfms;
  std::vector<Partition> sfms_not_fixed;
};

/// Throws CapError above kFixedPointCap players.
FixedPointReport fixed_points(const Game& g, double tol = kDefaultTol);

/// Every partition reachable as merge_closure(split_operator(p)) under some
/// admissible merge order. Depth-first over profitable pairs with
/// deduplication of intermediate states. Throws CapError above
/// kSuccessorCap players or kSuccessorStateCap visited states.
PartitionSet enumerate_successors(const Game& g, const Partition& p,
                                  double tol = kDefaultTol);

/// Zero-progress set E, largest weakly invariant subset I of E, and the
/// attractor of the deterministic lexicographic-policy map (states on its
/// fixed points and cycles), all over the full partition space.
struct InvarianceAnalysis {
  PartitionSet zero_progress;
  PartitionSet invariant;
  PartitionSet fixed_points;
  PartitionSet lex_attractor;
};

/// Throws CapError above kInvariantSetCap players.
InvarianceAnalysis analyze_invariance(const Game& g, double tol = kDefaultTol);
PartitionSet zero_progress_set(const Game& g, double tol = kDefaultTol);
PartitionSet largest_weakly_invariant(const Game& g, double tol = kDefaultTol);

struct LexFinding {
  std::string fingerprint;
  std::string game_json;  // reproducer: the full game file
  Partition partition;
  Partition successor;
  std::string ops;
  LyapunovValue before;
  LyapunovValue after;
};

struct SplitViolation {
  std::string fingerprint;
  std::string game_json;
  Partition partition;
  Partition successor;  // split_operator(partition)
  LyapunovValue before;
  LyapunovValue after;
};

struct AuditParams {
  int games = 1000;
  int n = 5;
  std::uint64_t seed = 1;
  StepMode mode = StepMode::Composite;
  double tol = kDefaultTol;
  int starts_per_game = 1;
};

struct AuditReport {
  std::int64_t games_tested = 0;
  std::int64_t steps_tested = 0;
  std::int64_t split_transitions = 0;
  std::int64_t split_violations_count = 0;
  std::vector<SplitViolation> split_violations;
  std::int64_t lex_less = 0;
  std::int64_t lex_equal = 0;
  std::int64_t lex_greater = 0;
  std::vector<LexFinding> lex_violations;  // archived, capped at 32
};

/// Runs lexicographic-policy trajectories from random initial partitions of
/// random games with nonnegative singletons. At every visited state the split operator is
/// checked in isolation (Psi after split <= tol * n, and no lexicographic
/// decrease); every full step's Lyapunov comparison is tallied and each
/// decrease archived as a finding.
AuditReport monotonicity_audit(const AuditParams& params);

/// Audits the given game and starting partitions instead of random ones.
void audit_game(const Game& g, const std::vector<Partition>& starts,
                StepMode mode, double tol, AuditReport& report);

struct CycleRecord {
  std::string fingerprint;
  Partition start;
  std::int64_t entry = 0;
  std::int64_t period = 0;
  double psi_range = 0.0;
  double phi_range = 0.0;
};

struct CycleSearchParams {
  int games = 100;
  int n = 6;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  int starts_per_game = 5;
  StepMode mode = StepMode::Composite;
  MergePolicy policy;
};

struct CycleSearchReport {
  std::int64_t runs = 0;
  std::int64_t fixed_points = 0;
  std::int64_t cycles = 0;
  std::int64_t truncated = 0;
  std::int64_t max_period = 0;
  std::int64_t max_iterations = 0;
  std::int64_t value_violations = 0;  // cycles with Psi or Phi range > 1e-9
  std::vector<CycleRecord> cycle_records;
};

CycleSearchReport cycle_search(const CycleSearchParams& params);

/// Game i of a sweep: random_game with seed mix_seed(seed, i) and
/// nonnegative singletons enforced.
Game sweep_game(int n, std::uint64_t seed, int index);

}  // namespace splitmerge

#endif  // SPLITMERGE_ORACLE_HPP
