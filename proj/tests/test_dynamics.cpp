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

#include <cmath>

#include "doctest.h"
#include "splitmerge/dynamics.hpp"
#include "splitmerge/errors.hpp"
#include "splitmerge/game_io.hpp"
#include "splitmerge/oracle.hpp"
#include "splitmerge/rng.hpp"
#include "test_util.hpp"

using namespace splitmerge;
using splitmerge::testing::fixture;

namespace {

Partition part(std::string_view text, int n) { return parse_partition(text, n); }

// G2 on players 1,2 plus a third player whose joining {1,2} is very
// profitable.
Game split_and_merge_game() {
  return load_game(R"({"n":3,"sparse":{"1":1,"1,2":0.5,"1,3":1,"1,2,3":5},
                       "default":"zero"})");
}

}  // namespace

TEST_CASE("split rule") {
  const Game g2 = fixture("g2.json");
  const auto parts = split_rule(g2, Coalition(3));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Coalition(1));
  CHECK(parts[1] == Coalition(2));

  const Game sup = superadditive_game(std::vector<double>{1, 1, 1}, 0.5);
  CHECK(split_rule(sup, Coalition(7)) == std::vector<Coalition>{Coalition(7)});
  CHECK(split_rule(g2, Coalition(1)) == std::vector<Coalition>{Coalition(1)});
}

TEST_CASE("split rule dissolves a coalition whose residual is unfair") {
  const Game g = fixture("residual_unfair.json");
  const Coalition all = g.players();
  const SignSplit signs = sign_split(shapley_exact(g, all));
  CHECK(signs.positive == Coalition(0b1010));
  CHECK(signs.negative == Coalition(0b0101));
  const double theta = negative_mass(shapley_exact(g, signs.positive));
  CHECK(theta > 1e-9 * signs.positive.size());
  CHECK(split_rule(g, all).size() == 4);
}

TEST_CASE("split rule keeps a fair residual together") {
  // Player 3 drags the coalition down, {1,2} is fair on its own.
  const Game g = fixture("fixed_not_sfms.json");
  const auto parts = split_rule(g, g.players());
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Coalition(0b011));
  CHECK(parts[1] == Coalition(0b100));
}

TEST_CASE("split operator") {
  const Game g2 = fixture("g2.json");
  CHECK(split_operator(g2, Partition::singletons(2)) == Partition::singletons(2));
  std::vector<Operation> ops;
  CHECK(split_operator(g2, Partition::grand(2), kDefaultTol, &ops) ==
        Partition::singletons(2));
  CHECK(describe(ops) == "split:[1,2]→[[1],[2]]");

  const Game sup = superadditive_game(std::vector<double>{1, 2, 3, 4}, 0.5);
  const Partition fair = part("[[1,3],[2,4]]", 4);
  CHECK(split_operator(sup, fair) == fair);
}

TEST_CASE("merge surplus") {
  const Game g2 = fixture("g2.json");
  CHECK(merge_surplus(g2, Coalition(1), Coalition(2)) == doctest::Approx(-0.5));
  const Game add = additive_game(std::vector<double>{0.3, 1.1, 2.0});
  const Game sup = superadditive_game(std::vector<double>{0.3, 1.1, 2.0}, 0.2);
  for (Mask a = 1; a < 8; ++a) {
    for (Mask b = 1; b < 8; ++b) {
      if (a & b) continue;
      CHECK(std::abs(merge_surplus(add, Coalition(a), Coalition(b))) < 1e-12);
      CHECK(merge_surplus(sup, Coalition(a), Coalition(b)) >= 0.0);
    }
  }
  CHECK_THROWS_AS(merge_surplus(g2, Coalition(3), Coalition(1)), ValidationError);
}

TEST_CASE("merge closure") {
  const Game g2 = fixture("g2.json");
  CHECK(merge_closure(g2, Partition::singletons(2)) == Partition::singletons(2));
  CHECK(profitable_pairs(g2, Partition::singletons(2)).empty());

  const Game sup = superadditive_game(std::vector<double>{1, 0, 2, 0.5, 1}, 0.3);
  MergeSelector sel(MergePolicy::lexicographic());
  std::vector<Operation> ops;
  const Partition start = Partition::singletons(5);
  const Partition end = merge_closure(sup, start, sel, kDefaultTol, &ops);
  CHECK(end == Partition::grand(5));
  REQUIRE(ops.size() == 4);
  // Lexicographic policy takes the first qualifying pair: {1}+{2} first.
  CHECK(describe(ops[0]) == "merge:[1]+[2]");
  // Replay and check that every merge strictly raises total surplus.
  Partition p = start;
  for (const Operation& op : ops) {
    const auto& m = std::get<MergeOp>(op);
    std::vector<Coalition> blocks;
    for (Coalition b : p.blocks()) {
      if (b != m.a && b != m.b) blocks.push_back(b);
    }
    blocks.push_back(m.a | m.b);
    const Partition q = canonicalize(blocks, 5);
    CHECK(total_surplus(sup, q) > total_surplus(sup, p));
    p = q;
  }
  CHECK(p == end);
}

TEST_CASE("composite step") {
  const Game g2 = fixture("g2.json");
  CHECK(composite_step(g2, Partition::singletons(2)).next ==
        Partition::singletons(2));
  CHECK(composite_step(g2, Partition::singletons(2)).ops.empty());
  CHECK(composite_step(g2, Partition::grand(2)).next == Partition::singletons(2));

  // Every block of [[1,2],[3]] is fair yet Delta = 0.1 merges everything.
  const Game g3 = fixture("g3_audit.json");
  const Partition p = part("[[1,2],[3]]", 3);
  CHECK(fairness_violation(g3, p) == 0.0);
  CHECK(merge_surplus(g3, Coalition(0b011), Coalition(0b100)) ==
        doctest::Approx(0.1));
  const StepResult r = composite_step(g3, p);
  CHECK(r.next == Partition::grand(3));
  CHECK(describe(r.ops) == "merge:[1,2]+[3]");
  // The merged coalition is not fair: player 2 ends with a negative share.
  const auto phi = shapley_exact(g3, g3.players()).phi;
  CHECK(phi[0] == doctest::Approx(0.8 + 1.0 / 15));
  CHECK(phi[1] == doctest::Approx(-0.2 + 1.0 / 15));
  CHECK(phi[2] == doctest::Approx(0.3 + 1.0 / 15));
}

TEST_CASE("atomic step") {
  const Game g2 = fixture("g2.json");
  const StepResult idle = atomic_step(g2, Partition::singletons(2));
  CHECK(idle.next == Partition::singletons(2));
  CHECK(describe(idle.ops) == "none");
  const StepResult s = atomic_step(g2, Partition::grand(2));
  CHECK(s.next == Partition::singletons(2));
  CHECK(describe(s.ops) == "split:[1,2]→[[1],[2]]");

  // A pending split takes priority over a profitable merge.
  const Game g = split_and_merge_game();
  const Partition p = part("[[1,2],[3]]", 3);
  CHECK(!profitable_pairs(g, p).empty());
  const StepResult a = atomic_step(g, p);
  CHECK(a.next == Partition::singletons(3));
  REQUIRE(a.ops.size() == 1);
  CHECK(std::holds_alternative<SplitOp>(a.ops[0]));
  // No pair of singletons is worth merging, so composite mode agrees here.
  CHECK(composite_step(g, p).next == Partition::singletons(3));
}

TEST_CASE("lyapunov and lexicographic order") {
  const Game g2 = fixture("g2.json");
  const LyapunovValue grand = lyapunov(g2, Partition::grand(2));
  CHECK(grand.neg_fairness == doctest::Approx(-0.25));
  CHECK(grand.surplus == doctest::Approx(0.5));
  const LyapunovValue singles = lyapunov(g2, Partition::singletons(2));
  CHECK(singles.neg_fairness == 0.0);
  CHECK(singles.surplus == 1.0);

  const Game r = random_game({.n = 6, .seed = 4});
  const LyapunovValue lv = lyapunov(r, Partition::singletons(6));
  double sum = 0;
  for (int i = 0; i < 6; ++i) sum += r[Mask{1} << i];
  CHECK(lv.psi() == 0.0);
  CHECK(lv.phi() == doctest::Approx(sum));

  CHECK(lex_cmp({0, 1}, {-0.25, 0.5}) == LexOrder::Greater);
  CHECK(lex_cmp({0, 0.5}, {0, 1}) == LexOrder::Less);
  CHECK(lex_cmp({-0.25, 0.5}, {-0.25, 0.5}) == LexOrder::Equal);
  CHECK(lex_cmp({0, 1}, {0, 1 + 1e-13}, 1e-12) == LexOrder::Equal);
  CHECK(to_string(LexOrder::Greater) == "greater");
}

TEST_CASE("SFMS check with witness") {
  const Game g2 = fixture("g2.json");
  CHECK(is_sfms(g2, Partition::singletons(2)).sfms);
  const SfmsVerdict bad = is_sfms(g2, Partition::grand(2));
  CHECK(!bad.sfms);
  REQUIRE(bad.unfair_player.has_value());
  CHECK(bad.unfair_player->display() == 2);

  const Game sup = superadditive_game(std::vector<double>{1, 1, 1}, 0.5);
  CHECK(is_sfms(sup, Partition::grand(3)).sfms);
  const SfmsVerdict unstable = is_sfms(sup, Partition::singletons(3));
  CHECK(!unstable.sfms);
  CHECK(unstable.profitable_pair.has_value());
}

TEST_CASE("policy and mode parsing") {
  CHECK(MergePolicy::parse("lex") == MergePolicy::lexicographic());
  CHECK(MergePolicy::parse("random:17") == MergePolicy::random(17));
  CHECK(MergePolicy::random(17).to_string() == "random:17");
  CHECK_THROWS_AS(MergePolicy::parse("fifo"), FormatError);
  CHECK(parse_step_mode("atomic") == StepMode::Atomic);
  CHECK(to_string(StepMode::Composite) == "composite");
  CHECK_THROWS_AS(parse_step_mode("both"), FormatError);
}

TEST_CASE("run verdicts") {
  const Game g2 = fixture("g2.json");
  const Trace idle = run(g2, Partition::singletons(2), {});
  CHECK(idle.steps.size() == 1);
  CHECK(idle.verdict.kind == Verdict::Kind::FixedPoint);
  CHECK(idle.verdict.t == 0);

  const Trace t = run(g2, Partition::grand(2), {});
  CHECK(t.steps.size() == 2);
  CHECK(t.verdict.kind == Verdict::Kind::FixedPoint);
  CHECK(t.verdict.t == 1);
  CHECK(t.last().partition == Partition::singletons(2));
  CHECK(t.last().psi == 0.0);
  CHECK(t.last().phi == 1.0);
  CHECK(t.verdict.to_string() == "fixed_point(t=1)");

  CHECK_THROWS_AS(run(g2, Partition::singletons(3), {}), ValidationError);
}

TEST_CASE("case-study run from a random start") {
  const Game g = case_study_game({});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Trace t = run(g, random_partition(10, rng),
                        {.mode = StepMode::Atomic});
    CHECK(t.verdict.kind != Verdict::Kind::Truncated);
    CHECK(t.last().psi <= 1e-9);
  }
}

TEST_CASE("split annihilates unfairness on every partition for n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 8; ++k) {
      const Game g = sweep_game(n, 31, k);
      for_each_partition(n, [&](const Partition& p) {
        const Partition s = split_operator(g, p);
        CHECK(fairness_violation(g, s) <= 1e-9 * n);
        const LyapunovValue before = lyapunov(g, p);
        if (before.psi() > 1e-9) {
          CHECK(lex_cmp(lyapunov(g, s), before) == LexOrder::Greater);
        } else {
          CHECK(s == p);
        }
      });
    }
  }
}

TEST_CASE("split annihilates unfairness on random partitions up to n = 12") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 7 + static_cast<int>(rng.below(6));
    const Game g = random_game({.n = n, .seed = rng.next()});
    const Partition p = random_partition(n, rng);
    CHECK(fairness_violation(g, split_operator(g, p)) <= 1e-9 * n);
  }
}

TEST_CASE("SFMS partitions are fixed in both modes") {
  for (int k = 0; k < 20; ++k) {
    const Game g = sweep_game(5, 8, k);
    for_each_partition(5, [&](const Partition& p) {
      const bool sfms = is_sfms(g, p).sfms;
      if (sfms) {
        CHECK(composite_step(g, p).next == p);
      }
      // The one-operation map is fixed exactly on SFMS partitions.
      CHECK((atomic_step(g, p).next == p) == sfms);
    });
  }
}

TEST_CASE("composite fixed point that is not SFMS") {
  // Split of the grand coalition gives [[1,2],[3]]; merging back is worth 1.
  const Game g = fixture("fixed_not_sfms.json");
  const Partition grand = Partition::grand(3);
  CHECK(!is_sfms(g, grand).sfms);
  CHECK(composite_step(g, grand).next == grand);
  CHECK(atomic_step(g, grand).next != grand);
}

TEST_CASE("lexicographic runs terminate within Bell(n)") {
  for (int n = 2; n <= 7; ++n) {
    for (int k = 0; k < 20; ++k) {
      const Game g = sweep_game(n, 55, k);
      Rng rng(mix_seed(56, k));
      for (StepMode mode : {StepMode::Composite, StepMode::Atomic}) {
        const Trace t = run(g, random_partition(n, rng), {.mode = mode});
        CHECK(t.verdict.kind != Verdict::Kind::Truncated);
        CHECK(t.steps.size() <= bell_number(n));
      }
    }
  }
}

TEST_CASE("random policy is replayable") {
  const Game g = sweep_game(7, 3, 0);
  const DynamicsConfig cfg{.policy = MergePolicy::random(12)};
  const Trace a = run(g, Partition::singletons(7), cfg);
  const Trace b = run(g, Partition::singletons(7), cfg);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].partition == b.steps[i].partition);
    CHECK(describe(a.steps[i].ops) == describe(b.steps[i].ops));
  }
}

TEST_CASE("detected cycles preserve psi and phi") {
  for (int k = 0; k < 200; ++k) {
    const Game g = sweep_game(6, 71, k);
    Rng rng(mix_seed(72, k));
    const Trace t = run(g, random_partition(6, rng), {});
    if (t.verdict.kind != Verdict::Kind::Cycle) continue;
    double lo_psi = 1e300, hi_psi = -1e300, lo_phi = 1e300, hi_phi = -1e300;
    for (std::size_t i = t.verdict.t; i < t.steps.size(); ++i) {
      lo_psi = std::min(lo_psi, t.steps[i].psi);
      hi_psi = std::max(hi_psi, t.steps[i].psi);
      lo_phi = std::min(lo_phi, t.steps[i].phi);
      hi_phi = std::max(hi_phi, t.steps[i].phi);
    }
    CHECK(hi_psi - lo_psi <= 1e-9);
    CHECK(hi_phi - lo_phi <= 1e-9);
  }
}

TEST_CASE("decisions are invariant under positive scaling") {
  const Game zero(5, std::vector<double>(32, 0.0));
  for (int k = 0; k < 20; ++k) {
    const Game g = sweep_game(5, 19, k);
    for (double alpha : {0.5, 2.0, 10.0}) {
      const Game h = combine(g, alpha, zero, 0.0);
      for (Mask s = 1; s < 32; ++s) {
        CHECK(split_rule(g, Coalition(s)) == split_rule(h, Coalition(s)));
      }
      for_each_partition(5, [&](const Partition& p) {
        CHECK(profitable_pairs(g, p) == profitable_pairs(h, p));
        CHECK(is_sfms(g, p).sfms == is_sfms(h, p).sfms);
      });
    }
  }
}

TEST_CASE("Bell numbers") {
  for (int n = 0; n <= 15; ++n) {
    CHECK(bell_number(n) == splitmerge::testing::stirling_bell(n));
  }
}
