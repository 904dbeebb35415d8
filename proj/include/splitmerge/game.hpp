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

#ifndef SPLITMERGE_GAME_HPP
#define SPLITMERGE_GAME_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splitmerge/coalition.hpp"

namespace splitmerge {

inline constexpr int kDefaultMaxPlayers = 20;

/// Transferable-utility game with a dense characteristic-function table.
///
/// values()[mask] is v(S) for the coalition with that mask; values()[0] is
/// always exactly 0 and every entry is finite. The restriction of v to a
/// coalition S needs no separate storage since v|_S(T) = v(T).
class Game {
 public:
  /// Throws ValidationError if the table length is not 2^n, v(empty) != 0,
  /// an entry is non-finite, or n is outside [1, max_players].
  Game(int n, std::vector<double> values, std::string name = {},
       int max_players = kDefaultMaxPlayers);

  int n() const { return n_; }
  Coalition players() const { return Coalition::full(n_); }
  std::span<const double> values() const { return values_; }
  const std::string& name() const { return name_; }

  /// v(S). Throws DomainError for a mask outside the player set.
  double value(Coalition s) const;

  // Unchecked lookup for hot loops.
  double operator[](Mask mask) const { return values_[mask]; }

  // 64-bit FNV-1a over n and the bit patterns of the table, as 16 hex digits.
  std::string fingerprint() const;

  friend bool operator==(const Game&, const Game&) = default;

 private:
  int n_;
  std::vector<double> values_;
  std::string name_;
};

/// Parameters of the productive-core game used in the 10-player case study.
///
/// For a coalition S with standalone sum base(S):
///   v(S) = base(S)
///        + inside_surplus_rate * |S|        if S is inside C and |S| >= 2
///        + synergy_bonus                    if C is inside S
///        - mixed_penalty * |S \ C|          if S meets C but is not inside C
struct CaseStudyParams {
  int n = 10;
  Coalition productive_set = Coalition(0b1111);  // players 1..4
  double standalone_in = 2.0;
  double standalone_out = 1.0;
  double inside_surplus_rate = 0.5;
  double synergy_bonus = 1.0;
  double mixed_penalty = 3.0;
};

/// Throws ValidationError for an empty or out-of-range productive set or a
/// negative standalone value.
Game case_study_game(const CaseStudyParams& p);

struct RandomGameParams {
  int n = 5;
  std::uint64_t seed = 0;
  double singleton_lo = -0.5;
  double singleton_hi = 1.0;
  double coalition_noise = 1.0;
  bool enforce_a1 = true;
};

/// Random game: singletons uniform in [singleton_lo, singleton_hi], drawn for
/// players 1..n in order; then for every mask with at least two members, in
/// increasing mask order,
///   v(S) = sum of singletons + coalition_noise * (|S| - 1) * U(-1, 1).
/// With enforce_a1 the result is passed through shift_to_nonneg_singletons.
Game random_game(const RandomGameParams& p);

/// v(S) = sum of the given singleton values.
Game additive_game(std::span<const double> singletons);

/// v(S) = sum of singletons + bonus * (|S| - 1); strictly superadditive for
/// bonus > 0.
Game superadditive_game(std::span<const double> singletons, double bonus);

/// Per-player minimal shift c_i = max(0, -v({i})).
std::vector<double> singleton_shift(const Game& g);

/// g'(S) = g(S) + sum_{i in S} c_i with c = singleton_shift(g).
Game shift_to_nonneg_singletons(const Game& g);

/// Players with v({i}) < 0; empty iff the game has nonnegative singletons.
std::vector<PlayerId> check_assumption1(const Game& g);

/// Pointwise alpha * v1 + beta * v2 over the same player set.
Game combine(const Game& a, double alpha, const Game& b, double beta);

}  // namespace splitmerge

#endif  // SPLITMERGE_GAME_HPP
