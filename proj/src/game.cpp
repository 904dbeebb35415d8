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

#include "splitmerge/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <utility>

#include "splitmerge/errors.hpp"
#include "splitmerge/rng.hpp"

namespace splitmerge {

Game::Game(int n, std::vector<double> values, std::string name,
           int max_players)
    : n_(n), values_(std::move(values)), name_(std::move(name)) {
  if (n < 1 || n > std::min(max_players, kMaxMaskPlayers)) {
    throw ValidationError("player count " + std::to_string(n) +
                          " outside [1, " +
                          std::to_string(std::min(max_players, kMaxMaskPlayers)) +
                          "]");
  }
  const std::size_t expected = std::size_t{1} << n;
  if (values_.size() != expected) {
    throw ValidationError("value table has " + std::to_string(values_.size()) +
                          " entries, expected 2^" + std::to_string(n) + " = " +
                          std::to_string(expected));
  }
  if (values_[0] != 0.0) {
    throw ValidationError("v(empty set) must be 0");
  }
  for (std::size_t m = 0; m < values_.size(); ++m) {
    if (!std::isfinite(values_[m])) {
      throw ValidationError("non-finite value for coalition " +
                            Coalition(static_cast<Mask>(m)).to_string());
    }
  }
  values_[0] = 0.0;  // normalizes -0.0
}

double Game::value(Coalition s) const {
  if (!s.subset_of(players())) {
    throw DomainError("coalition " + s.to_string() + " outside player set of " +
                      std::to_string(n_) + " players");
  }
  return values_[s.mask()];
}

std::string Game::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  feed(static_cast<std::uint64_t>(n_));
  for (double x : values_) feed(std::bit_cast<std::uint64_t>(x));
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

Game case_study_game(const CaseStudyParams& p) {
  if (p.n < 1 || p.n > kDefaultMaxPlayers) {
    throw ValidationError("case study player count out of range");
  }
  const Coalition core = p.productive_set;
  if (core.empty() || !core.subset_of(Coalition::full(p.n))) {
    throw ValidationError("productive set must be a nonempty subset of 1.." +
                          std::to_string(p.n));
  }
  if (!(p.standalone_in >= 0.0) || !(p.standalone_out >= 0.0)) {
    throw ValidationError("standalone values must be nonnegative");
  }
  const std::size_t size = std::size_t{1} << p.n;
  std::vector<double> v(size, 0.0);
  for (std::size_t m = 1; m < size; ++m) {
    const Coalition s(static_cast<Mask>(m));
    const int inside = (s & core).size();
    const int outside = (s - core).size();
    double value = p.standalone_in * inside + p.standalone_out * outside;
    if (outside == 0 && s.size() >= 2) value += p.inside_surplus_rate * s.size();
    if (core.subset_of(s)) value += p.synergy_bonus;
    if (inside > 0 && outside > 0) value -= p.mixed_penalty * outside;
    v[m] = value;
  }
  return Game(p.n, std::move(v), "case-study");
}

Game random_game(const RandomGameParams& p) {
  if (p.n < 1 || p.n > kDefaultMaxPlayers) {
    throw ValidationError("random game player count out of range");
  }
  if (!(p.singleton_lo <= p.singleton_hi) || !(p.coalition_noise >= 0.0)) {
    throw ValidationError("invalid random game parameters");
  }
  Rng rng(p.seed);
  std::vector<double> singles(static_cast<std::size_t>(p.n));
  for (double& x : singles) x = rng.uniform(p.singleton_lo, p.singleton_hi);

  const std::size_t size = std::size_t{1} << p.n;
  std::vector<double> v(size, 0.0);
  for (std::size_t m = 1; m < size; ++m) {
    const Coalition s(static_cast<Mask>(m));
    double base = 0.0;
    for (PlayerId i : s.members()) base += singles[static_cast<std::size_t>(i.index)];
    if (s.size() >= 2) {
      base += p.coalition_noise * (s.size() - 1) * rng.uniform(-1.0, 1.0);
    }
    v[m] = base;
  }
  Game g(p.n, std::move(v), "random");
  return p.enforce_a1 ? shift_to_nonneg_singletons(g) : g;
}

Game additive_game(std::span<const double> singletons) {
  return superadditive_game(singletons, 0.0);
}

Game superadditive_game(std::span<const double> singletons, double bonus) {
  const int n = static_cast<int>(singletons.size());
  if (n < 1 || n > kDefaultMaxPlayers) {
    throw ValidationError("player count out of range");
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> v(size, 0.0);
  for (std::size_t m = 1; m < size; ++m) {
    const Coalition s(static_cast<Mask>(m));
    double total = bonus * (s.size() - 1);
    for (PlayerId i : s.members()) total += singletons[static_cast<std::size_t>(i.index)];
    v[m] = total;
  }
  return Game(n, std::move(v), bonus == 0.0 ? "additive" : "superadditive");
}

std::vector<double> singleton_shift(const Game& g) {
  std::vector<double> c(static_cast<std::size_t>(g.n()));
  for (int i = 0; i < g.n(); ++i) {
    c[static_cast<std::size_t>(i)] =
        std::max(0.0, -g[Coalition::singleton(i).mask()]);
  }
  return c;
}

Game shift_to_nonneg_singletons(const Game& g) {
  const std::vector<double> c = singleton_shift(g);
  if (std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; })) {
    return g;
  }
  std::vector<double> v(g.values().begin(), g.values().end());
  for (std::size_t m = 1; m < v.size(); ++m) {
    double add = 0.0;
    for (PlayerId i : Coalition(static_cast<Mask>(m)).members()) {
      add += c[static_cast<std::size_t>(i.index)];
    }
    v[m] += add;
  }
  return Game(g.n(), std::move(v), g.name());
}

std::vector<PlayerId> check_assumption1(const Game& g) {
  std::vector<PlayerId> bad;
  for (int i = 0; i < g.n(); ++i) {
    if (g[Coalition::singleton(i).mask()] < 0.0) bad.push_back(PlayerId{i});
  }
  return bad;
}

Game combine(const Game& a, double alpha, const Game& b, double beta) {
  if (a.n() != b.n()) throw ValidationError("games differ in player count");
  std::vector<double> v(a.values().size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    v[m] = alpha * a.values()[m] + beta * b.values()[m];
  }
  return Game(a.n(), std::move(v));
}

}  // namespace splitmerge
