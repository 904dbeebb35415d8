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

#include "splitmerge/shapley.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "splitmerge/errors.hpp"
#include "splitmerge/rng.hpp"

namespace splitmerge {
namespace {

void check_coalition(const Game& g, Coalition s) {
  if (s.empty()) throw ValidationError("Shapley value of the empty coalition");
  if (!s.subset_of(g.players())) {
    throw DomainError("coalition " + s.to_string() + " outside player set of " +
                      std::to_string(g.n()) + " players");
  }
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) {
    r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  }
  return r;
}

}  // namespace

double ShapleyVector::at(PlayerId p) const {
  if (!coalition.contains(p)) {
    throw DomainError("player " + std::to_string(p.display()) +
                      " not in coalition " + coalition.to_string());
  }
  const Mask below = coalition.mask() & ((Mask{1} << p.index) - 1);
  return phi[static_cast<std::size_t>(std::popcount(below))];
}

double ShapleyVector::sum() const {
  return std::accumulate(phi.begin(), phi.end(), 0.0);
}

ShapleyVector shapley_exact(const Game& g, Coalition s) {
  check_coalition(g, s);
  const int size = s.size();
  if (size > kExactShapleyCap) {
    throw CapError("exact Shapley limited to coalitions of " +
                   std::to_string(kExactShapleyCap) + " players, got " +
                   std::to_string(size));
  }
  ShapleyVector out{s, std::vector<double>(static_cast<std::size_t>(size))};
  if (size == 1) {
    out.phi[0] = g[s.mask()];
    return out;
  }

  // 1 / w(t, s) as exact integers.
  std::array<double, kExactShapleyCap> inv_weight{};
  for (int t = 0; t < size; ++t) {
    inv_weight[static_cast<std::size_t>(t)] =
        static_cast<double>(static_cast<std::uint64_t>(size) * binomial(size - 1, t));
  }

  std::array<double, kExactShapleyCap> by_size{};
  std::size_t k = 0;
  for (const PlayerId i : s.members()) {
    const Mask bit = Mask{1} << i.index;
    const Mask rest = s.mask() & ~bit;
    by_size.fill(0.0);
    // Sub-masks of rest, including the empty set.
    for (Mask t = rest;; t = (t - 1) & rest) {
      by_size[static_cast<std::size_t>(std::popcount(t))] += g[t | bit] - g[t];
      if (t == 0) break;
    }
    double phi = 0.0;
    for (int t = 0; t < size; ++t) {
      phi += by_size[static_cast<std::size_t>(t)] / inv_weight[static_cast<std::size_t>(t)];
    }
    out.phi[k++] = phi;
  }
  return out;
}

ShapleyVector shapley_permutation_oracle(const Game& g, Coalition s) {
  check_coalition(g, s);
  const int size = s.size();
  if (size > kPermutationOracleCap) {
    throw CapError("permutation oracle limited to coalitions of " +
                   std::to_string(kPermutationOracleCap) + " players, got " +
                   std::to_string(size));
  }
  // Positions within the coalition; order[j] is the j-th player to join.
  std::vector<int> order(static_cast<std::size_t>(size));
  std::iota(order.begin(), order.end(), 0);
  const std::vector<PlayerId> members = s.members();
  std::vector<long double> total(static_cast<std::size_t>(size), 0.0L);
  long double count = 0.0L;
  do {
    Mask joined = 0;
    double before = 0.0;
    for (int pos : order) {
      joined |= Mask{1} << members[static_cast<std::size_t>(pos)].index;
      const double after = g[joined];
      total[static_cast<std::size_t>(pos)] += static_cast<long double>(after) - before;
      before = after;
    }
    count += 1.0L;
  } while (std::next_permutation(order.begin(), order.end()));

  ShapleyVector out{s, std::vector<double>(static_cast<std::size_t>(size))};
  for (std::size_t k = 0; k < out.phi.size(); ++k) {
    out.phi[k] = static_cast<double>(total[k] / count);
  }
  return out;
}

SampledShapley shapley_sampled(const Game& g, Coalition s,
                               std::int64_t samples, std::uint64_t seed) {
  check_coalition(g, s);
  if (samples < 1) throw ValidationError("sample count must be at least 1");
  const auto size = static_cast<std::size_t>(s.size());
  SampledShapley out{{s, std::vector<double>(size, 0.0)},
                     std::vector<double>(size, 0.0)};
  if (size == 1) {
    out.estimate.phi[0] = g[s.mask()];
    return out;
  }

  const std::vector<PlayerId> members = s.members();
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Welford running mean and sum of squared deviations.
  std::vector<double> mean(size, 0.0), m2(size, 0.0);
  Rng rng(seed);
  for (std::int64_t draw = 1; draw <= samples; ++draw) {
    rng.shuffle(std::span<std::size_t>(order));
    Mask joined = 0;
    double before = 0.0;
    for (std::size_t pos : order) {
      joined |= Mask{1} << members[pos].index;
      const double after = g[joined];
      const double x = after - before;
      before = after;
      const double delta = x - mean[pos];
      mean[pos] += delta / static_cast<double>(draw);
      m2[pos] += delta * (x - mean[pos]);
    }
  }
  out.estimate.phi = mean;
  for (std::size_t k = 0; k < size; ++k) {
    out.std_error[k] =
        samples > 1
            ? std::sqrt(m2[k] / static_cast<double>(samples - 1) /
                        static_cast<double>(samples))
            : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

SignSplit sign_split(const ShapleyVector& sv, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("sign tolerance must be >= 0");
  SignSplit out;
  const std::vector<PlayerId> members = sv.coalition.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (sv.phi[k] >= -tol) {
      out.positive = out.positive.with(members[k].index);
    } else {
      out.negative = out.negative.with(members[k].index);
    }
  }
  return out;
}

double negative_mass(const ShapleyVector& sv) {
  double mass = 0.0;
  for (double x : sv.phi) mass += std::max(0.0, -x);
  return mass;
}

}  // namespace splitmerge
