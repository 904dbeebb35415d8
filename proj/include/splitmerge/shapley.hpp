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

#ifndef SPLITMERGE_SHAPLEY_HPP
#define SPLITMERGE_SHAPLEY_HPP

#include <cstdint>
#include <vector>

#include "splitmerge/coalition.hpp"
#include "splitmerge/game.hpp"

namespace splitmerge {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kExactShapleyCap = 22;
inline constexpr int kPermutationOracleCap = 8;

/// Shapley values of the members of one coalition in the restricted game
/// v|_S. phi[k] belongs to the k-th smallest member of the coalition.
struct ShapleyVector {
  Coalition coalition;
  std::vector<double> phi;

  // Throws DomainError if the player is not a member.
  double at(PlayerId p) const;
  double sum() const;
};

struct SampledShapley {
  ShapleyVector estimate;
  // Standard error of each estimate (sample std / sqrt(samples)); NaN when a
  // single sample leaves the variance undefined.
  std::vector<double> std_error;
};

/// P_+(S) and P_-(S): members with phi >= -tol and the rest.
struct SignSplit {
  Coalition positive;
  Coalition negative;
};

/// Exact Shapley values by subset enumeration over S \ {i}.
///
/// Marginal contributions are summed per subset size t and scaled once by
/// w(t, s) = t!(s-t-1)!/s! = 1 / (s * C(s-1, t)), with the binomial taken as
/// an exact 64-bit integer. Cost is O(s * 2^(s-1)).
///
/// Throws ValidationError for an empty coalition, CapError above
/// kExactShapleyCap members and DomainError for players outside the game.
ShapleyVector shapley_exact(const Game& g, Coalition s);

/// Average marginal contribution over all |S|! join orders. A cross-check
/// for shapley_exact; throws CapError above kPermutationOracleCap members.
ShapleyVector shapley_permutation_oracle(const Game& g, Coalition s);

/// Monte Carlo estimate from `samples` uniformly random join orders drawn
/// from Rng(seed). Throws ValidationError for an empty coalition or
/// samples < 1.
SampledShapley shapley_sampled(const Game& g, Coalition s,
                               std::int64_t samples, std::uint64_t seed);

SignSplit sign_split(const ShapleyVector& sv, double tol = kDefaultTol);

/// Sum over members of max(0, -phi_j).
double negative_mass(const ShapleyVector& sv);

}  // namespace splitmerge

#endif  // SPLITMERGE_SHAPLEY_HPP
