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

#ifndef SPLITMERGE_COALITION_HPP
#define SPLITMERGE_COALITION_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace splitmerge {

using Mask = std::uint32_t;

// Hard limit imposed by the mask width; games are further capped at runtime.
inline constexpr int kMaxMaskPlayers = 30;

/// Player index. Stored 0-based; printed 1-based.
struct PlayerId {
  int index = 0;

  int display() const { return index + 1; }
  friend auto operator<=>(PlayerId, PlayerId) = default;
};

/// Subset of the player set encoded as a bitmask (bit b <=> player b).
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(Mask mask) : mask_(mask) {}

  static constexpr Coalition singleton(int index) {
    return Coalition(Mask{1} << index);
  }
  // {0, ..., n-1}
  static constexpr Coalition full(int n) {
    return Coalition(n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1);
  }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int index) const { return (mask_ >> index) & 1U; }
  constexpr bool contains(PlayerId p) const { return contains(p.index); }
  constexpr bool subset_of(Coalition other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool intersects(Coalition other) const {
    return (mask_ & other.mask_) != 0;
  }
  // Smallest member index; -1 for the empty set.
  constexpr int min_member() const {
    return mask_ == 0 ? -1 : std::countr_zero(mask_);
  }

  std::vector<PlayerId> members() const;

  constexpr Coalition operator|(Coalition o) const {
    return Coalition(mask_ | o.mask_);
  }
  constexpr Coalition operator&(Coalition o) const {
    return Coalition(mask_ & o.mask_);
  }
  // Set difference.
  constexpr Coalition operator-(Coalition o) const {
    return Coalition(mask_ & ~o.mask_);
  }
  constexpr Coalition with(int index) const {
    return Coalition(mask_ | (Mask{1} << index));
  }
  constexpr Coalition without(int index) const {
    return Coalition(mask_ & ~(Mask{1} << index));
  }

  friend constexpr bool operator==(Coalition, Coalition) = default;

  // "[1,3,4]" using 1-based ids.
  std::string to_string() const;

 private:
  Mask mask_ = 0;
};

/// Builds a coalition from 0-based indices; duplicates collapse. Throws
/// DomainError for an index outside [0, n).
Coalition coalition_of(std::span<const PlayerId> players, int n);
Coalition coalition_of(std::initializer_list<int> indices, int n);

/// Canonical set partition of {0, ..., n-1}.
///
/// Blocks are pairwise disjoint, nonempty, cover the player set and are
/// sorted by their smallest member, so two partitions with the same blocks
/// compare equal member-wise.
class Partition {
 public:
  Partition() = default;

  int n() const { return n_; }
  std::span<const Coalition> blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  const Coalition& operator[](std::size_t i) const { return blocks_[i]; }

  // Index of the block containing the player.
  std::size_t block_of(int index) const;

  static Partition singletons(int n);
  static Partition grand(int n);

  // "[[1,2],[3]]" using 1-based ids.
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a,
                                          const Partition& b);

 private:
  friend Partition canonicalize(std::vector<Coalition> blocks, int n);
  friend Partition canonical_unchecked(std::vector<Coalition> blocks, int n);

  int n_ = 0;
  std::vector<Coalition> blocks_;
};

/// Validates and canonicalizes a block list. Throws ValidationError naming
/// the offending blocks on overlap, empty block, or incomplete cover.
Partition canonicalize(std::vector<Coalition> blocks, int n);

/// Sorts blocks into canonical order without validating. For callers that
/// already preserve the partition property (split/merge).
Partition canonical_unchecked(std::vector<Coalition> blocks, int n);

/// Random partition: k drawn uniformly from [1, n], then every player gets
/// a label uniform in [0, k); empty labels vanish.
class Rng;
Partition random_partition(int n, Rng& rng);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const;
};

}  // namespace splitmerge

#endif  // SPLITMERGE_COALITION_HPP
