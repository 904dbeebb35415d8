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

#include "splitmerge/coalition.hpp"

#include <algorithm>
#include <sstream>

#include "splitmerge/errors.hpp"
#include "splitmerge/rng.hpp"

namespace splitmerge {

std::vector<PlayerId> Coalition::members() const {
  std::vector<PlayerId> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1) {
    out.push_back(PlayerId{std::countr_zero(m)});
  }
  return out;
}

std::string Coalition::to_string() const {
  std::string out = "[";
  bool first = true;
  for (Mask m = mask_; m != 0; m &= m - 1) {
    if (!first) out += ',';
    out += std::to_string(std::countr_zero(m) + 1);
    first = false;
  }
  out += ']';
  return out;
}

Coalition coalition_of(std::span<const PlayerId> players, int n) {
  Mask mask = 0;
  for (const PlayerId p : players) {
    if (p.index < 0 || p.index >= n) {
      throw DomainError("player " + std::to_string(p.display()) +
                        " outside player set of size " + std::to_string(n));
    }
    mask |= Mask{1} << p.index;
  }
  return Coalition(mask);
}

Coalition coalition_of(std::initializer_list<int> indices, int n) {
  std::vector<PlayerId> players;
  for (int i : indices) players.push_back(PlayerId{i});
  return coalition_of(players, n);
}

std::size_t Partition::block_of(int index) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].contains(index)) return b;
  }
  throw DomainError("player " + std::to_string(index + 1) +
                    " not covered by partition");
}

Partition Partition::singletons(int n) {
  std::vector<Coalition> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back(Coalition::singleton(i));
  return canonical_unchecked(std::move(blocks), n);
}

Partition Partition::grand(int n) {
  return canonical_unchecked({Coalition::full(n)}, n);
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b > 0) out += ',';
    out += blocks_[b].to_string();
  }
  out += ']';
  return out;
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  const std::size_t k = std::min(a.blocks_.size(), b.blocks_.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (auto c = a.blocks_[i].mask() <=> b.blocks_[i].mask(); c != 0) {
      return c;
    }
  }
  return a.blocks_.size() <=> b.blocks_.size();
}

Partition canonical_unchecked(std::vector<Coalition> blocks, int n) {
  std::sort(blocks.begin(), blocks.end(), [](Coalition x, Coalition y) {
    return x.min_member() < y.min_member();
  });
  Partition p;
  p.n_ = n;
  p.blocks_ = std::move(blocks);
  return p;
}

Partition canonicalize(std::vector<Coalition> blocks, int n) {
  if (n < 1 || n > kMaxMaskPlayers) {
    throw ValidationError("partition player count " + std::to_string(n) +
                          " out of range");
  }
  const Coalition full = Coalition::full(n);
  Coalition seen;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Coalition b = blocks[i];
    if (b.empty()) {
      throw ValidationError("partition block " + std::to_string(i) +
                            " is empty");
    }
    if (!b.subset_of(full)) {
      throw ValidationError("partition block " + b.to_string() +
                            " has players outside 1.." + std::to_string(n));
    }
    if (b.intersects(seen)) {
      for (std::size_t j = 0; j < i; ++j) {
        if (blocks[j].intersects(b)) {
          throw ValidationError("partition blocks " + blocks[j].to_string() +
                                " and " + b.to_string() + " overlap");
        }
      }
    }
    seen = seen | b;
  }
  if (seen != full) {
    throw ValidationError("partition does not cover players " +
                          (full - seen).to_string());
  }
  return canonical_unchecked(std::move(blocks), n);
}

Partition random_partition(int n, Rng& rng) {
  const auto k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
  std::vector<Mask> labels(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < n; ++i) {
    labels[rng.below(static_cast<std::uint64_t>(k))] |= Mask{1} << i;
  }
  std::vector<Coalition> blocks;
  for (Mask m : labels) {
    if (m != 0) blocks.emplace_back(m);
  }
  return canonical_unchecked(std::move(blocks), n);
}

std::size_t PartitionHash::operator()(const Partition& p) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const Coalition c : p.blocks()) {
    h ^= c.mask();
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace splitmerge
