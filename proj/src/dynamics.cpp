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

#include "splitmerge/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "splitmerge/errors.hpp"

namespace splitmerge {

LexOrder lex_cmp(const LyapunovValue& u, const LyapunovValue& v, double eps) {
  if (std::abs(u.neg_fairness - v.neg_fairness) > eps) {
    return u.neg_fairness > v.neg_fairness ? LexOrder::Greater : LexOrder::Less;
  }
  if (std::abs(u.surplus - v.surplus) > eps) {
    return u.surplus > v.surplus ? LexOrder::Greater : LexOrder::Less;
  }
  return LexOrder::Equal;
}

std::string_view to_string(LexOrder order) {
  switch (order) {
    case LexOrder::Less: return "less";
    case LexOrder::Equal: return "equal";
    case LexOrder::Greater: return "greater";
  }
  return "?";
}

std::string MergePolicy::to_string() const {
  return kind == Kind::Lexicographic ? "lex" : "random:" + std::to_string(seed);
}

MergePolicy MergePolicy::parse(std::string_view text) {
  if (text == "lex") return lexicographic();
  constexpr std::string_view kRandom = "random:";
  if (text.starts_with(kRandom)) {
    std::uint64_t seed = 0;
    const char* first = text.data() + kRandom.size();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, seed);
    if (ec == std::errc{} && ptr == last && first != last) return random(seed);
  }
  throw FormatError("merge policy must be 'lex' or 'random:<seed>', got '" +
                    std::string(text) + "'");
}

std::size_t MergeSelector::choose(std::size_t candidates) {
  if (policy_.kind == MergePolicy::Kind::Lexicographic || candidates <= 1) {
    return 0;
  }
  return static_cast<std::size_t>(rng_.below(candidates));
}

std::string_view to_string(StepMode mode) {
  return mode == StepMode::Composite ? "composite" : "atomic";
}

StepMode parse_step_mode(std::string_view text) {
  if (text == "composite") return StepMode::Composite;
  if (text == "atomic") return StepMode::Atomic;
  throw FormatError("step mode must be 'composite' or 'atomic', got '" +
                    std::string(text) + "'");
}

std::string describe(const Operation& op) {
  if (const auto* s = std::get_if<SplitOp>(&op)) {
    std::string out = "split:" + s->block.to_string() + "→[";
    for (std::size_t i = 0; i < s->parts.size(); ++i) {
      if (i > 0) out += ',';
      out += s->parts[i].to_string();
    }
    return out + "]";
  }
  const auto& m = std::get<MergeOp>(op);
  return "merge:" + m.a.to_string() + "+" + m.b.to_string();
}

std::string describe(std::span<const Operation> ops) {
  if (ops.empty()) return "none";
  std::string out;
  for (const Operation& op : ops) {
    if (!out.empty()) out += ';';
    out += describe(op);
  }
  return out;
}

std::vector<Coalition> split_rule(const Game& g, Coalition s, double tol) {
  const SignSplit signs = sign_split(shapley_exact(g, s), tol);
  if (signs.negative.empty()) return {s};

  const Coalition residual = signs.positive;
  bool keep_residual = !residual.empty();
  if (keep_residual) {
    const double theta = negative_mass(shapley_exact(g, residual));
    keep_residual = !(theta > tol * residual.size());
  }

  std::vector<Coalition> parts;
  if (keep_residual) {
    parts.push_back(residual);
    for (PlayerId i : signs.negative.members()) {
      parts.push_back(Coalition::singleton(i.index));
    }
  } else {
    for (PlayerId i : s.members()) parts.push_back(Coalition::singleton(i.index));
  }
  std::sort(parts.begin(), parts.end(), [](Coalition a, Coalition b) {
    return a.min_member() < b.min_member();
  });
  return parts;
}

Partition split_operator(const Game& g, const Partition& p, double tol,
                         std::vector<Operation>* ops) {
  std::vector<Coalition> blocks;
  blocks.reserve(static_cast<std::size_t>(p.n()));
  for (const Coalition s : p.blocks()) {
    std::vector<Coalition> parts = split_rule(g, s, tol);
    if (ops != nullptr && parts.size() > 1) ops->push_back(SplitOp{s, parts});
    blocks.insert(blocks.end(), parts.begin(), parts.end());
  }
  return canonical_unchecked(std::move(blocks), p.n());
}

double merge_surplus(const Game& g, Coalition a, Coalition b) {
  if (a.empty() || b.empty()) {
    throw ValidationError("merge surplus needs nonempty coalitions");
  }
  if (a.intersects(b)) {
    throw ValidationError("merge surplus of overlapping coalitions " +
                          a.to_string() + " and " + b.to_string());
  }
  return g.value(a | b) - g.value(a) - g.value(b);
}

std::vector<std::pair<std::size_t, std::size_t>> profitable_pairs(
    const Game& g, const Partition& p, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto blocks = p.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      const double delta = g[(blocks[i] | blocks[j]).mask()] -
                           g[blocks[i].mask()] - g[blocks[j].mask()];
      if (delta > tol) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

// Merges one profitable pair if any; returns false when none qualifies.
bool merge_once(const Game& g, Partition& p, MergeSelector& selector,
                double tol, std::vector<Operation>* ops) {
  const auto pairs = profitable_pairs(g, p, tol);
  if (pairs.empty()) return false;
  const auto [i, j] = pairs[selector.choose(pairs.size())];
  if (ops != nullptr) ops->push_back(MergeOp{p[i], p[j]});
  std::vector<Coalition> blocks(p.blocks().begin(), p.blocks().end());
  blocks[i] = blocks[i] | blocks[j];
  blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
  p = canonical_unchecked(std::move(blocks), p.n());
  return true;
}

}  // namespace

Partition merge_closure(const Game& g, const Partition& p,
                        MergeSelector& selector, double tol,
                        std::vector<Operation>* ops) {
  Partition current = p;
  while (merge_once(g, current, selector, tol, ops)) {
  }
  return current;
}

Partition merge_closure(const Game& g, const Partition& p, MergePolicy policy,
                        double tol) {
  MergeSelector selector(policy);
  return merge_closure(g, p, selector, tol);
}

StepResult composite_step(const Game& g, const Partition& p,
                          MergeSelector& selector, double tol) {
  StepResult out;
  const Partition split = split_operator(g, p, tol, &out.ops);
  out.next = merge_closure(g, split, selector, tol, &out.ops);
  return out;
}

StepResult composite_step(const Game& g, const Partition& p,
                          MergePolicy policy, double tol) {
  MergeSelector selector(policy);
  return composite_step(g, p, selector, tol);
}

StepResult atomic_step(const Game& g, const Partition& p,
                       MergeSelector& selector, double tol) {
  StepResult out{p, {}};
  for (std::size_t b = 0; b < p.size(); ++b) {
    std::vector<Coalition> parts = split_rule(g, p[b], tol);
    if (parts.size() <= 1) continue;
    std::vector<Coalition> blocks;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k != b) blocks.push_back(p[k]);
    }
    blocks.insert(blocks.end(), parts.begin(), parts.end());
    out.ops.push_back(SplitOp{p[b], std::move(parts)});
    out.next = canonical_unchecked(std::move(blocks), p.n());
    return out;
  }
  merge_once(g, out.next, selector, tol, &out.ops);
  return out;
}

StepResult atomic_step(const Game& g, const Partition& p, MergePolicy policy,
                       double tol) {
  MergeSelector selector(policy);
  return atomic_step(g, p, selector, tol);
}

StepResult step(const Game& g, const Partition& p, StepMode mode,
                MergeSelector& selector, double tol) {
  return mode == StepMode::Composite ? composite_step(g, p, selector, tol)
                                     : atomic_step(g, p, selector, tol);
}

double fairness_violation(const Game& g, const Partition& p) {
  double psi = 0.0;
  for (const Coalition s : p.blocks()) psi += negative_mass(shapley_exact(g, s));
  return psi;
}

double total_surplus(const Game& g, const Partition& p) {
  double phi = 0.0;
  for (const Coalition s : p.blocks()) phi += g[s.mask()];
  return phi;
}

LyapunovValue lyapunov(const Game& g, const Partition& p) {
  return {-fairness_violation(g, p), total_surplus(g, p)};
}

SfmsVerdict is_sfms(const Game& g, const Partition& p, double tol) {
  SfmsVerdict out;
  for (const Coalition s : p.blocks()) {
    const ShapleyVector sv = shapley_exact(g, s);
    const SignSplit signs = sign_split(sv, tol);
    if (!signs.negative.empty()) {
      out.unfair_player = PlayerId{signs.negative.min_member()};
      out.unfair_block = s;
      return out;
    }
  }
  const auto pairs = profitable_pairs(g, p, tol);
  if (!pairs.empty()) {
    out.profitable_pair = {p[pairs.front().first], p[pairs.front().second]};
    return out;
  }
  out.sfms = true;
  return out;
}

std::uint64_t bell_number(int n) {
  if (n < 0) return 0;
  if (n > 25) return std::numeric_limits<std::uint64_t>::max();
  // Bell triangle: each row starts with the last entry of the previous row.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

std::string Verdict::to_string() const {
  switch (kind) {
    case Kind::FixedPoint: return "fixed_point(t=" + std::to_string(t) + ")";
    case Kind::Cycle:
      return "cycle(entry=" + std::to_string(t) +
             ",period=" + std::to_string(period) + ")";
    case Kind::Truncated:
      return "truncated(max_iters=" + std::to_string(max_iters) + ")";
  }
  return "?";
}

Trace run(const Game& g, const Partition& p0, const DynamicsConfig& config) {
  if (p0.n() != g.n()) {
    throw ValidationError("initial partition has " + std::to_string(p0.n()) +
                          " players, game has " + std::to_string(g.n()));
  }
  const std::uint64_t max_iters =
      config.max_iters == 0 ? bell_number(g.n()) : config.max_iters;
  MergeSelector selector(config.policy);

  Trace trace;
  auto record = [&](std::int64_t t, Partition p, std::vector<Operation> ops) {
    const LyapunovValue lv = lyapunov(g, p);
    trace.steps.push_back(TraceStep{t, std::move(p), std::move(ops), lv.psi(),
                                    lv.phi()});
  };
  std::unordered_map<Partition, std::int64_t, PartitionHash> seen;
  seen.emplace(p0, 0);
  record(0, p0, {});

  for (std::uint64_t iter = 0; iter < max_iters; ++iter) {
    const auto t = static_cast<std::int64_t>(iter);
    const Partition& current = trace.steps.back().partition;
    StepResult next = step(g, current, config.mode, selector, config.tol);
    if (next.next == current) {
      trace.verdict = {Verdict::Kind::FixedPoint, t, 1, max_iters};
      return trace;
    }
    if (const auto it = seen.find(next.next); it != seen.end()) {
      trace.verdict = {Verdict::Kind::Cycle, it->second, t + 1 - it->second,
                       max_iters};
      return trace;
    }
    seen.emplace(next.next, t + 1);
    record(t + 1, std::move(next.next), std::move(next.ops));
  }
  trace.verdict = {Verdict::Kind::Truncated, 0, 0, max_iters};
  return trace;
}

}  // namespace splitmerge
