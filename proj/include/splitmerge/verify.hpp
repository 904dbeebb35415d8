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

#ifndef SPLITMERGE_VERIFY_HPP
#define SPLITMERGE_VERIFY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "splitmerge/dynamics.hpp"

namespace splitmerge {

// Verification sweeps driven by `splitmerge verify`. Each suite has hard
// assertions that decide `passed`; audits that may legitimately find
// counterexamples report them without failing.
struct SuiteParams {
  int games = 100;  // games, or (game, partition) pairs for pair suites
  int n = 5;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  StepMode mode = StepMode::Composite;
  int starts = 5;  // starting partitions per game
  bool exhaustive = false;  // split-fairness: every partition of each game
};

struct SuiteResult {
  std::string suite;
  bool passed = false;
  std::string summary;  // one line
  std::string table;    // CSV rows (per-game suites) or empty
  std::string report;   // JSON-lines report (audits) or empty
};

std::span<const std::string_view> suite_names();

/// Throws ValidationError for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteParams& params);

}  // namespace splitmerge

#endif  // SPLITMERGE_VERIFY_HPP
