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

#ifndef SPLITMERGE_TRACE_IO_HPP
#define SPLITMERGE_TRACE_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "splitmerge/dynamics.hpp"
#include "splitmerge/oracle.hpp"
#include "splitmerge/shapley.hpp"

namespace splitmerge {

// {"t":1,"op":"split:[1,2]→[[1],[2]]","partition":[[1],[2]],"psi":0,"phi":1}
nlohmann::ordered_json to_json(const TraceStep& step);
nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const LyapunovValue& value);
// {"1": 0.75, "2": -0.25} keyed by 1-based id.
nlohmann::json to_json(const ShapleyVector& sv);

/// One JSON object per line, one line per step.
std::string trace_to_jsonl(const Trace& trace);

/// "t,psi,phi,num_coalitions" header plus one row per step.
std::string plot_table_csv(const Trace& trace);

/// One row per player, one column per step; entries are the 1-based index of
/// the block holding the player at that step.
std::string membership_csv(const Trace& trace);

// Doubles are printed with 17 significant digits.
std::string format_real(double x);

nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const CycleSearchReport& report);

/// Structured-text report: a header object line, then one line per finding.
std::string audit_report_to_jsonl(const AuditReport& report);
std::string cycle_report_to_jsonl(const CycleSearchReport& report);

}  // namespace splitmerge

#endif  // SPLITMERGE_TRACE_IO_HPP
