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

#include "splitmerge/trace_io.hpp"

#include <cstdio>

#include "splitmerge/game_io.hpp"

namespace splitmerge {

using nlohmann::json;

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::ordered_json to_json(const TraceStep& step) {
  return nlohmann::ordered_json{{"t", step.t},
                                {"op", describe(step.ops)},
                                {"partition", partition_to_json(step.partition)},
                                {"psi", step.psi},
                                {"phi", step.phi}};
}

json to_json(const Verdict& verdict) {
  switch (verdict.kind) {
    case Verdict::Kind::FixedPoint:
      return json{{"kind", "fixed_point"}, {"t", verdict.t}};
    case Verdict::Kind::Cycle:
      return json{{"kind", "cycle"}, {"entry", verdict.t},
                  {"period", verdict.period}};
    case Verdict::Kind::Truncated:
      return json{{"kind", "truncated"}, {"max_iters", verdict.max_iters}};
  }
  return json{};
}

json to_json(const LyapunovValue& value) {
  return json{{"neg_psi", value.neg_fairness}, {"phi", value.surplus}};
}

json to_json(const ShapleyVector& sv) {
  json out = json::object();
  const auto members = sv.coalition.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    out[std::to_string(members[k].display())] = sv.phi[k];
  }
  return out;
}

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const TraceStep& step : trace.steps) {
    out += to_json(step).dump();
    out += '\n';
  }
  return out;
}

std::string plot_table_csv(const Trace& trace) {
  std::string out = "t,psi,phi,num_coalitions\n";
  for (const TraceStep& step : trace.steps) {
    out += std::to_string(step.t) + "," + format_real(step.psi) + "," +
           format_real(step.phi) + "," + std::to_string(step.partition.size()) +
           "\n";
  }
  return out;
}

std::string membership_csv(const Trace& trace) {
  std::string out = "player";
  for (const TraceStep& step : trace.steps) out += ",t" + std::to_string(step.t);
  out += '\n';
  if (trace.steps.empty()) return out;
  const int n = trace.steps.front().partition.n();
  for (int i = 0; i < n; ++i) {
    out += std::to_string(i + 1);
    for (const TraceStep& step : trace.steps) {
      out += "," + std::to_string(step.partition.block_of(i) + 1);
    }
    out += '\n';
  }
  return out;
}

json to_json(const AuditReport& report) {
  return json{{"type", "monotonicity_audit"},
              {"games_tested", report.games_tested},
              {"steps_tested", report.steps_tested},
              {"split_transitions", report.split_transitions},
              {"split_violations", report.split_violations_count},
              {"lex_less", report.lex_less},
              {"lex_equal", report.lex_equal},
              {"lex_greater", report.lex_greater}};
}

json to_json(const CycleSearchReport& report) {
  return json{{"type", "cycle_search"},
              {"runs", report.runs},
              {"fixed_points", report.fixed_points},
              {"cycles", report.cycles},
              {"truncated", report.truncated},
              {"max_period", report.max_period},
              {"max_iterations", report.max_iterations},
              {"value_violations", report.value_violations}};
}

std::string audit_report_to_jsonl(const AuditReport& report) {
  std::string out = to_json(report).dump() + "\n";
  for (const SplitViolation& v : report.split_violations) {
    out += json{{"type", "split_violation"},
                {"fingerprint", v.fingerprint},
                {"game", json::parse(v.game_json)},
                {"partition", partition_to_json(v.partition)},
                {"successor", partition_to_json(v.successor)},
                {"before", to_json(v.before)},
                {"after", to_json(v.after)}}
               .dump() +
           "\n";
  }
  for (const LexFinding& f : report.lex_violations) {
    out += json{{"type", "lex_decrease"},
                {"fingerprint", f.fingerprint},
                {"game", json::parse(f.game_json)},
                {"partition", partition_to_json(f.partition)},
                {"successor", partition_to_json(f.successor)},
                {"op", f.ops},
                {"before", to_json(f.before)},
                {"after", to_json(f.after)}}
               .dump() +
           "\n";
  }
  return out;
}

std::string cycle_report_to_jsonl(const CycleSearchReport& report) {
  std::string out = to_json(report).dump() + "\n";
  for (const CycleRecord& c : report.cycle_records) {
    out += json{{"type", "cycle"},
                {"fingerprint", c.fingerprint},
                {"start", partition_to_json(c.start)},
                {"entry", c.entry},
                {"period", c.period},
                {"psi_range", c.psi_range},
                {"phi_range", c.phi_range}}
               .dump() +
           "\n";
  }
  return out;
}

}  // namespace splitmerge
