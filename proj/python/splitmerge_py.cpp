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

// Python bindings. Players are 1-based ints on the Python side; coalitions
// are lists of ids and partitions are lists of such lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitmerge/dynamics.hpp"
#include "splitmerge/errors.hpp"
#include "splitmerge/game.hpp"
#include "splitmerge/game_io.hpp"
#include "splitmerge/oracle.hpp"
#include "splitmerge/shapley.hpp"
#include "splitmerge/trace_io.hpp"
#include "splitmerge/verify.hpp"

namespace py = pybind11;
using namespace splitmerge;

namespace {

using Ids = std::vector<int>;
using Blocks = std::vector<Ids>;

Coalition to_coalition(const Ids& ids, int n) {
  std::vector<PlayerId> players;
  for (int id : ids) players.push_back(PlayerId{id - 1});
  return coalition_of(players, n);
}

Ids to_ids(Coalition s) {
  Ids out;
  for (PlayerId p : s.members()) out.push_back(p.display());
  return out;
}

Partition to_partition(const Blocks& blocks, int n) {
  std::vector<Coalition> cs;
  for (const Ids& b : blocks) cs.push_back(to_coalition(b, n));
  return canonicalize(std::move(cs), n);
}

Blocks to_blocks(const Partition& p) {
  Blocks out;
  for (Coalition b : p.blocks()) out.push_back(to_ids(b));
  return out;
}

std::vector<Blocks> to_blocks(const std::vector<Partition>& ps) {
  std::vector<Blocks> out;
  for (const Partition& p : ps) out.push_back(to_blocks(p));
  return out;
}

std::vector<Blocks> to_blocks(const PartitionSet& ps) {
  return to_blocks(std::vector<Partition>(ps.begin(), ps.end()));
}

Partition initial(const Game& g, const py::object& init) {
  if (py::isinstance<py::str>(init)) {
    const auto s = init.cast<std::string>();
    if (s == "singletons") return Partition::singletons(g.n());
    if (s == "grand") return Partition::grand(g.n());
    return parse_partition(s, g.n());
  }
  return to_partition(init.cast<Blocks>(), g.n());
}

py::dict trace_dict(const Trace& t) {
  py::list steps;
  for (const TraceStep& s : t.steps) {
    py::dict d;
    d["t"] = s.t;
    d["op"] = describe(s.ops);
    d["partition"] = to_blocks(s.partition);
    d["psi"] = s.psi;
    d["phi"] = s.phi;
    steps.append(d);
  }
  py::dict verdict;
  switch (t.verdict.kind) {
    case Verdict::Kind::FixedPoint: verdict["kind"] = "fixed_point"; break;
    case Verdict::Kind::Cycle: verdict["kind"] = "cycle"; break;
    case Verdict::Kind::Truncated: verdict["kind"] = "truncated"; break;
  }
  verdict["t"] = t.verdict.t;
  verdict["period"] = t.verdict.period;
  py::dict out;
  out["steps"] = steps;
  out["verdict"] = verdict;
  out["jsonl"] = trace_to_jsonl(t);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Merge-split coalition formation core";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<CapError>(m, "CapError", PyExc_ValueError);

  py::class_<Game>(m, "Game")
      .def(py::init<int, std::vector<double>, std::string>(), py::arg("n"),
           py::arg("values"), py::arg("name") = "")
      .def_property_readonly("n", &Game::n)
      .def_property_readonly("name", &Game::name)
      .def_property_readonly("values", [](const Game& g) {
        return std::vector<double>(g.values().begin(), g.values().end());
      })
      .def("value", [](const Game& g, const Ids& s) {
        return g.value(to_coalition(s, g.n()));
      })
      .def("fingerprint", &Game::fingerprint)
      .def("to_json", &save_game)
      .def_static("from_json", [](const std::string& text) { return load_game(text); })
      .def_static("load", [](const std::string& path) { return load_game_file(path); })
      .def("__repr__", [](const Game& g) {
        return "<Game n=" + std::to_string(g.n()) + " " + g.fingerprint() + ">";
      });

  m.def("random_game",
        [](int n, std::uint64_t seed, double noise, bool enforce_a1) {
          return random_game({.n = n, .seed = seed, .coalition_noise = noise,
                              .enforce_a1 = enforce_a1});
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("noise") = 1.0,
        py::arg("enforce_a1") = true);
  m.def("case_study_game", [] { return case_study_game({}); });
  m.def("additive_game", [](const std::vector<double>& v) { return additive_game(v); });
  m.def("superadditive_game", [](const std::vector<double>& v, double bonus) {
    return superadditive_game(v, bonus);
  });
  m.def("shift_to_nonneg_singletons", &shift_to_nonneg_singletons);
  m.def("check_assumption1", [](const Game& g) {
    Ids out;
    for (PlayerId p : check_assumption1(g)) out.push_back(p.display());
    return out;
  });

  m.def("shapley",
        [](const Game& g, const Ids& s, const std::string& method) {
          const Coalition c = to_coalition(s, g.n());
          if (method == "exact") return shapley_exact(g, c).phi;
          if (method == "oracle") return shapley_permutation_oracle(g, c).phi;
          throw ValidationError("method must be 'exact' or 'oracle'");
        },
        py::arg("game"), py::arg("coalition"), py::arg("method") = "exact");
  m.def("shapley_sampled",
        [](const Game& g, const Ids& s, std::int64_t samples, std::uint64_t seed) {
          const SampledShapley r =
              shapley_sampled(g, to_coalition(s, g.n()), samples, seed);
          return std::make_pair(r.estimate.phi, r.std_error);
        },
        py::arg("game"), py::arg("coalition"), py::arg("samples"),
        py::arg("seed") = 0);
  m.def("negative_mass", [](const Game& g, const Ids& s) {
    return negative_mass(shapley_exact(g, to_coalition(s, g.n())));
  });

  m.def("split_rule",
        [](const Game& g, const Ids& s, double tol) {
          Blocks out;
          for (Coalition c : split_rule(g, to_coalition(s, g.n()), tol)) {
            out.push_back(to_ids(c));
          }
          return out;
        },
        py::arg("game"), py::arg("coalition"), py::arg("tol") = kDefaultTol);
  m.def("merge_surplus", [](const Game& g, const Ids& a, const Ids& b) {
    return merge_surplus(g, to_coalition(a, g.n()), to_coalition(b, g.n()));
  });
  m.def("step",
        [](const Game& g, const Blocks& p, const std::string& mode,
           const std::string& policy, double tol) {
          MergeSelector sel(MergePolicy::parse(policy));
          const StepResult r = step(g, to_partition(p, g.n()),
                                    parse_step_mode(mode), sel, tol);
          return std::make_pair(to_blocks(r.next), describe(r.ops));
        },
        py::arg("game"), py::arg("partition"), py::arg("mode") = "composite",
        py::arg("policy") = "lex", py::arg("tol") = kDefaultTol);
  m.def("lyapunov", [](const Game& g, const Blocks& p) {
    const LyapunovValue v = lyapunov(g, to_partition(p, g.n()));
    return std::make_pair(v.psi(), v.phi());
  });
  m.def("is_sfms",
        [](const Game& g, const Blocks& p, double tol) {
          return is_sfms(g, to_partition(p, g.n()), tol).sfms;
        },
        py::arg("game"), py::arg("partition"), py::arg("tol") = kDefaultTol);
  m.def("run",
        [](const Game& g, const py::object& init, const std::string& mode,
           const std::string& policy, double tol, std::uint64_t max_iters) {
          DynamicsConfig cfg{parse_step_mode(mode), tol,
                             MergePolicy::parse(policy), max_iters};
          return trace_dict(run(g, initial(g, init), cfg));
        },
        py::arg("game"), py::arg("init") = "singletons",
        py::arg("mode") = "composite", py::arg("policy") = "lex",
        py::arg("tol") = kDefaultTol, py::arg("max_iters") = 0);

  m.def("bell_number", &bell_number);
  m.def("enumerate_partitions",
        [](int n) { return to_blocks(enumerate_partitions(n)); });
  m.def("enumerate_sfms",
        [](const Game& g, double tol) { return to_blocks(enumerate_sfms(g, tol)); },
        py::arg("game"), py::arg("tol") = kDefaultTol);
  m.def("fixed_points",
        [](const Game& g, double tol) {
          const FixedPointReport r = fixed_points(g, tol);
          py::dict d;
          d["fixed_points"] = to_blocks(r.fixed_points);
          d["sfms"] = to_blocks(r.sfms);
          d["equal"] = r.equal;
          return d;
        },
        py::arg("game"), py::arg("tol") = kDefaultTol);
  m.def("zero_progress_set",
        [](const Game& g, double tol) { return to_blocks(zero_progress_set(g, tol)); },
        py::arg("game"), py::arg("tol") = kDefaultTol);
  m.def("largest_weakly_invariant",
        [](const Game& g, double tol) {
          return to_blocks(largest_weakly_invariant(g, tol));
        },
        py::arg("game"), py::arg("tol") = kDefaultTol);

  m.def("verify",
        [](const std::string& suite, int games, int n, std::uint64_t seed) {
          const SuiteResult r =
              run_suite(suite, {.games = games, .n = n, .seed = seed});
          return std::make_pair(r.passed, r.summary);
        },
        py::arg("suite"), py::arg("games") = 100, py::arg("n") = 5,
        py::arg("seed") = 1);
}
