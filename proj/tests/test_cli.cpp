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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "splitmerge/game.hpp"
#include "splitmerge/game_io.hpp"
#include "splitmerge/dynamics.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace splitmerge;

namespace {

const std::string kFixtures = SPLITMERGE_FIXTURES;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "splitmerge");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "splitmerge_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("run G2 from the grand coalition") {
  const fs::path trace = scratch("g2.jsonl");
  const fs::path plot = scratch("g2.csv");
  const fs::path members = scratch("g2_members.csv");
  const Result r = invoke({"run", "--game", kFixtures + "/g2.json", "--init",
                        "[[1,2]]", "--out", trace.string(), "--plot",
                        plot.string(), "--membership", members.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("verdict: fixed_point(t=1)") != std::string::npos);
  CHECK(r.out.find("final_partition: [[1],[2]]") != std::string::npos);
  const std::string text = slurp(trace);
  CHECK(count_lines(text) == 2);
  CHECK(text ==
        "{\"t\":0,\"op\":\"none\",\"partition\":[[1,2]],\"psi\":0.25,\"phi\":0.5}\n"
        "{\"t\":1,\"op\":\"split:[1,2]→[[1],[2]]\",\"partition\":[[1],[2]],"
        "\"psi\":0.0,\"phi\":1.0}\n");
  CHECK(slurp(plot) == "t,psi,phi,num_coalitions\n0,0.25,0.5,1\n1,0,1,2\n");
  CHECK(slurp(members) == "player,t0,t1\n1,1,1\n2,1,2\n");
}

TEST_CASE("same config twice gives byte-identical traces") {
  for (const char* policy : {"lex", "random:5"}) {
    const fs::path a = scratch("det_a.jsonl");
    const fs::path b = scratch("det_b.jsonl");
    for (const fs::path& p : {a, b}) {
      const Result r = invoke({"--policy", policy, "run", "--generator", "random",
                            "--n", "7", "--seed", "3", "--init", "random:9",
                            "--out", p.string()});
      REQUIRE(r.code == cli::kOk);
    }
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
  }
}

TEST_CASE("global flags may follow the subcommand") {
  const Result r = invoke({"run", "--game", kFixtures + "/g2.json", "--init",
                        "grand", "--mode", "atomic"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("fixed_point(t=1)") != std::string::npos);
}

TEST_CASE("committed case-study config") {
  const fs::path trace = scratch("case.jsonl");
  const Result r = invoke({"--config", kFixtures + "/case_study.toml", "run",
                        "--out", trace.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("final_psi: 0\n") != std::string::npos);
  CHECK(r.out.find("verdict: fixed_point") != std::string::npos);
}

TEST_CASE("written config replays the run") {
  const fs::path cfg = scratch("replay.ini");
  const fs::path a = scratch("replay_a.jsonl");
  const fs::path b = scratch("replay_b.jsonl");
  const std::vector<std::string> flags = {
      "--mode", "atomic", "--policy", "random:4", "run", "--generator",
      "random", "--n", "6", "--seed", "11", "--init", "random:2"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = flags;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  REQUIRE(invoke(with({"--write-config", cfg.string()})).code == cli::kOk);
  REQUIRE(invoke(with({"--out", a.string()})).code == cli::kOk);
  REQUIRE(invoke({"--config", cfg.string(), "run", "--out", b.string()}).code ==
          cli::kOk);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("shapley command") {
  const Result r = invoke({"shapley", "--game", kFixtures + "/g2.json",
                        "--coalition", "1,2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("phi[1] = 0.75") != std::string::npos);
  CHECK(r.out.find("phi[2] = -0.25") != std::string::npos);
  CHECK(r.out.find("theta: 0.25") != std::string::npos);

  const Result single = invoke({"shapley", "--game", kFixtures + "/g2.json",
                             "--coalition", "1", "--method", "oracle"});
  CHECK(single.out.find("phi[1] = 1\n") != std::string::npos);

  const std::vector<std::string> sampled = {
      "shapley", "--game", kFixtures + "/g2.json", "--coalition", "1,2",
      "--method", "sampled", "--samples", "500", "--sample-seed", "8"};
  CHECK(invoke(sampled).out == invoke(sampled).out);
  CHECK(invoke(sampled).out.find("+/-") != std::string::npos);

  CHECK(invoke({"shapley", "--game", kFixtures + "/g2.json", "--coalition", "3"})
            .code == cli::kUsageError);
  CHECK(invoke({"shapley", "--game", kFixtures + "/g2.json", "--coalition", "2,1"})
            .code == cli::kUsageError);
}

TEST_CASE("verify command") {
  CHECK(invoke({"verify", "no-such-suite"}).code == cli::kUsageError);
  const Result eff = invoke({"verify", "efficiency", "--games", "200"});
  CHECK(eff.code == cli::kOk);
  const Result split = invoke({"verify", "split-fairness", "--games", "2000"});
  CHECK(split.code == cli::kOk);
  const Result audit = invoke({"verify", "monotonicity-audit", "--games", "50"});
  CHECK(audit.code == cli::kOk);
}

TEST_CASE("generate command") {
  const fs::path add = scratch("add.json");
  REQUIRE(invoke({"generate", "additive", "--n", "4", "--out", add.string()}).code ==
          cli::kOk);
  const Game a = load_game_file(add);
  CHECK(a.n() == 4);
  for (Mask x = 1; x < 16; ++x) {
    for (Mask y = 1; y < 16; ++y) {
      if (x & y) continue;
      CHECK(std::abs(merge_surplus(a, Coalition(x), Coalition(y))) < 1e-12);
    }
  }

  const fs::path r1 = scratch("r1.json");
  const fs::path r2 = scratch("r2.json");
  for (const fs::path& p : {r1, r2}) {
    REQUIRE(invoke({"generate", "random", "--n", "5", "--seed", "42", "--out",
                 p.string()})
                .code == cli::kOk);
  }
  CHECK(slurp(r1) == slurp(r2));

  const fs::path cs = scratch("cs.json");
  REQUIRE(invoke({"generate", "case-study", "--shift", "--out", cs.string()}).code ==
          cli::kOk);
  const Game c = load_game_file(cs);
  CHECK(c.n() == 10);
  CHECK(check_assumption1(c).empty());

  CHECK(invoke({"generate", "bogus"}).code == cli::kUsageError);
}

TEST_CASE("enumerate command") {
  const Result sfms = invoke({"enumerate", "sfms", "--game", kFixtures + "/g2.json"});
  CHECK(sfms.code == cli::kOk);
  CHECK(sfms.out == "[[1],[2]]\ncount: 1\n");

  const Result parts =
      invoke({"enumerate", "partitions", "--generator", "additive", "--n", "3"});
  CHECK(parts.code == cli::kOk);
  CHECK(count_lines(parts.out) == 6);
  CHECK(parts.out.find("count: 5") != std::string::npos);

  const Result cap = invoke({"enumerate", "invariant-set", "--generator", "random",
                          "--n", "12"});
  CHECK(cap.code == cli::kUsageError);
  CHECK(cap.err.find("n <= 7") != std::string::npos);

  const Result inv =
      invoke({"enumerate", "invariant-set", "--game", kFixtures + "/g2.json"});
  CHECK(inv.out == "[[1],[2]]\ncount: 1\n");
}

TEST_CASE("help documents every subcommand") {
  const Result r = invoke({"--help"});
  CHECK(r.code == cli::kOk);
  for (const char* sub : {"run", "shapley", "verify", "generate", "enumerate"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
}
