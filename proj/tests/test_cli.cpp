// Copyright 2026 The FairCover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fmc/cli.hpp"
#include "json.hpp"

using namespace fmc;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run Call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fmc-test-cli";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("gen then solve writes a report") {
  const std::string in = Scratch("gap.json");
  REQUIRE(Call({"gen", "--family", "gap", "--params", "alpha=2", "--out", in}).code == kExitOk);
  const Run r = Call({"solve", "--alg", "large", "--input", in, "--seed", "1", "--oracle"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "ok");
  CHECK(j["algorithm"] == "large");
  CHECK(j.contains("oracle"));
}

TEST_CASE("usage and precondition errors exit 1") {
  CHECK(Call({"solve", "--alg", "nope", "--input", "x"}).code == kExitError);
  CHECK(Call({"frobnicate"}).code == kExitError);
  CHECK(Call({"solve", "--alg", "large", "--input", Scratch("missing.json")}).code == kExitError);

  const std::string in = Scratch("gap2.json");
  REQUIRE(Call({"gen", "--family", "gap", "--params", "alpha=2", "--out", in}).code == kExitOk);
  const Run seg = Call({"solve", "--alg", "greedy-plus", "--input", in});
  CHECK(seg.code == kExitError);
  CHECK(seg.err.find("instance not segregated") != std::string::npos);

  const std::string chi4 = Scratch("chi4.json");
  REQUIRE(Call({"gen", "--family", "random", "--params", "n=8,chi=4", "--out", chi4}).code ==
          kExitOk);
  const Run small = Call({"solve", "--alg", "small", "--input", chi4});
  CHECK(small.code == kExitError);
  CHECK(small.err.find("small-mode guard") != std::string::npos);
}

TEST_CASE("infeasible instances exit 2 with a report") {
  // One set holding two red elements and nothing blue: no fair cover.
  const std::string in = Scratch("infeasible.json");
  {
    std::ofstream f(in);
    f << R"({"n": 3, "m": 1, "k": 1, "chi": 2, "colors": [1, 1, 2], "weights": [1, 1, 1],)"
      << R"( "sets": [[1, 2]]})";
  }
  const Run r = Call({"solve", "--alg", "large", "--input", in});
  CHECK(r.code == kExitInfeasible);
  CHECK(nlohmann::json::parse(r.out)["status"] == "infeasible");
}
