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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/instance.hpp"
#include "fmc/io.hpp"
#include "test_support.hpp"

using namespace fmc;

namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fmc_test_" + name)).string();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("load_instance: minimal file") {
  const auto path = TempPath("min.json");
  WriteText(path, R"({"n":3,"m":2,"k":1,"chi":2,"colors":[1,2,1],"sets":[[1,2],[3]]})");
  const FmcInstance inst = LoadInstance(path);
  CHECK(inst.n() == 3);
  CHECK(inst.m() == 2);
  CHECK(inst.k() == 1);
  CHECK(inst.chi() == 2);
  CHECK(inst.color(1) == 1);
  CHECK(inst.weight(2) == 1.0);
  REQUIRE(inst.set(0).size() == 2);
  CHECK(inst.set(0)[1] == 1);
  CHECK(inst.has_equal_proportions());
  CHECK(inst.proportions()[0] == Rational{1, 2});
  CHECK(inst.proportions()[1] == Rational{1, 2});
  std::remove(path.c_str());
}

TEST_CASE("load_instance: duplicate element error names the set") {
  const auto path = TempPath("dup.json");
  WriteText(path, R"({"n":2,"m":1,"k":1,"chi":1,"colors":[1,1],"sets":[[1,1]]})");
  CHECK_THROWS_WITH_AS(LoadInstance(path), "duplicate element in set 1", ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("load_instance: malformed and invalid files") {
  const auto path = TempPath("bad.json");
  WriteText(path, "{not json");
  CHECK_THROWS_AS(LoadInstance(path), ParseError);
  WriteText(path, R"({"n":2,"m":1,"k":1,"chi":2,"colors":[1,1],"sets":[[1,2]]})");
  CHECK_THROWS_WITH_AS(LoadInstance(path), "color 2 has no element", ValidationError);
  WriteText(path, R"({"n":2,"m":1,"k":2,"chi":1,"colors":[1,1],"sets":[[1,2]]})");
  CHECK_THROWS_AS(LoadInstance(path), ValidationError);
  WriteText(path, R"({"n":2,"m":2,"k":1,"chi":1,"colors":[1,1],"sets":[[1,2],[]]})");
  CHECK_THROWS_WITH_AS(LoadInstance(path), "empty set 2", ValidationError);
  WriteText(path, R"({"n":2,"m":1,"k":1,"chi":1,"colors":[1,1],"sets":[[1,3]]})");
  CHECK_THROWS_AS(LoadInstance(path), ValidationError);
  WriteText(path, R"({"n":2,"m":1,"k":1,"chi":1,"weights":[1,-1],"colors":[1,1],"sets":[[1,2]]})");
  CHECK_THROWS_AS(LoadInstance(path), ValidationError);
  CHECK_THROWS_AS(LoadInstance(TempPath("does_not_exist.json")), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("proportions are exact rationals") {
  auto make = [](std::vector<Rational> q) {
    return FmcInstance::Create(3, 1, 2, {1, 1, 1}, {0, 1, 1}, {{0, 1, 2}}, std::move(q));
  };
  const FmcInstance inst = make({Rational{1, 3}, Rational{2, 3}});
  CHECK_FALSE(inst.has_equal_proportions());
  const std::vector<int> p{1, 2};
  CHECK(IsExactlyFair(inst, p));
  CHECK(Sigma(inst, p) == doctest::Approx(1.0));
  CHECK_THROWS_AS(make({Rational{1, 3}, Rational{1, 3}}), ValidationError);
  CHECK_THROWS_AS(make({Rational{0, 1}, Rational{1, 1}}), ValidationError);
  CHECK(make({Rational{2, 4}, Rational{1, 2}}).has_equal_proportions());
}

TEST_CASE("from_graph: triangle") {
  ColoredGraph g{3, 1, {{0, 1, 0, 1.0}, {1, 2, 0, 1.0}, {0, 2, 0, 1.0}}};
  const GraphInstance gi = FromGraph(g, 1);
  CHECK(gi.instance.n() == 3);
  CHECK(gi.instance.m() == 3);
  for (int s = 0; s < 3; ++s) CHECK(gi.instance.set(s).size() == 2);
  const InstanceStats st = ComputeStats(gi.instance);
  CHECK(st.f == 2);
  CHECK(st.a == 2);
}

TEST_CASE("from_graph: star hub has cardinality a") {
  ColoredGraph g{5, 2, {{0, 1, 0, 1.0}, {0, 2, 1, 1.0}, {0, 3, 0, 1.0}, {0, 4, 1, 1.0}}};
  const GraphInstance gi = FromGraph(g, 1);
  CHECK(gi.node_of_set[0] == 0);
  CHECK(gi.instance.set(0).size() == 4);
  CHECK(ComputeStats(gi.instance).a == 4);
}

TEST_CASE("from_graph: isolated nodes dropped, k checked") {
  ColoredGraph g{5, 1, {{0, 3, 0, 2.0}}};
  const GraphInstance gi = FromGraph(g, 2);
  CHECK(gi.instance.m() == 2);
  CHECK(gi.node_of_set == std::vector<int>{0, 3});
  CHECK(gi.instance.weight(0) == 2.0);
  CHECK_THROWS_AS(FromGraph(g, 3), ValidationError);
  ColoredGraph loop{2, 1, {{1, 1, 0, 1.0}}};
  CHECK_THROWS_AS(FromGraph(loop, 1), ValidationError);
}

TEST_CASE("from_graph: f = 2 and a = max degree on generated graphs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ColoredGraph g = GenerateGraph({{"nodes", 9}, {"edges", 14}, {"chi", 3}}, seed);
    std::vector<int> degree(g.nodes, 0);
    for (const Edge& e : g.edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    const InstanceStats st = ComputeStats(FromGraph(g, 1).instance);
    CHECK(st.f == 2);
    CHECK(st.a == *std::max_element(degree.begin(), degree.end()));
  }
}

TEST_CASE("stats") {
  const FmcInstance gap = GapInstance(2);
  CHECK(ComputeStats(gap).f == 2);
  CHECK(ComputeStats(gap).a == 2);
  const FmcInstance disjoint =
      FmcInstance::Create(4, 1, 2, {1, 1, 1, 1}, {0, 1, 0, 1}, {{0, 1}, {2, 3}});
  CHECK(ComputeStats(disjoint).f == 1);
  const FmcInstance small = FmcInstance::Create(3, 1, 1, {1, 1, 1}, {0, 0, 0}, {{0, 1, 2}, {2}});
  const InstanceStats st = ComputeStats(small);
  CHECK(st.a == 3);
  CHECK(st.f == 2);
  CHECK(st.per_color_counts == std::vector<int>{3});
  CHECK(st.unweighted);
  CHECK_FALSE(st.singleton_only);
  const FmcInstance singles = FmcInstance::Create(2, 1, 1, {1, 3}, {0, 0}, {{0}, {1}});
  CHECK(ComputeStats(singles).singleton_only);
  CHECK_FALSE(ComputeStats(singles).unweighted);
}

TEST_CASE("evaluate") {
  const FmcInstance full =
      FmcInstance::Create(4, 2, 2, {1, 1, 1, 1}, {0, 1, 0, 1}, {{0, 1}, {2, 3}});
  const std::vector<int> both{0, 1};
  Evaluation ev = Evaluate(full, both);
  CHECK(ev.fairness.sigma == 1.0);
  CHECK(ev.solution.weight == 4.0);
  CHECK(ev.solution.covered == std::vector<int>{0, 1, 2, 3});

  const FmcInstance mono =
      FmcInstance::Create(4, 1, 2, {1, 1, 1, 1}, {0, 0, 1, 1}, {{0, 1}, {2, 3}});
  const std::vector<int> first{0};
  ev = Evaluate(mono, first);
  CHECK(std::isinf(ev.fairness.sigma));
  CHECK_FALSE(ev.fairness.deterministic_ok);

  const FmcInstance gap = GapInstance(2);
  const std::vector<int> pairs{6, 7, 8};
  ev = Evaluate(gap, pairs);
  CHECK(ev.solution.weight == 6.0);
  CHECK(ev.solution.p == std::vector<int>{3, 3});
  CHECK(ev.fairness.sigma == 1.0);

  const std::vector<int> dup{1, 1};
  CHECK_THROWS_AS(Evaluate(gap, dup), ValidationError);
  const std::vector<int> out{9};
  CHECK_THROWS_AS(Evaluate(gap, out), ValidationError);

  // Purity.
  const Evaluation a = Evaluate(gap, pairs, 1.5);
  const Evaluation b = Evaluate(gap, pairs, 1.5);
  CHECK(a.solution.covered == b.solution.covered);
  CHECK(a.fairness.sigma == b.fairness.sigma);
}

TEST_CASE("gap family structure") {
  for (int alpha = 2; alpha <= 5; ++alpha) {
    const FmcInstance gap = GapInstance(alpha);
    CHECK(gap.n() == (alpha + 1) * (alpha + 2));
    CHECK(gap.m() == (alpha + 1) * (alpha + 1));
    CHECK(gap.k() == alpha + 1);
    CHECK(gap.chi() == 2);
    CHECK(ComputeStats(gap).f == alpha);
    // Pair sets: weight 2a+2, p = (a+1, a+1).
    std::vector<int> pairs;
    for (int i = 0; i <= alpha; ++i) pairs.push_back(alpha * (alpha + 1) + i);
    const Evaluation fair = Evaluate(gap, pairs);
    CHECK(fair.solution.weight == 2 * alpha + 2);
    CHECK(fair.solution.p == std::vector<int>{alpha + 1, alpha + 1});
    // One full block (all its leave-one-out sets): p = (1, alpha).
    std::vector<int> block;
    for (int i = 0; i <= alpha; ++i) block.push_back(i);
    const Evaluation blk = Evaluate(gap, block);
    CHECK(blk.solution.p == std::vector<int>{1, alpha});
    CHECK(blk.fairness.sigma == doctest::Approx(alpha));
  }
  CHECK(ComputeStats(GapInstance(2)).f == 2);
  CHECK_THROWS_AS(GapInstance(1), PreconditionError);
  CHECK_THROWS_AS(Generate("gap", {{"alpha", 1}}, 0), PreconditionError);
}

TEST_CASE("generators: determinism, structure, round trip") {
  const std::vector<std::pair<std::string, Params>> families = {
      {"random", {}},
      {"random", {{"weighted", 1}, {"chi", 3}, {"n", 15}}},
      {"segregated", {}},
      {"balanced", {}},
      {"balanced", {{"delta", 1}}},
      {"graph", {}},
      {"gap", {{"alpha", 3}}},
  };
  for (const auto& [family, params] : families) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const FmcInstance a = Generate(family, params, seed);
      const FmcInstance b = Generate(family, params, seed);
      CHECK(a == b);
      const InstanceStats st = ComputeStats(a);
      int total = 0;
      for (int c : st.per_color_counts) total += c;
      CHECK(total == a.n());
      CHECK(st.f >= 1);
      CHECK(st.f <= a.m());
      const std::string text = InstanceToJson(a).dump();
      const FmcInstance back = InstanceFromJson(Json::parse(text));
      CHECK(back == a);
      CHECK(InstanceToJson(back).dump() == text);
      if (family == "segregated") CHECK(IsSegregated(a));
      if (family == "balanced") {
        CHECK(IsDeltaBalanced(a, static_cast<int>(params.count("delta") ? params.at("delta") : 0)));
      }
    }
  }
  CHECK_FALSE(Generate("random", {}, 1) == Generate("random", {}, 2));
  CHECK_THROWS_AS(Generate("nope", {}, 0), PreconditionError);
}

TEST_CASE("balanced: delta 0 bounds are floor/ceil of |S|/chi") {
  const FmcInstance inst = Generate("balanced", {{"delta", 0}, {"chi", 2}}, 3);
  for (int s = 0; s < inst.m(); ++s) {
    int c0 = 0;
    for (int e : inst.set(s)) c0 += inst.color(e) == 0;
    const int size = static_cast<int>(inst.set(s).size());
    CHECK(c0 >= size / 2);
    CHECK(c0 <= (size + 1) / 2);
  }
}

TEST_CASE("delta-balanced validation boundary") {
  // Counts (3, 1) in a set of size 4.
  const FmcInstance skew =
      FmcInstance::Create(6, 1, 2, std::vector<double>(6, 1.0), {0, 0, 0, 1, 1, 1},
                          {{0, 1, 2, 3}, {0, 3}});
  CHECK_FALSE(IsDeltaBalanced(skew, 0));
  CHECK(IsDeltaBalanced(skew, 1));
}

TEST_CASE("params parsing") {
  const Params p = ParseParams("alpha=3, n=12");
  CHECK(p.at("alpha") == 3.0);
  CHECK(p.at("n") == 12.0);
  CHECK(ParseParams("").empty());
  CHECK_THROWS_AS(ParseParams("alpha"), ParseError);
  CHECK_THROWS_AS(ParseParams("alpha=x"), ParseError);
}

TEST_CASE("graph json round trip and load with k") {
  const ColoredGraph g = GenerateGraph({{"weighted", 1}}, 5);
  const auto path = TempPath("graph.json");
  WriteText(path, GraphToJson(g, 2).dump());
  const LoadedInput in = LoadInput(path);
  REQUIRE(in.graph.has_value());
  CHECK(in.graph->edges.size() == g.edges.size());
  CHECK(in.instance.k() == 2);
  CHECK(LoadInput(path, 3).instance.k() == 3);
  WriteText(path, GraphToJson(g).dump());
  CHECK_THROWS_AS(LoadInput(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("atomic write") {
  const auto path = TempPath("atomic.txt");
  WriteFileAtomically(path, "hello");
  std::ifstream in(path);
  std::string s;
  in >> s;
  CHECK(s == "hello");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::remove(path.c_str());
}

TEST_CASE("trial fairness") {
  const FmcInstance gap = GapInstance(2);
  const std::vector<std::vector<int>> trials{{2, 2}, {1, 3}, {3, 1}};
  const TrialFairness tf = EvaluateTrials(gap, trials, 1.0);
  CHECK(tf.mean_p[0] == doctest::Approx(2.0));
  CHECK(tf.max_mean_ratio == doctest::Approx(1.0));
  CHECK(tf.expectation_ok);
  CHECK(tf.joint_probability == doctest::Approx(1.0 / 3.0));
}
