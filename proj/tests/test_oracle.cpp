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

#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/oracle.hpp"
#include "test_support.hpp"

using namespace fmc;

TEST_CASE("gap(2): OPT = 6 with p = (3, 3)") {
  const OracleResult r = ExactSolve(GapInstance(2));
  REQUIRE(r.feasible);
  CHECK(*r.opt_weight == 6.0);
  CHECK(*r.opt_count == 6);
  CHECK(r.witness->p == std::vector<int>{3, 3});
  CHECK(r.opt_unfair_weight >= *r.opt_weight);
  CHECK(r.enumerated == Binomial(9, 3));
}

TEST_CASE("gap(alpha): unfair optimum versus fair optimum") {
  // alpha = 2: a block set covers only 2 elements, so the pair sets are also
  // the unconstrained optimum. From alpha = 3 on the separation is strict:
  // one set per block plus pair sets covers alpha^2 + 2 > 2 alpha + 2.
  for (int alpha = 2; alpha <= 4; ++alpha) {
    const OracleResult r = ExactSolve(GapInstance(alpha));
    REQUIRE(r.feasible);
    CHECK(*r.opt_weight == 2 * alpha + 2);
    if (alpha == 2) {
      CHECK(r.opt_unfair_weight == *r.opt_weight);
    } else {
      CHECK(r.opt_unfair_weight == alpha * alpha + 2);
    }
  }
}

TEST_CASE("monochromatic sets in a 2-color instance: infeasible") {
  const FmcInstance inst = FmcInstance::Create(4, 1, 2, {1, 1, 1, 1}, {0, 0, 0, 1},
                                               {{0, 1}, {1, 2}, {0, 2}});
  const OracleResult r = ExactSolve(inst);
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.opt_weight.has_value());
  CHECK_FALSE(r.opt_count.has_value());
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.opt_unfair_weight == 2.0);
  CHECK_FALSE(FeasibleAtMost(inst));
}

TEST_CASE("k = m forces the selection") {
  const FmcInstance bal = FmcInstance::Create(4, 2, 2, {1, 2, 3, 4}, {0, 1, 0, 1},
                                              {{0, 1}, {1, 2, 3}});
  OracleResult r = ExactSolve(bal);
  REQUIRE(r.feasible);
  CHECK(*r.opt_weight == 10.0);
  const FmcInstance unbal = FmcInstance::Create(3, 2, 2, {1, 1, 1}, {0, 1, 0}, {{0, 1}, {2}});
  r = ExactSolve(unbal);
  CHECK_FALSE(r.feasible);
}

TEST_CASE("feasible at most k but not exactly k") {
  const FmcInstance inst =
      FmcInstance::Create(3, 2, 2, {1, 1, 1}, {0, 1, 0}, {{0, 1}, {2}});
  CHECK_FALSE(ExactSolve(inst).feasible);
  CHECK(FeasibleAtMost(inst));
}

TEST_CASE("matches naive enumeration on random instances") {
  int feasible = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Params params{{"n", 10}, {"m", 8}, {"k", 1 + static_cast<double>(seed % 4)},
                        {"chi", 2 + static_cast<double>(seed % 2)}, {"density", 0.3},
                        {"weighted", static_cast<double>(seed % 3 == 0)}};
    const FmcInstance inst = Generate("random", params, seed);
    const testing::NaiveBest naive = testing::NaiveSolve(inst);
    const OracleResult r = ExactSolve(inst);
    CHECK(r.feasible == naive.feasible);
    CHECK(r.opt_unfair_weight == doctest::Approx(naive.unfair_weight));
    if (naive.feasible) {
      ++feasible;
      CHECK(*r.opt_weight == doctest::Approx(naive.weight));
      CHECK(*r.opt_count == naive.count);
      CHECK(r.witness->selected == naive.sets);
      const Evaluation ev = Evaluate(inst, r.witness->selected);
      CHECK(ev.fairness.sigma == 1.0);
      CHECK(IsExactlyFair(inst, ev.solution.p));
      if (ComputeStats(inst).unweighted) CHECK(*r.opt_weight == *r.opt_count);
    }
    CHECK(FeasibleAtMost(inst) == testing::NaiveSolve(inst, true).feasible);
  }
  CHECK(feasible >= 10);
}

TEST_CASE("threads do not change the result") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FmcInstance inst = Generate("random", {{"m", 12}, {"k", 4}, {"weighted", 1}}, seed);
    const OracleResult a = ExactSolve(inst, kDefaultOracleBudget, 1);
    const OracleResult b = ExactSolve(inst, kDefaultOracleBudget, 3);
    CHECK(a.feasible == b.feasible);
    CHECK(a.opt_weight == b.opt_weight);
    CHECK(a.opt_count == b.opt_count);
    if (a.witness) CHECK(a.witness->selected == b.witness->selected);
    CHECK(a.unfair_witness == b.unfair_witness);
  }
}

TEST_CASE("budget") {
  CHECK(Binomial(24, 8) == 735471);
  CHECK(Binomial(5, 7) == 0);
  const FmcInstance inst = Generate("random", {{"m", 12}, {"k", 4}}, 1);
  CHECK_THROWS_AS(ExactSolve(inst, 100), BudgetExceeded);
  CHECK_THROWS_AS(FeasibleAtMost(inst, 100), BudgetExceeded);
}
