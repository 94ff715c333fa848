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

#include <cmath>

#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/rounding.hpp"

using namespace fmc;

TEST_CASE("integral marginals are returned unchanged") {
  CounterRng rng(1);
  const std::vector<double> p{1, 0, 1};
  for (int t = 0; t < 50; ++t) CHECK(DependentRound(p, rng) == std::vector<int>{1, 0, 1});
}

TEST_CASE("two halves: exactly one, each half the time") {
  const std::vector<double> p{0.5, 0.5};
  int first = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    CounterRng rng(DeriveSeed(3, "t", t));
    const auto x = DependentRound(p, rng);
    CHECK(x[0] + x[1] == 1);
    first += x[0];
  }
  CHECK(std::abs(first / static_cast<double>(n) - 0.5) <= 0.02);
}

TEST_CASE("four quarters") {
  const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
  std::vector<int> hits(4, 0);
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    CounterRng rng(DeriveSeed(4, "t", t));
    const auto x = DependentRound(p, rng);
    int sum = 0;
    for (int i = 0; i < 4; ++i) {
      sum += x[i];
      hits[i] += x[i];
    }
    REQUIRE(sum == 1);
  }
  for (int h : hits) CHECK(std::abs(h / static_cast<double>(n) - 0.25) <= 0.02);
}

TEST_CASE("random marginals: cardinality, marginals, negative correlation") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CounterRng gen(DeriveSeed(seed, "marg"));
    const int r = 2 + static_cast<int>(gen.NextBelow(11));
    const int ell = 1 + static_cast<int>(gen.NextBelow(r - 1));
    // Scale uniform draws to sum ell with every entry in [0, 1].
    std::vector<double> p(r);
    double sum = 0.0;
    for (double& v : p) sum += (v = gen.NextDouble());
    for (double& v : p) v *= ell / sum;
    bool ok = false;
    while (!ok) {
      ok = true;
      double excess = 0.0;
      int free = 0;
      for (double& v : p) {
        if (v > 1.0) {
          excess += v - 1.0;
          v = 1.0;
          ok = false;
        } else if (v < 1.0) {
          ++free;
        }
      }
      for (double& v : p) {
        if (v < 1.0 && free > 0) v += excess / free;
      }
    }
    const int n = 10000;
    std::vector<int> hits(r, 0);
    int both01 = 0;
    for (int t = 0; t < n; ++t) {
      CounterRng rng(DeriveSeed(seed, "trial", t));
      const auto x = DependentRound(p, rng);
      int s = 0;
      for (int i = 0; i < r; ++i) {
        s += x[i];
        hits[i] += x[i];
      }
      REQUIRE(s == ell);
      both01 += x[0] && x[1];
    }
    for (int i = 0; i < r; ++i) {
      const double emp = hits[i] / static_cast<double>(n);
      CHECK(std::abs(emp - p[i]) <= 3.0 * std::sqrt(p[i] * (1 - p[i]) / n) + 0.01);
    }
    CHECK(both01 / static_cast<double>(n) <= p[0] * p[1] + 0.02);
  }
}

TEST_CASE("determinism and errors") {
  const std::vector<double> p{0.3, 0.7, 0.5, 0.5};
  CounterRng a(77);
  CounterRng b(77);
  CHECK(DependentRound(p, a) == DependentRound(p, b));
  CounterRng rng(1);
  const std::vector<double> neg{-0.5, 1.5};
  CHECK_THROWS_AS(DependentRound(neg, rng), PreconditionError);
  const std::vector<double> frac{0.5, 0.6};
  CHECK_THROWS_AS(DependentRound(frac, rng), PreconditionError);
  const std::vector<double> drift{0.5, 0.5 + 1e-12};
  CHECK(DependentRound(drift, rng).size() == 2);
  CHECK(DependentRound(std::vector<double>{}, rng).empty());
}

TEST_CASE("induce elements") {
  const FmcInstance gap = GapInstance(2);
  CHECK(InduceElements(gap, std::vector<int>(9, 0)) == std::vector<int>(12, 0));
  CHECK(InduceElements(gap, std::vector<int>(9, 1)) == std::vector<int>(12, 1));
  std::vector<int> y(9, 0);
  y[6] = y[7] = y[8] = 1;
  const auto x = InduceElements(gap, y);
  for (int e = 0; e < 12; ++e) CHECK(x[e] == (e >= 6 ? 1 : 0));
  CHECK_THROWS_AS(InduceElements(gap, std::vector<int>(3, 0)), PreconditionError);
}
