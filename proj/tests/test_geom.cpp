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
#include "fmc/geom.hpp"

using namespace fmc;

namespace {

GeomInstance Make(double side, int k, double eps, double lip, int chi,
                  std::vector<GeomPoint> pts) {
  GeomInstance geo;
  geo.delta = side;
  geo.k = k;
  geo.epsilon = eps;
  geo.lipschitz = lip;
  geo.chi = chi;
  geo.points = std::move(pts);
  return geo;
}

GeomInstance Desk(std::uint64_t seed) {
  const double eps = seed % 2 ? 0.25 : 0.5;
  Params p{{"points", 20 + static_cast<double>(seed % 11)}, {"chi", 2}, {"side", 6},
           {"k", 1 + static_cast<double>(seed % 2)}, {"epsilon", eps}, {"lipschitz", eps / 2}};
  return GenerateGeom(p, seed);
}

// Rank used across repetitions: fair first, then coverage, then ratio.
bool NotWorse(const GeomEvaluation& a, const GeomEvaluation& b) {
  if (a.fair != b.fair) return a.fair;
  if (a.coverage != b.coverage) return a.coverage > b.coverage;
  return a.ratio <= b.ratio;
}

}  // namespace

TEST_CASE("single dense cluster, k = 1: one ball covers everything") {
  std::vector<GeomPoint> pts;
  for (int i = 0; i < 8; ++i) {
    const double a = i * 0.785398;
    pts.push_back(GeomPoint{3.0 + 0.4 * std::cos(a), 3.0 + 0.4 * std::sin(a), 0, 1.0 + i});
  }
  const GeomInstance geo = Make(6.0, 1, 0.5, 0.25, 1, pts);
  GeomConfig cfg;
  cfg.seed = 3;
  const GeomOutcome out = AlgGeom(geo, cfg);
  CHECK(out.best.centers.size() == 1u);
  CHECK(out.best.coverage == doctest::Approx(36.0));
}

TEST_CASE("two interleaved colors, k = 1: ratio within 1 + eps") {
  std::vector<GeomPoint> pts;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) pts.push_back(GeomPoint{0.5 + i, 0.5 + j, (i + j) % 2, 1.0});
  }
  for (double eps : {0.25, 0.5}) {
    const GeomInstance geo = Make(6.0, 1, eps, eps / 2, 2, pts);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GeomConfig cfg;
      cfg.seed = seed;
      const GeomOutcome out = AlgGeom(geo, cfg);
      CHECK(out.best.ratio <= 1.0 + eps);
      CHECK(out.best.coverage > 0.0);
    }
  }
}

TEST_CASE("desk clouds against the oracle") {
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeomInstance geo = Desk(seed);
    const GeomOracleResult oracle = GeomOracle(geo);
    REQUIRE(oracle.fair_found);
    GeomConfig cfg;
    cfg.seed = seed;
    const GeomOutcome out = AlgGeom(geo, cfg);
    CHECK(out.repetitions.size() ==
          static_cast<std::size_t>(std::ceil(std::log2(geo.points.size()))));
    const double eps = geo.epsilon;
    const double target = (1.0 - 3.0 * eps) * (oracle.fair_best.coverage - eps * geo.chi * 1.0);
    good += out.best.ratio <= 1.0 + eps && out.best.coverage >= target - 1e-9;
    CHECK(out.best.coverage <= oracle.fair_best.coverage + 1e-9);
    CHECK(oracle.fair_best.coverage <= oracle.unconstrained.coverage + 1e-9);
  }
  CHECK(good >= 9);
}

TEST_CASE("rounded tally is within eps of the exact coverage") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeomInstance geo = Desk(seed);
    GeomConfig cfg;
    cfg.seed = seed;
    const GeomOutcome out = AlgGeom(geo, cfg);
    for (const GeomRepetition& rep : out.repetitions) {
      for (int c = 0; c < geo.chi; ++c) {
        const double gap = rep.eval.per_color[c] - rep.rounded[c];
        CHECK(gap >= -1e-9);
        CHECK(gap < geo.epsilon);
      }
    }
  }
}

TEST_CASE("union coverage counts each point once") {
  const GeomInstance geo =
      Make(4.0, 2, 0.5, 0.25, 2, {{1.0, 1.0, 0, 2.0}, {1.5, 1.0, 1, 3.0}, {3.5, 3.5, 0, 1.0}});
  const GeomEvaluation ev = EvaluateBalls(geo, {{1.0, 1.0}, {1.4, 1.0}});
  CHECK(ev.coverage == 5.0);
  CHECK(ev.per_color == std::vector<double>{2.0, 3.0});
  CHECK(ev.ratio == 1.5);
  CHECK(ev.fair);  // 1.5 <= 1 + eps
}

TEST_CASE("more repetitions never worsen the result") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GeomInstance geo = Desk(seed);
    GeomEvaluation prev;
    for (int reps = 1; reps <= 6; ++reps) {
      GeomConfig cfg;
      cfg.seed = seed;
      cfg.repetitions = reps;
      const GeomOutcome out = AlgGeom(geo, cfg);
      if (reps > 1) CHECK(NotWorse(out.best, prev));
      prev = out.best;
    }
  }
}

TEST_CASE("oracle fixtures") {
  SUBCASE("one point snaps to the nearest lattice center") {
    const GeomInstance geo = Make(4.0, 1, 0.5, 0.25, 1, {{2.3, 1.05, 0, 1.0}});
    const GeomOracleResult r = GeomOracle(geo);
    REQUIRE(r.fair_best.centers.size() == 1u);
    CHECK(r.fair_best.centers[0].x == doctest::Approx(2.25));
    CHECK(r.fair_best.centers[0].y == doctest::Approx(1.0));
  }
  SUBCASE("symmetric two-cluster, k = 2: one ball per cluster") {
    std::vector<GeomPoint> pts;
    for (double cx : {1.5, 6.5}) {
      pts.push_back({cx - 0.3, 2.0, 0, 1.0});
      pts.push_back({cx + 0.3, 2.0, 1, 1.0});
    }
    const GeomOracleResult r = GeomOracle(Make(8.0, 2, 0.5, 0.25, 2, pts));
    REQUIRE(r.fair_found);
    CHECK(r.fair_best.coverage == 4.0);
    REQUIRE(r.fair_best.centers.size() == 2u);
    CHECK(std::abs(r.fair_best.centers[0].x - r.fair_best.centers[1].x) > 2.0);
  }
  SUBCASE("no fair pattern: unconstrained best, fairness flag false") {
    const GeomInstance geo =
        Make(6.0, 1, 0.5, 0.25, 2, {{1.0, 1.0, 0, 1.0}, {1.2, 1.0, 0, 1.0}, {5.0, 5.0, 1, 1.0}});
    const GeomOracleResult r = GeomOracle(geo);
    CHECK_FALSE(r.fair_found);
    CHECK_FALSE(r.fair_best.fair);
    CHECK(r.unconstrained.coverage == 2.0);
  }
  SUBCASE("budget") {
    const GeomInstance geo = Make(6.0, 2, 0.25, 1.0, 1, {{3.0, 3.0, 0, 1.0}, {1.0, 5.0, 0, 1.0}});
    CHECK_THROWS_AS(GeomOracle(geo, 2), BudgetExceeded);
    CHECK_NOTHROW(GeomOracle(geo, 100));
  }
}

TEST_CASE("json round trip, validation and svg") {
  const GeomInstance geo = Desk(4);
  const GeomInstance back = GeomFromJson(GeomToJson(geo));
  CHECK(back.points.size() == geo.points.size());
  CHECK(back.k == geo.k);
  CHECK(back.points[3].x == geo.points[3].x);
  Json bad = GeomToJson(geo);
  bad["points"].push_back({100.0, 1.0, 1, 1.0});
  CHECK_THROWS_AS(GeomFromJson(bad), ValidationError);
  Json missing = GeomToJson(geo);
  missing["epsilon"] = 1.5;
  CHECK_THROWS_AS(GeomFromJson(missing), ValidationError);
  GeomConfig cfg;
  const GeomOutcome out = AlgGeom(geo, cfg);
  const std::string svg = GeomSvg(geo, &out);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}
