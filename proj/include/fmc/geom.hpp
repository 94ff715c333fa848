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

#ifndef FMC_GEOM_HPP_
#define FMC_GEOM_HPP_

// Planar fair coverage with unit disks over weighted colored point clouds:
// the shifted-grid dynamic program and an exhaustive lattice oracle.
//
// JSON: { "delta", "epsilon", "lipschitz", "k",
//         "points": [[x, y, color, weight], ...] }  (colors 1-based)

#include <cstdint>
#include <string>
#include <vector>

#include "fmc/generate.hpp"
#include "fmc/io.hpp"

namespace fmc {

struct GeomPoint {
  double x = 0.0;
  double y = 0.0;
  int color = 0;  // 0-based
  double weight = 1.0;
};

struct GeomInstance {
  double delta = 1.0;  // domain is [0, delta]^2
  double epsilon = 0.5;
  double lipschitz = 1.0;
  int k = 1;
  int chi = 1;
  std::vector<GeomPoint> points;
};

// Throws ValidationError on points outside the domain, colors with no
// positive weight, k < 1, epsilon outside (0, 1) or non-positive C.
void ValidateGeom(const GeomInstance& geo);

bool LooksLikeGeom(const Json& j);
GeomInstance GeomFromJson(const Json& j);
Json GeomToJson(const GeomInstance& geo);

// Params: points, chi, side, clusters, k, epsilon, lipschitz, weighted.
GeomInstance GenerateGeom(const Params& params, std::uint64_t seed);

// Snap lattice step eps / (8 C) and grid spacing 16 / eps.
double LatticeStep(const GeomInstance& geo);
double CellSide(const GeomInstance& geo);

struct Ball {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Ball&, const Ball&) = default;
};

struct GeomEvaluation {
  std::vector<Ball> centers;
  std::vector<double> per_color;  // covered weight, each point once
  double coverage = 0.0;
  double ratio = kInfinity;  // max / min per-color weight
  bool fair = false;         // ratio <= 1 + epsilon
};

// Direct point-in-union scan.
GeomEvaluation EvaluateBalls(const GeomInstance& geo, const std::vector<Ball>& centers);

struct GeomConfig {
  std::uint64_t seed = 0;
  int repetitions = 0;  // 0: ceil(log2 n), at least 1
  int subset_cap = 3;   // balls per cell
  int center_cap = 40;  // candidate centers per cell
  std::uint64_t max_subsets_per_cell = 1000000;
};

struct GeomRepetition {
  double shift_x = 0.0;
  double shift_y = 0.0;
  int cells = 0;            // cells holding at least one candidate
  int candidates = 0;       // after dedup and capping
  bool admissible = false;  // a vector passed the window
  GeomEvaluation eval;
  std::vector<double> rounded;  // DP tally per color
};

struct GeomOutcome {
  GeomEvaluation best;
  std::vector<double> rounded;
  int best_repetition = -1;
  std::vector<GeomRepetition> repetitions;
  double lattice_step = 0.0;
  double cell_side = 0.0;
  std::vector<std::string> notes;
};

GeomOutcome AlgGeom(const GeomInstance& geo, const GeomConfig& cfg);

struct GeomOracleResult {
  bool fair_found = false;
  GeomEvaluation fair_best;  // best coverage with ratio <= 1 + epsilon
  GeomEvaluation unconstrained;
  std::uint64_t enumerated = 0;
};

// Exhaustive over subsets of at most k lattice centers (one representative
// per distinct covered point set). Throws BudgetExceeded past `budget`.
GeomOracleResult GeomOracle(const GeomInstance& geo, std::uint64_t budget = 1000000);

// Static plot of points, balls and the winning shifted grid.
std::string GeomSvg(const GeomInstance& geo, const GeomOutcome* outcome);

}  // namespace fmc

#endif  // FMC_GEOM_HPP_
