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

#ifndef FMC_SPECIAL_HPP_
#define FMC_SPECIAL_HPP_

// Deterministic solvers for segregated and Delta-balanced instances, plus the
// greedy and pipage k-cover baselines they build on.

#include <optional>
#include <string>
#include <vector>

#include "fmc/instance.hpp"

namespace fmc {

// 1 - (1 - 1/x)^x. Throws PreconditionError for x <= 0.
double Rho(double x);

// k rounds of maximum marginal weight, ties by lowest index. Exactly k
// indices, in selection order.
std::vector<int> GreedyKCover(const FmcInstance& inst, int k);

// Pipage rounding of the k-cover LP optimum. Exactly k indices, sorted.
std::vector<int> PipageKCover(const FmcInstance& inst, int k);

// Covered weight of a selection, summed in ascending element order.
double CoverWeight(const FmcInstance& inst, const std::vector<int>& selected);

struct SpecialOutcome {
  Evaluation best;
  std::optional<int> opt_count;         // accepted guess (greed-plus)
  std::vector<int> per_color_sets;      // sets chosen per color (greed-plus)
  std::string baseline;                 // "greedy" or "pipage" (balanced)
  std::vector<std::string> notes;
};

// Unweighted segregated instances only. Guesses OPT# from the largest down
// and returns the first guess whose per-color searches all succeed within k
// sets. Throws InfeasibleError when no guess succeeds.
SpecialOutcome AlgGreedPlus(const FmcInstance& inst,
                            std::optional<int> opt_count_override = std::nullopt);

// Better of greedy and pipage with colors ignored, exactly k sets. Throws
// PreconditionError when the instance is not delta-balanced.
SpecialOutcome AlgBalanced(const FmcInstance& inst, int delta);

}  // namespace fmc

#endif  // FMC_SPECIAL_HPP_
