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

#ifndef FMC_ROUNDING_HPP_
#define FMC_ROUNDING_HPP_

// Sum- and marginal-preserving dependent rounding (Srinivasan's pipage
// tournament) and the induced element cover.

#include <span>
#include <vector>

#include "fmc/instance.hpp"
#include "fmc/rng.hpp"

namespace fmc {

inline constexpr double kRoundSnap = 1e-12;
inline constexpr double kMarginalTol = 1e-9;

// Rounds p (each in [0, 1], integral sum l) to X in {0, 1}^r with sum X = l
// on every call and Pr[X_i = 1] = p_i. Throws PreconditionError for
// marginals outside [0, 1] or a non-integral sum.
std::vector<int> DependentRound(std::span<const double> p, CounterRng& rng);

// Indicator of the union of the selected sets; y is a 0/1 vector of length m.
std::vector<int> InduceElements(const FmcInstance& inst, std::span<const int> y);

}  // namespace fmc

#endif  // FMC_ROUNDING_HPP_
