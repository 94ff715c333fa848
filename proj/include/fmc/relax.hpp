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

#ifndef FMC_RELAX_HPP_
#define FMC_RELAX_HPP_

// Builders for the LP relaxations used by the solvers.
//
// Row tags: "coverage" (x_j <= sum y), "cardinality" (sum y = k),
// "covering" (x_j >= y_l), "opt_count" (sum x = OPT#), "color_eq"
// (pairwise color balance), "nu" (sum nu_ij y_i = OPT# h_j), "ln_chi"
// (small-mode lower bounds), "incidence" (x_{e,u} = y_u), "color_target"
// and "color_lo" / "color_hi" (iterated rounding).

#include <vector>

#include "fmc/instance.hpp"
#include "fmc/lp.hpp"

namespace fmc {

// Admissible OPT# guesses, descending: every c in [1, n] with c * q_j
// integral for all colors (multiples of chi for equal proportions).
std::vector<int> OptCountGuesses(const FmcInstance& inst);

// Throws PreconditionError when `opt_count` is not an admissible guess.
void CheckOptCountGuess(const FmcInstance& inst, int opt_count);

LpModel BuildLargeLp(const FmcInstance& inst, int opt_count);

LpModel BuildMediumLp(const FmcInstance& inst, int opt_count);

// anchors[i] is the set fixed for color psi_prime[i].
LpModel BuildSmallLp(const FmcInstance& inst, int opt_count, const std::vector<int>& psi_prime,
                     const std::vector<int>& anchors);

inline constexpr double kStrictSurrogate = 1e-6;

// Right-hand side of the small-mode rows: 5 ln chi + surrogate.
double SmallModeThreshold(int chi);

// The standard k-cover relaxation without colors:
// max sum w x, x_j <= sum_{l ∋ j} y_l, sum y = k, 0 <= x, y <= 1.
LpModel BuildKCoverLp(const FmcInstance& inst, int k);

struct IterLpState {
  std::vector<int> sets;           // remaining candidate sets, ascending
  std::vector<char> element_live;  // size n: element still in the reduced universe
  int k_hat = 0;
  bool window = false;
  // Per-color bounds on the incidence count; lo == hi in exact mode.
  std::vector<double> target_lo;
  std::vector<double> target_hi;
};

// One incidence variable x_{e,u} per live element e of every remaining set u.
LpModel BuildIterLp(const FmcInstance& inst, const IterLpState& state);

}  // namespace fmc

#endif  // FMC_RELAX_HPP_
