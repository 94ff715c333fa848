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

#ifndef FMC_RANDOMIZED_HPP_
#define FMC_RANDOMIZED_HPP_

// LP-rounding solvers: large, medium and small OPT# regimes, plus the
// min-sigma boosting wrapper.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmc/instance.hpp"
#include "fmc/lp.hpp"

namespace fmc {

enum class RandomizedAlg { kLarge, kMedium, kSmall };

const char* ToString(RandomizedAlg alg);

struct RandomizedRunConfig {
  RandomizedAlg algorithm = RandomizedAlg::kLarge;
  int trials = 0;  // 0: ceil(5 ln n)
  std::uint64_t seed = 0;
  std::optional<int> opt_count_override;
  int small_max_chi = 3;
  std::uint64_t small_max_combinations = 100000;
  bool keep_trace = true;
};

int DefaultTrials(int n);

struct TrialRecord {
  int guess_index = 0;  // into SolverOutcome::guesses
  int trial = 0;
  double weight = 0.0;
  std::vector<int> p;
  double sigma = 1.0;
  int count = 0;  // sets selected
};

struct GuessRecord {
  int opt_count = 0;
  LpStatus status = LpStatus::kInfeasible;
  double opt_frac = 0.0;
  bool rounded = false;  // false when skipped by pruning or infeasible
  std::vector<int> psi_prime;  // small mode only
  std::vector<int> anchors;    // small mode only
};

struct SolverOutcome {
  Evaluation best;
  int best_guess_index = -1;
  int opt_count = 0;      // OPT# guess behind the best solution
  double opt_frac = 0.0;  // LP optimum at that guess
  std::vector<GuessRecord> guesses;
  std::vector<TrialRecord> trials;
  std::vector<std::string> notes;
};

// Strict ordering used for every "best solution" choice: sigma ascending
// (infinity last), weight descending, then lexicographically smaller set list.
bool BetterSolution(const Evaluation& a, const Evaluation& b);

// Throws InfeasibleError when every guess yields an infeasible LP.
SolverOutcome AlgLarge(const FmcInstance& inst, const RandomizedRunConfig& cfg);
SolverOutcome AlgMedium(const FmcInstance& inst, const RandomizedRunConfig& cfg);
// Also throws PreconditionError when chi exceeds cfg.small_max_chi.
SolverOutcome AlgSmall(const FmcInstance& inst, const RandomizedRunConfig& cfg);

SolverOutcome RunRandomized(const FmcInstance& inst, const RandomizedRunConfig& cfg);

// Rounds the set part of an LP solution `trials` times; exactly k sets each.
using TrialBody = std::function<Evaluation(std::uint64_t trial_seed)>;

TrialBody MakeRoundingTrial(const FmcInstance& inst, std::vector<double> y);

// Runs `body` for trials 0..trials-1 with seeds derived from `seed`; returns
// the best by BetterSolution (earliest trial on exact ties).
Evaluation Boost(const TrialBody& body, int trials, std::uint64_t seed,
                 std::vector<Evaluation>* trace = nullptr);

}  // namespace fmc

#endif  // FMC_RANDOMIZED_HPP_
