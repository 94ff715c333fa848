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

#ifndef FMC_ITERATED_HPP_
#define FMC_ITERATED_HPP_

// Deterministic iterated rounding for Node-FMC and general FMC.

#include <cstdint>
#include <string>
#include <vector>

#include "fmc/instance.hpp"
#include "fmc/lp.hpp"
#include "fmc/relax.hpp"

namespace fmc {

enum class IterMode { kConstChi, kGeneral };

const char* ToString(IterMode mode);

struct IterConfig {
  IterMode mode = IterMode::kConstChi;
  int max_chi = 3;                      // const-chi guard
  std::uint64_t max_branches = 2000000;  // LP branch starts before giving up
  bool trace = false;
  bool early_exit = true;
};

inline constexpr double kIntTol = 1e-7;

enum class IterCase { kDelete = 1, kFix = 2, kFinal = 3 };

struct IterTraceStep {
  int t = 0;
  IterCase action = IterCase::kDelete;
  std::vector<int> sets;  // deleted, fixed or finally selected
  int k_hat = 0;          // after the step
  std::vector<double> target_lo;
  std::vector<double> target_hi;
  double opt_frac = 0.0;  // LP optimum solved in this iteration
};

struct IterBranchResult {
  bool feasible = false;  // initial LP feasible and loop completed
  std::vector<int> selected;  // anchors plus rounded sets, sorted
  int iterations = 0;
  int initial_vars = 0;
  bool certificate_ok = true;
  bool identity_ok = true;
  std::vector<IterTraceStep> trace;
};

// Runs the rounding loop from `start` with `anchors` pre-selected.
IterBranchResult RunIterBranch(const FmcInstance& inst, const std::vector<int>& anchors,
                               IterLpState start, bool trace);

// Fact-2 check at a point with no 0/1 set variable: the point is a vertex
// (tight rank equals the variable count) and the number of set variables is
// at most chi + 1 (exact targets) or 2 chi + 1 (windows).
bool RankCertificate(const LpSolution& solution, const LpModel& model);

struct IterBounds {
  int max_sets = 0;
  double sigma = 0.0;  // strict upper bound
};

struct IterOutcome {
  Evaluation best;
  std::vector<int> anchors;
  int opt_count = 0;
  std::vector<double> target_lo;
  std::vector<double> target_hi;
  IterBounds bounds;
  bool meets_count_bound = false;
  bool meets_sigma_bound = false;
  std::uint64_t branches = 0;
  std::uint64_t feasible_branches = 0;
  int certificate_failures = 0;
  int identity_failures = 0;
  int max_iterations = 0;     // over all branches
  bool iterations_ok = true;  // every branch within its initial variable count
  bool partial = false;       // branch budget exhausted
  bool early_exit = false;
  std::vector<IterTraceStep> trace;  // of the best branch, when requested
  std::vector<int> selected_nodes;   // graph inputs only
  std::vector<std::string> notes;
};

IterBounds NodeBounds(int k, int chi, IterMode mode);
IterBounds FmcBounds(int k, int chi, int f, IterMode mode);

// Throws InfeasibleError when no branch yields an output, PreconditionError
// when chi exceeds the const-chi guard.
IterOutcome AlgIterFmc(const FmcInstance& inst, const IterConfig& cfg);
IterOutcome AlgIterNode(const ColoredGraph& g, int k, const IterConfig& cfg);

}  // namespace fmc

#endif  // FMC_ITERATED_HPP_
