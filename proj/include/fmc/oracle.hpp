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

#ifndef FMC_ORACLE_HPP_
#define FMC_ORACLE_HPP_

// Brute-force ground truth for small instances. Exists to be obviously
// correct, not fast.

#include <cstdint>
#include <optional>
#include <vector>

#include "fmc/instance.hpp"

namespace fmc {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

struct OracleResult {
  bool feasible = false;
  std::optional<double> opt_weight;  // OPT
  std::optional<int> opt_count;      // OPT#
  std::optional<Solution> witness;
  double opt_unfair_weight = 0.0;  // best k-cover ignoring colors
  std::vector<int> unfair_witness;
  std::uint64_t enumerated = 0;
};

// C(n, r), saturating at UINT64_MAX.
std::uint64_t Binomial(int n, int r);

// Enumerates every exactly-k selection. Among fair selections keeps the
// largest weight, then the largest covered count, then the lexicographically
// smallest index list. Throws BudgetExceeded when C(m, k) > budget.
// `threads` > 1 stripes the enumeration by first index; the merge uses the
// same order so the result equals the serial one.
OracleResult ExactSolve(const FmcInstance& inst, std::uint64_t budget = kDefaultOracleBudget,
                        int threads = 1);

// True iff some selection of at most k sets is fair.
bool FeasibleAtMost(const FmcInstance& inst, std::uint64_t budget = kDefaultOracleBudget);

}  // namespace fmc

#endif  // FMC_ORACLE_HPP_
