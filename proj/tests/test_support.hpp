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

#ifndef FMC_TESTS_TEST_SUPPORT_HPP_
#define FMC_TESTS_TEST_SUPPORT_HPP_

// Reference computations used only by tests. Deliberately naive and written
// without any library helper beyond the instance accessors.

#include <algorithm>
#include <cmath>
#include <vector>

#include "fmc/instance.hpp"

namespace fmc::testing {

struct NaiveBest {
  bool feasible = false;
  double weight = -1.0;
  int count = -1;
  std::vector<int> sets;
  double unfair_weight = 0.0;
};

inline void NaiveCover(const FmcInstance& inst, const std::vector<int>& sel, double& weight,
                       int& count, std::vector<int>& p) {
  std::vector<bool> hit(inst.n(), false);
  for (int s : sel) {
    for (int e : inst.set(s)) hit[e] = true;
  }
  weight = 0.0;
  count = 0;
  p.assign(inst.chi(), 0);
  for (int e = 0; e < inst.n(); ++e) {
    if (!hit[e]) continue;
    weight += inst.weight(e);
    ++count;
    ++p[inst.color(e)];
  }
}

inline bool NaiveFair(const FmcInstance& inst, const std::vector<int>& p) {
  const auto& q = inst.proportions();
  for (int i = 0; i < inst.chi(); ++i) {
    for (int j = 0; j < inst.chi(); ++j) {
      const long double lhs = static_cast<long double>(p[i]) * q[j].num * q[i].den;
      const long double rhs = static_cast<long double>(p[j]) * q[i].num * q[j].den;
      if (lhs != rhs) return false;
    }
  }
  return true;
}

// Exhaustive search over exactly-k (or at-most-k) selections via a boolean
// mask permutation; tie-break weight, count, then lexicographic.
inline NaiveBest NaiveSolve(const FmcInstance& inst, bool at_most = false) {
  NaiveBest best;
  const int m = inst.m();
  for (int size = at_most ? 1 : inst.k(); size <= inst.k(); ++size) {
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + size, true);
    do {
      std::vector<int> sel;
      for (int s = 0; s < m; ++s) {
        if (mask[s]) sel.push_back(s);
      }
      double w;
      int c;
      std::vector<int> p;
      NaiveCover(inst, sel, w, c, p);
      best.unfair_weight = std::max(best.unfair_weight, w);
      if (!NaiveFair(inst, p)) continue;
      const bool better = !best.feasible || w > best.weight + 1e-9 ||
                          (std::abs(w - best.weight) <= 1e-9 &&
                           (c > best.count || (c == best.count && sel < best.sets)));
      if (better) {
        best.feasible = true;
        best.weight = w;
        best.count = c;
        best.sets = sel;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return best;
}

inline double NaiveRho(double x) { return 1.0 - std::pow(1.0 - 1.0 / x, x); }

}  // namespace fmc::testing

#endif  // FMC_TESTS_TEST_SUPPORT_HPP_
