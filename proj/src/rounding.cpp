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

#include "fmc/rounding.hpp"

#include <cmath>
#include <string>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

bool Fractional(double v) { return v > 0.0 && v < 1.0; }

double Snap(double v) {
  if (v < kRoundSnap) return 0.0;
  if (v > 1.0 - kRoundSnap) return 1.0;
  return v;
}

// One pipage step on (a, b); afterwards at least one of them is integral.
void PairStep(double& a, double& b, CounterRng& rng) {
  const double s = a + b;
  const double u = rng.NextDouble();
  if (s <= 1.0) {
    if (u * s < a) {
      a = s;
      b = 0.0;
    } else {
      a = 0.0;
      b = s;
    }
  } else {
    if (u * (2.0 - s) < 1.0 - b) {
      a = 1.0;
      b = s - 1.0;
    } else {
      a = s - 1.0;
      b = 1.0;
    }
  }
  a = Snap(a);
  b = Snap(b);
}

}  // namespace

std::vector<int> DependentRound(std::span<const double> p, CounterRng& rng) {
  const int r = static_cast<int>(p.size());
  std::vector<double> v(p.begin(), p.end());
  double sum = 0.0;
  for (int i = 0; i < r; ++i) {
    if (!(v[i] >= -kMarginalTol && v[i] <= 1.0 + kMarginalTol)) {
      throw PreconditionError("marginal " + std::to_string(i + 1) + " outside [0, 1]");
    }
    v[i] = Snap(std::min(1.0, std::max(0.0, v[i])));
    sum += v[i];
  }
  const double ell = std::round(sum);
  if (std::abs(sum - ell) > std::max(1, r) * kMarginalTol) {
    throw PreconditionError("marginals do not sum to an integer");
  }

  // Balanced tournament: pair fractional survivors level by level.
  std::vector<int> level;
  for (int i = 0; i < r; ++i) {
    if (Fractional(v[i])) level.push_back(i);
  }
  while (level.size() > 1) {
    std::vector<int> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      const int a = level[i];
      const int b = level[i + 1];
      PairStep(v[a], v[b], rng);
      if (Fractional(v[a])) next.push_back(a);
      if (Fractional(v[b])) next.push_back(b);
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }

  std::vector<int> x(r);
  int total = 0;
  for (int i = 0; i < r; ++i) {
    x[i] = v[i] >= 0.5 ? 1 : 0;
    total += x[i];
  }
  // A lone survivor carries only floating-point drift; absorb it so the
  // cardinality is exact.
  const int want = static_cast<int>(ell);
  if (!level.empty()) {
    const int last = level.front();
    const int rest = total - x[last];
    const int fix = want - rest;
    if (fix != 0 && fix != 1) throw NumericalError("dependent rounding lost the integral sum");
    x[last] = fix;
    total = rest + fix;
  }
  if (total != want) throw NumericalError("dependent rounding lost the integral sum");
  return x;
}

std::vector<int> InduceElements(const FmcInstance& inst, std::span<const int> y) {
  if (static_cast<int>(y.size()) != inst.m()) {
    throw PreconditionError("set indicator has the wrong length");
  }
  std::vector<int> x(inst.n(), 0);
  for (int s = 0; s < inst.m(); ++s) {
    if (!y[s]) continue;
    for (int e : inst.set(s)) x[e] = 1;
  }
  return x;
}

}  // namespace fmc
