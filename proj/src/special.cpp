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

#include "fmc/special.hpp"

#include <algorithm>
#include <cmath>

#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/lp.hpp"
#include "fmc/relax.hpp"

namespace fmc {

namespace {

constexpr double kSnap = 1e-9;

// Multilinear extension of the covered weight.
double Multilinear(const FmcInstance& inst, const std::vector<std::vector<int>>& sets_of,
                   const std::vector<double>& y) {
  double total = 0.0;
  for (int e = 0; e < inst.n(); ++e) {
    double miss = 1.0;
    for (int s : sets_of[e]) miss *= 1.0 - y[s];
    total += inst.weight(e) * (1.0 - miss);
  }
  return total;
}

FmcInstance Restrict(const FmcInstance& inst, const std::vector<int>& sets, int k) {
  std::vector<std::vector<int>> members;
  for (int s : sets) members.emplace_back(inst.set(s).begin(), inst.set(s).end());
  return FmcInstance::Create(inst.n(), k, inst.chi(), inst.weights(), inst.colors(),
                             std::move(members), inst.proportions());
}

std::vector<int> MapBack(const std::vector<int>& local, const std::vector<int>& sets) {
  std::vector<int> out;
  for (int s : local) out.push_back(sets[s]);
  return out;
}

// Reorders a selection so each set has the largest marginal among the rest.
std::vector<int> MarginalOrder(const FmcInstance& inst, std::vector<int> chosen) {
  std::sort(chosen.begin(), chosen.end());
  std::vector<char> covered(inst.n(), 0);
  std::vector<int> out;
  while (!chosen.empty()) {
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      double gain = 0.0;
      for (int e : inst.set(chosen[i])) {
        if (!covered[e]) gain += inst.weight(e);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    for (int e : inst.set(chosen[best])) covered[e] = 1;
    out.push_back(chosen[best]);
    chosen.erase(chosen.begin() + best);
  }
  return out;
}

}  // namespace

double Rho(double x) {
  if (!(x > 0.0)) throw PreconditionError("rho needs x > 0");
  return 1.0 - std::pow(1.0 - 1.0 / x, x);
}

double CoverWeight(const FmcInstance& inst, const std::vector<int>& selected) {
  std::vector<char> covered(inst.n(), 0);
  for (int s : selected) {
    for (int e : inst.set(s)) covered[e] = 1;
  }
  double total = 0.0;
  for (int e = 0; e < inst.n(); ++e) {
    if (covered[e]) total += inst.weight(e);
  }
  return total;
}

std::vector<int> GreedyKCover(const FmcInstance& inst, int k) {
  if (k < 0 || k > inst.m()) throw PreconditionError("k outside [0, m]");
  std::vector<char> covered(inst.n(), 0);
  std::vector<char> used(inst.m(), 0);
  std::vector<int> out;
  for (int round = 0; round < k; ++round) {
    int best = -1;
    double best_gain = -1.0;
    for (int s = 0; s < inst.m(); ++s) {
      if (used[s]) continue;
      std::vector<int> fresh;
      for (int e : inst.set(s)) {
        if (!covered[e]) fresh.push_back(e);
      }
      std::sort(fresh.begin(), fresh.end());
      double gain = 0.0;
      for (int e : fresh) gain += inst.weight(e);
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    used[best] = 1;
    for (int e : inst.set(best)) covered[e] = 1;
    out.push_back(best);
  }
  return out;
}

std::vector<int> PipageKCover(const FmcInstance& inst, int k) {
  if (k < 1 || k > inst.m()) throw PreconditionError("k outside [1, m]");
  const LpModel lp = BuildKCoverLp(inst, k);
  const LpSolution sol = SolveVertex(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("k-cover LP ") + ToString(sol.status));
  }
  std::vector<double> y(inst.m());
  for (int s = 0; s < inst.m(); ++s) {
    y[s] = std::clamp(sol.values[lp.Find(VarKind::kSet, s)], 0.0, 1.0);
  }
  std::vector<std::vector<int>> sets_of(inst.n());
  for (int s = 0; s < inst.m(); ++s) {
    for (int e : inst.set(s)) sets_of[e].push_back(s);
  }
  auto snap = [&](int s) {
    if (y[s] < kSnap) y[s] = 0.0;
    if (y[s] > 1.0 - kSnap) y[s] = 1.0;
  };
  for (int s = 0; s < inst.m(); ++s) snap(s);
  while (true) {
    int i = -1;
    int j = -1;
    for (int s = 0; s < inst.m() && j < 0; ++s) {
      if (y[s] == 0.0 || y[s] == 1.0) continue;
      if (i < 0) {
        i = s;
      } else {
        j = s;
      }
    }
    if (j < 0) break;
    const double yi = y[i];
    const double yj = y[j];
    const double up = std::min(1.0 - yi, yj);
    const double down = std::min(yi, 1.0 - yj);
    y[i] = yi + up;
    y[j] = yj - up;
    const double f_up = Multilinear(inst, sets_of, y);
    y[i] = yi - down;
    y[j] = yj + down;
    const double f_down = Multilinear(inst, sets_of, y);
    if (f_up >= f_down) {
      y[i] = yi + up;
      y[j] = yj - up;
    }
    snap(i);
    snap(j);
  }
  std::vector<int> out;
  for (int s = 0; s < inst.m(); ++s) {
    if (y[s] == 1.0) out.push_back(s);
  }
  if (static_cast<int>(out.size()) != k) {
    throw NumericalError("pipage rounding ended with " + std::to_string(out.size()) +
                         " sets instead of " + std::to_string(k));
  }
  return out;
}

SpecialOutcome AlgGreedPlus(const FmcInstance& inst, std::optional<int> opt_count_override) {
  if (!IsSegregated(inst)) throw PreconditionError("instance not segregated");
  if (!ComputeStats(inst).unweighted) {
    throw PreconditionError("greed-plus requires an unweighted instance");
  }
  const int chi = inst.chi();
  const int f = ComputeStats(inst).f;
  std::vector<std::vector<int>> by_color(chi);
  for (int s = 0; s < inst.m(); ++s) by_color[inst.color(inst.set(s).front())].push_back(s);

  std::vector<int> guesses;
  if (opt_count_override) {
    CheckOptCountGuess(inst, *opt_count_override);
    guesses = {*opt_count_override};
  } else {
    guesses = OptCountGuesses(inst);
  }
  for (int guess : guesses) {
    std::vector<int> selected;
    std::vector<int> per_color(chi, 0);
    bool ok = true;
    for (int r = 0; r < chi && ok; ++r) {
      const double share = guess * inst.proportions()[r].ToDouble();
      std::vector<int> small;
      for (int s : by_color[r]) {
        if (static_cast<double>(inst.set(s).size()) <= share + 1e-9) small.push_back(s);
      }
      const int budget = inst.k() - static_cast<int>(selected.size());
      const int limit = std::min<int>(budget, small.size());
      std::vector<int> found;
      double rho = 0.0;
      for (int kk = 1; kk <= limit && found.empty(); ++kk) {
        rho = std::max(Rho(kk), Rho(f));
        const FmcInstance sub = Restrict(inst, small, kk);
        std::vector<int> greedy = MapBack(GreedyKCover(sub, kk), small);
        std::vector<int> pipage = MapBack(PipageKCover(sub, kk), small);
        std::vector<int>& better =
            CoverWeight(inst, pipage) > CoverWeight(inst, greedy) ? pipage : greedy;
        if (CoverWeight(inst, better) >= rho * share - 1e-9) found = better;
      }
      if (found.empty()) {
        ok = false;
        break;
      }
      // Shortest marginal-ordered prefix reaching the target.
      const std::vector<int> order = MarginalOrder(inst, found);
      std::vector<int> prefix;
      for (int s : order) {
        prefix.push_back(s);
        if (CoverWeight(inst, prefix) >= rho * share - 1e-9) break;
      }
      if (static_cast<double>(inst.set(prefix.back()).size()) >= rho * share - 1e-9) {
        prefix = {prefix.back()};
      }
      per_color[r] = static_cast<int>(prefix.size());
      selected.insert(selected.end(), prefix.begin(), prefix.end());
    }
    if (!ok) continue;
    SpecialOutcome out;
    std::sort(selected.begin(), selected.end());
    out.best = Evaluate(inst, selected, 2.0, CardinalityMode::kAtMostK);
    out.opt_count = guess;
    out.per_color_sets = per_color;
    return out;
  }
  throw InfeasibleError("greed-plus: no OPT# guess succeeds for every color within k sets");
}

SpecialOutcome AlgBalanced(const FmcInstance& inst, int delta) {
  if (delta < 0) throw PreconditionError("delta must be non-negative");
  if (!IsDeltaBalanced(inst, delta)) {
    throw PreconditionError("instance not delta-balanced for delta = " + std::to_string(delta));
  }
  std::vector<int> greedy = GreedyKCover(inst, inst.k());
  std::vector<int> pipage = PipageKCover(inst, inst.k());
  SpecialOutcome out;
  const bool use_pipage = CoverWeight(inst, pipage) > CoverWeight(inst, greedy);
  out.baseline = use_pipage ? "pipage" : "greedy";
  std::vector<int> chosen = use_pipage ? pipage : greedy;
  std::sort(chosen.begin(), chosen.end());
  const double eps = (2.0 + 2.0 * delta) * ComputeStats(inst).f;
  out.best = Evaluate(inst, chosen, eps, CardinalityMode::kExactK);
  return out;
}

}  // namespace fmc
