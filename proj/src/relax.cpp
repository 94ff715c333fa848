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

#include "fmc/relax.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

bool Admissible(const FmcInstance& inst, int c) {
  for (const Rational& q : inst.proportions()) {
    if ((static_cast<std::int64_t>(c) * q.num) % q.den != 0) return false;
  }
  return true;
}

// Rows shared by the large, medium and small relaxations.
LpModel BuildBase(const FmcInstance& inst, int opt_count) {
  CheckOptCountGuess(inst, opt_count);
  LpModel lp;
  std::vector<int> yv(inst.m());
  std::vector<int> xv(inst.n());
  for (int s = 0; s < inst.m(); ++s) yv[s] = lp.AddVariable(VarKind::kSet, s, 0.0, 1.0, 0.0);
  for (int e = 0; e < inst.n(); ++e) {
    xv[e] = lp.AddVariable(VarKind::kElement, e, 0.0, 1.0, inst.weight(e));
  }
  std::vector<std::vector<int>> containing(inst.n());
  for (int s = 0; s < inst.m(); ++s) {
    for (int e : inst.set(s)) containing[e].push_back(s);
  }
  for (int e = 0; e < inst.n(); ++e) {
    std::vector<std::pair<int, double>> terms{{xv[e], 1.0}};
    for (int s : containing[e]) terms.push_back({yv[s], -1.0});
    lp.AddRow(std::move(terms), RowSense::kLe, 0.0, "coverage");
  }
  std::vector<std::pair<int, double>> card;
  for (int s = 0; s < inst.m(); ++s) card.push_back({yv[s], 1.0});
  lp.AddRow(std::move(card), RowSense::kEq, inst.k(), "cardinality");
  for (int s = 0; s < inst.m(); ++s) {
    for (int e : inst.set(s)) {
      lp.AddRow({{xv[e], 1.0}, {yv[s], -1.0}}, RowSense::kGe, 0.0, "covering");
    }
  }
  std::vector<std::pair<int, double>> total;
  for (int e = 0; e < inst.n(); ++e) total.push_back({xv[e], 1.0});
  lp.AddRow(std::move(total), RowSense::kEq, opt_count, "opt_count");
  const auto& q = inst.proportions();
  for (int i = 0; i < inst.chi(); ++i) {
    for (int j = i + 1; j < inst.chi(); ++j) {
      // sum_{C_i} x / q_i = sum_{C_j} x / q_j, scaled to integer coefficients.
      std::int64_t ci = q[i].den * q[j].num;
      std::int64_t cj = q[j].den * q[i].num;
      const std::int64_t g = std::gcd(ci, cj);
      ci /= g;
      cj /= g;
      std::vector<std::pair<int, double>> terms;
      for (int e = 0; e < inst.n(); ++e) {
        if (inst.color(e) == i) terms.push_back({xv[e], static_cast<double>(ci)});
        if (inst.color(e) == j) terms.push_back({xv[e], -static_cast<double>(cj)});
      }
      lp.AddRow(std::move(terms), RowSense::kEq, 0.0, "color_eq");
    }
  }
  return lp;
}

}  // namespace

std::vector<int> OptCountGuesses(const FmcInstance& inst) {
  std::vector<int> out;
  for (int c = inst.n(); c >= 1; --c) {
    if (Admissible(inst, c)) out.push_back(c);
  }
  return out;
}

void CheckOptCountGuess(const FmcInstance& inst, int opt_count) {
  if (opt_count < 1 || opt_count > inst.n() || !Admissible(inst, opt_count)) {
    throw PreconditionError("OPT# guess " + std::to_string(opt_count) +
                            " is not an admissible count in [1, " + std::to_string(inst.n()) +
                            "] (must split exactly by the color proportions)");
  }
}

LpModel BuildLargeLp(const FmcInstance& inst, int opt_count) {
  return BuildBase(inst, opt_count);
}

LpModel BuildMediumLp(const FmcInstance& inst, int opt_count) {
  LpModel lp = BuildBase(inst, opt_count);
  const int f = ComputeStats(inst).f;
  const auto nu = ColorCountsPerSet(inst);
  for (int c = 0; c < inst.chi(); ++c) {
    const double q = inst.proportions()[c].ToDouble();
    const int h = lp.AddVariable(VarKind::kAux, c, q, f * q, 0.0);
    std::vector<std::pair<int, double>> terms;
    for (int s = 0; s < inst.m(); ++s) {
      if (nu[s][c] > 0) terms.push_back({lp.Find(VarKind::kSet, s), static_cast<double>(nu[s][c])});
    }
    terms.push_back({h, -static_cast<double>(opt_count)});
    lp.AddRow(std::move(terms), RowSense::kEq, 0.0, "nu");
  }
  return lp;
}

double SmallModeThreshold(int chi) { return 5.0 * std::log(static_cast<double>(chi)) + kStrictSurrogate; }

LpModel BuildSmallLp(const FmcInstance& inst, int opt_count, const std::vector<int>& psi_prime,
                     const std::vector<int>& anchors) {
  if (psi_prime.size() != anchors.size()) {
    throw PreconditionError("one anchor set is needed per anchored color");
  }
  std::vector<char> anchored(inst.chi(), 0);
  for (std::size_t i = 0; i < psi_prime.size(); ++i) {
    const int c = psi_prime[i];
    const int s = anchors[i];
    if (c < 0 || c >= inst.chi()) throw PreconditionError("anchored color out of range");
    if (anchored[c]) throw PreconditionError("color " + std::to_string(c + 1) + " anchored twice");
    if (s < 0 || s >= inst.m()) throw PreconditionError("anchor set out of range");
    bool has = false;
    for (int e : inst.set(s)) has = has || inst.color(e) == c;
    if (!has) {
      throw PreconditionError("anchor set " + std::to_string(s + 1) + " lacks color " +
                              std::to_string(c + 1));
    }
    anchored[c] = 1;
  }
  LpModel lp = BuildBase(inst, opt_count);
  for (int s : anchors) {
    lp.SetBounds(lp.Find(VarKind::kSet, s), 1.0, 1.0);
    for (int e : inst.set(s)) lp.SetBounds(lp.Find(VarKind::kElement, e), 1.0, 1.0);
  }
  lp.PruneRedundantRows();
  const double rhs = SmallModeThreshold(inst.chi());
  for (int c = 0; c < inst.chi(); ++c) {
    if (anchored[c]) continue;
    std::vector<std::pair<int, double>> terms;
    for (int s = 0; s < inst.m(); ++s) {
      bool has = false;
      for (int e : inst.set(s)) has = has || inst.color(e) == c;
      if (has) terms.push_back({lp.Find(VarKind::kSet, s), 1.0});
    }
    lp.AddRow(std::move(terms), RowSense::kGe, rhs, "ln_chi");
  }
  return lp;
}

LpModel BuildKCoverLp(const FmcInstance& inst, int k) {
  if (k < 1 || k > inst.m()) throw PreconditionError("k outside [1, m]");
  LpModel lp;
  for (int s = 0; s < inst.m(); ++s) lp.AddVariable(VarKind::kSet, s, 0.0, 1.0, 0.0);
  std::vector<int> xv(inst.n());
  for (int e = 0; e < inst.n(); ++e) {
    xv[e] = lp.AddVariable(VarKind::kElement, e, 0.0, 1.0, inst.weight(e));
  }
  std::vector<std::vector<std::pair<int, double>>> cover(inst.n());
  for (int e = 0; e < inst.n(); ++e) cover[e].push_back({xv[e], 1.0});
  for (int s = 0; s < inst.m(); ++s) {
    for (int e : inst.set(s)) cover[e].push_back({s, -1.0});
  }
  for (int e = 0; e < inst.n(); ++e) lp.AddRow(std::move(cover[e]), RowSense::kLe, 0.0, "coverage");
  std::vector<std::pair<int, double>> card;
  for (int s = 0; s < inst.m(); ++s) card.push_back({s, 1.0});
  lp.AddRow(std::move(card), RowSense::kEq, k, "cardinality");
  return lp;
}

LpModel BuildIterLp(const FmcInstance& inst, const IterLpState& state) {
  if (state.k_hat < 0) throw PreconditionError("inconsistent state: negative remaining budget");
  if (state.sets.empty() && state.k_hat > 0) {
    throw PreconditionError("inconsistent state: no candidate sets left but budget remains");
  }
  if (static_cast<int>(state.element_live.size()) != inst.n() ||
      static_cast<int>(state.target_lo.size()) != inst.chi() ||
      static_cast<int>(state.target_hi.size()) != inst.chi()) {
    throw PreconditionError("inconsistent state: vector sizes do not match the instance");
  }
  LpModel lp;
  std::vector<std::vector<std::pair<int, double>>> per_color(inst.chi());
  std::vector<std::pair<int, double>> card;
  for (int s : state.sets) {
    const int y = lp.AddVariable(VarKind::kSet, s, 0.0, 1.0, 0.0);
    card.push_back({y, 1.0});
    for (int e : inst.set(s)) {
      if (!state.element_live[e]) continue;
      const int x = lp.AddVariable(VarKind::kIncidence, e, 0.0, 1.0, inst.weight(e), s);
      lp.AddRow({{x, 1.0}, {y, -1.0}}, RowSense::kEq, 0.0, "incidence");
      per_color[inst.color(e)].push_back({x, 1.0});
    }
  }
  lp.AddRow(std::move(card), RowSense::kEq, state.k_hat, "cardinality");
  for (int c = 0; c < inst.chi(); ++c) {
    if (state.window) {
      lp.AddRow(per_color[c], RowSense::kGe, state.target_lo[c], "color_lo");
      lp.AddRow(std::move(per_color[c]), RowSense::kLe, state.target_hi[c], "color_hi");
    } else {
      lp.AddRow(std::move(per_color[c]), RowSense::kEq, state.target_lo[c], "color_target");
    }
  }
  return lp;
}

}  // namespace fmc
