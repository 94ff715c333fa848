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

#include "fmc/iterated.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "fmc/errors.hpp"

namespace fmc {

const char* ToString(IterMode mode) {
  return mode == IterMode::kConstChi ? "const-chi" : "general";
}

bool RankCertificate(const LpSolution& solution, const LpModel& model) {
  if (solution.status != LpStatus::kOptimal) return false;
  // Sets with no live incidence are residual empties and do not count.
  std::vector<int> live_sets;
  for (const auto& v : model.vars()) {
    if (v.kind == VarKind::kIncidence) live_sets.push_back(v.index2);
  }
  std::sort(live_sets.begin(), live_sets.end());
  const int set_vars = static_cast<int>(
      std::unique(live_sets.begin(), live_sets.end()) - live_sets.begin());
  const int window_rows = model.CountRows("color_lo");
  const bool window = window_rows > 0;
  const int chi = window ? window_rows : model.CountRows("color_target");
  const int bound = window ? 2 * chi + 1 : chi + 1;
  return TightRank(model, solution.values) == model.num_vars() && set_vars <= bound;
}

IterBranchResult RunIterBranch(const FmcInstance& inst, const std::vector<int>& anchors,
                               IterLpState st, bool trace) {
  IterBranchResult res;
  std::vector<int> chosen;
  std::optional<double> expected;  // LP optimum predicted by the previous step
  int t = 0;
  while (true) {
    const LpModel lp = BuildIterLp(inst, st);
    if (t == 0) res.initial_vars = lp.num_vars();
    const LpSolution sol = SolveVertex(lp);
    if (sol.status != LpStatus::kOptimal) {
      if (t > 0) res.identity_ok = false;
      return res;
    }
    if (expected && std::abs(*expected - sol.objective) > 1e-6 * std::max(1.0, std::abs(*expected))) {
      res.identity_ok = false;
    }
    if (st.sets.empty()) break;
    ++t;
    IterTraceStep step;
    step.t = t;
    step.opt_frac = sol.objective;

    std::vector<double> y(st.sets.size());
    for (std::size_t i = 0; i < st.sets.size(); ++i) {
      y[i] = sol.values[lp.Find(VarKind::kSet, st.sets[i])];
    }
    std::vector<int> keep;
    for (std::size_t i = 0; i < st.sets.size(); ++i) {
      if (y[i] <= kIntTol) {
        step.sets.push_back(st.sets[i]);
      } else {
        keep.push_back(st.sets[i]);
      }
    }
    if (!step.sets.empty()) {
      step.action = IterCase::kDelete;
      st.sets = std::move(keep);
      expected = sol.objective;
    } else {
      int one = -1;
      for (std::size_t i = 0; i < st.sets.size(); ++i) {
        if (y[i] >= 1.0 - kIntTol) {
          one = static_cast<int>(i);
          break;
        }
      }
      if (one >= 0) {
        const int s = st.sets[one];
        double fixed = 0.0;
        for (int e : inst.set(s)) {
          if (!st.element_live[e]) continue;
          fixed += inst.weight(e);
          st.target_lo[inst.color(e)] -= 1.0;
          st.target_hi[inst.color(e)] -= 1.0;
        }
        --st.k_hat;
        chosen.push_back(s);
        st.sets.erase(st.sets.begin() + one);
        step.action = IterCase::kFix;
        step.sets = {s};
        expected = sol.objective - fixed;
      } else {
        if (!RankCertificate(sol, lp)) {
          res.certificate_ok = false;
          return res;
        }
        step.action = IterCase::kFinal;
        for (std::size_t i = 0; i < st.sets.size(); ++i) {
          if (y[i] > kIntTol) {
            chosen.push_back(st.sets[i]);
            step.sets.push_back(st.sets[i]);
          }
        }
        st.k_hat = 0;
        st.sets.clear();
      }
    }
    step.k_hat = st.k_hat;
    step.target_lo = st.target_lo;
    step.target_hi = st.target_hi;
    if (trace) res.trace.push_back(std::move(step));
    if (st.sets.empty()) break;
  }
  res.iterations = t;
  res.feasible = true;
  res.selected = anchors;
  res.selected.insert(res.selected.end(), chosen.begin(), chosen.end());
  std::sort(res.selected.begin(), res.selected.end());
  res.selected.erase(std::unique(res.selected.begin(), res.selected.end()), res.selected.end());
  return res;
}

IterBounds NodeBounds(int k, int chi, IterMode mode) {
  if (mode == IterMode::kConstChi) return {k + (chi - 1) / 2, 4.0 + 4.0 * chi};
  return {k + chi - 1, 4.0 + 2.0 * chi + 4.0 * chi * chi};
}

IterBounds FmcBounds(int k, int chi, int f, IterMode mode) {
  const double c = chi;
  const double ff = f;
  if (mode == IterMode::kConstChi) {
    return {k + (chi - 1) / 2, std::min(c * c * ff + ff * ff, 2.0 * c * ff * ff)};
  }
  return {k + chi - 1, ff * ff + 3.0 * c * c * ff};
}

namespace {

struct Candidate {
  Evaluation eval;
  std::vector<int> anchors;
  int opt_count = 0;
  std::vector<double> lo;
  std::vector<double> hi;
  IterLpState start;
  bool count_ok = false;
  bool sigma_ok = false;
};

// Count bound first, then sigma bound, then weight, sigma, set list.
bool Preferred(const Candidate& a, const Candidate& b) {
  if (a.count_ok != b.count_ok) return a.count_ok;
  if (a.sigma_ok != b.sigma_ok) return a.sigma_ok;
  if (a.eval.solution.weight != b.eval.solution.weight) {
    return a.eval.solution.weight > b.eval.solution.weight;
  }
  if (a.eval.fairness.sigma != b.eval.fairness.sigma) {
    return a.eval.fairness.sigma < b.eval.fairness.sigma;
  }
  return a.eval.solution.selected < b.eval.solution.selected;
}

// Next r-combination of {0..n-1} in lexicographic order.
bool NextCombination(std::vector<int>& c, int n) {
  const int r = static_cast<int>(c.size());
  int i = r - 1;
  while (i >= 0 && c[i] == n - r + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  return true;
}

class IterSearch {
 public:
  IterSearch(const FmcInstance& inst, const IterConfig& cfg, IterBounds bounds, int factor)
      : inst_(inst), cfg_(cfg), bounds_(bounds), factor_(factor) {
    const int cap = std::min(bounds.max_sets, inst.m());
    const LpSolution ub = SolveVertex(BuildKCoverLp(inst, cap));
    weight_ceiling_ = ub.objective;
  }

  IterOutcome Run() {
    const int m = inst_.m();
    const int anchor_count =
        cfg_.mode == IterMode::kConstChi ? std::min(inst_.chi() + 1, inst_.k()) : 1;
    if (cfg_.mode == IterMode::kConstChi && anchor_count < inst_.chi() + 1) {
      out_.notes.push_back("k < chi + 1: guessing " + std::to_string(anchor_count) +
                           " anchor sets instead of chi + 1");
    }
    if (inst_.k() <= 10 * inst_.chi()) {
      out_.notes.push_back("k <= 10 chi: outside the large-k regime assumed by the analysis");
    }
    // Sets by cardinality descending, index ascending.
    std::vector<int> order(m);
    for (int s = 0; s < m; ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return inst_.set(a).size() > inst_.set(b).size();
    });

    for (int guess : OptCountGuesses(inst_)) {
      std::vector<int> pick(anchor_count);
      for (int i = 0; i < anchor_count; ++i) pick[i] = i;
      do {
        std::vector<int> anchors;
        for (int i : pick) anchors.push_back(order[i]);
        // The last picked position has the smallest cardinality.
        const int v1 = order[pick.back()];
        if (!RunAnchors(guess, anchors, inst_.set(v1).size())) return Finish();
      } while (NextCombination(pick, m));
    }
    return Finish();
  }

 private:
  // False when the search must stop (budget or early exit).
  bool RunAnchors(int guess, std::vector<int> anchors, std::size_t v1_size) {
    std::sort(anchors.begin(), anchors.end());
    const int chi = inst_.chi();
    IterLpState st;
    st.element_live.assign(inst_.n(), 1);
    std::vector<double> mu(chi, 0.0);
    for (int a : anchors) {
      for (int e : inst_.set(a)) {
        if (st.element_live[e]) mu[inst_.color(e)] += 1.0;
        st.element_live[e] = 0;
      }
    }
    for (int s = 0; s < inst_.m(); ++s) {
      if (std::binary_search(anchors.begin(), anchors.end(), s)) continue;
      if (inst_.set(s).size() > v1_size) continue;
      st.sets.push_back(s);
    }
    st.k_hat = inst_.k() - static_cast<int>(anchors.size());
    if (static_cast<int>(st.sets.size()) < st.k_hat) return true;
    std::vector<double> base(chi);
    for (int c = 0; c < chi; ++c) {
      base[c] = guess * inst_.proportions()[c].ToDouble() - mu[c];
      if (base[c] < -1e-9) return true;  // anchors already exceed this color's share
    }
    if (cfg_.mode == IterMode::kGeneral) {
      st.window = true;
      st.target_lo = base;
      st.target_hi.resize(chi);
      for (int c = 0; c < chi; ++c) st.target_hi[c] = factor_ * base[c];
      return RunBranch(guess, anchors, st);
    }
    // Exact targets: every integer tuple inside the windows.
    std::vector<int> live_incidences(chi, 0);
    int max_size = 0;
    for (int s : st.sets) {
      int size = 0;
      for (int e : inst_.set(s)) {
        if (!st.element_live[e]) continue;
        ++live_incidences[inst_.color(e)];
        ++size;
      }
      max_size = std::max(max_size, size);
    }
    std::vector<int> lo(chi);
    std::vector<int> hi(chi);
    for (int c = 0; c < chi; ++c) {
      lo[c] = static_cast<int>(std::ceil(base[c] - 1e-9));
      hi[c] = std::min(static_cast<int>(std::floor(factor_ * base[c] + 1e-9)), live_incidences[c]);
      if (lo[c] > hi[c]) return true;
    }
    std::vector<int> q = lo;
    while (true) {
      int total = 0;
      for (int v : q) total += v;
      if (total <= st.k_hat * max_size) {
        IterLpState exact = st;
        exact.target_lo.assign(q.begin(), q.end());
        exact.target_hi = exact.target_lo;
        if (!RunBranch(guess, anchors, exact)) return false;
      }
      int c = chi - 1;
      while (c >= 0 && q[c] == hi[c]) {
        q[c] = lo[c];
        --c;
      }
      if (c < 0) break;
      ++q[c];
    }
    return true;
  }

  bool RunBranch(int guess, const std::vector<int>& anchors, const IterLpState& st) {
    if (out_.branches >= cfg_.max_branches) {
      out_.partial = true;
      out_.notes.push_back("branch budget of " + std::to_string(cfg_.max_branches) +
                           " exhausted; search is partial");
      return false;
    }
    ++out_.branches;
    const IterBranchResult r = RunIterBranch(inst_, anchors, st, false);
    if (!r.certificate_ok) ++out_.certificate_failures;
    if (!r.identity_ok) ++out_.identity_failures;
    if (!r.feasible) return true;
    ++out_.feasible_branches;
    out_.max_iterations = std::max(out_.max_iterations, r.iterations);
    if (r.iterations > r.initial_vars) out_.iterations_ok = false;

    Candidate cand;
    cand.eval = Evaluate(inst_, r.selected, 1.0, CardinalityMode::kAtMostK);
    cand.anchors = anchors;
    cand.opt_count = guess;
    cand.lo = st.target_lo;
    cand.hi = st.target_hi;
    cand.start = st;
    cand.count_ok = static_cast<int>(r.selected.size()) <= bounds_.max_sets;
    cand.sigma_ok = cand.eval.fairness.sigma < bounds_.sigma;
    if (!best_ || Preferred(cand, *best_)) best_ = std::move(cand);
    if (cfg_.early_exit && best_->count_ok && best_->eval.fairness.sigma == 1.0 &&
        best_->eval.solution.weight >= weight_ceiling_ - kObjTol) {
      out_.early_exit = true;
      return false;
    }
    return true;
  }

  IterOutcome Finish() {
    if (!best_) {
      throw InfeasibleError("iterated rounding: every guess branch is infeasible (" +
                            std::to_string(out_.branches) + " branches tried)");
    }
    out_.best = best_->eval;
    out_.anchors = best_->anchors;
    out_.opt_count = best_->opt_count;
    out_.target_lo = best_->lo;
    out_.target_hi = best_->hi;
    out_.bounds = bounds_;
    out_.meets_count_bound = best_->count_ok;
    out_.meets_sigma_bound = best_->sigma_ok;
    if (cfg_.trace) {
      out_.trace = RunIterBranch(inst_, best_->anchors, best_->start, true).trace;
    }
    return std::move(out_);
  }

  const FmcInstance& inst_;
  const IterConfig& cfg_;
  IterBounds bounds_;
  int factor_;
  double weight_ceiling_ = 0.0;
  std::optional<Candidate> best_;
  IterOutcome out_;
};

void CheckGuard(int chi, const IterConfig& cfg) {
  if (cfg.mode == IterMode::kConstChi && chi > cfg.max_chi) {
    throw PreconditionError("chi exceeds const-chi guard (chi = " + std::to_string(chi) +
                            ", guard = " + std::to_string(cfg.max_chi) + ")");
  }
}

}  // namespace

IterOutcome AlgIterFmc(const FmcInstance& inst, const IterConfig& cfg) {
  CheckGuard(inst.chi(), cfg);
  const int f = ComputeStats(inst).f;
  return IterSearch(inst, cfg, FmcBounds(inst.k(), inst.chi(), f, cfg.mode), f).Run();
}

IterOutcome AlgIterNode(const ColoredGraph& g, int k, const IterConfig& cfg) {
  ValidateGraph(g);
  CheckGuard(g.chi, cfg);
  const GraphInstance gi = FromGraph(g, k);
  IterOutcome out = IterSearch(gi.instance, cfg, NodeBounds(k, g.chi, cfg.mode), 2).Run();
  for (int s : out.best.solution.selected) out.selected_nodes.push_back(gi.node_of_set[s]);
  return out;
}

}  // namespace fmc
