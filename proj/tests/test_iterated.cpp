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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/iterated.hpp"
#include "fmc/oracle.hpp"
#include "fmc/rng.hpp"
#include "test_support.hpp"

using namespace fmc;

namespace {

ColoredGraph DisjointEdges(int chi) {
  ColoredGraph g;
  g.nodes = 2 * chi;
  g.chi = chi;
  for (int c = 0; c < chi; ++c) g.edges.push_back(Edge{2 * c, 2 * c + 1, c, 1.0});
  return g;
}

ColoredGraph DeskGraph(std::uint64_t seed, int chi) {
  Params p{{"nodes", 7}, {"edges", 10}, {"chi", chi}};
  return GenerateGraph(p, seed);
}

}  // namespace

TEST_CASE("disjoint edges, one per color, k = chi: sigma = 1") {
  for (int chi = 1; chi <= 3; ++chi) {
    for (IterMode mode : {IterMode::kConstChi, IterMode::kGeneral}) {
      IterConfig cfg;
      cfg.mode = mode;
      const IterOutcome out = AlgIterNode(DisjointEdges(chi), chi, cfg);
      CHECK(out.best.fairness.sigma == 1.0);
      CHECK(out.best.solution.weight == chi);
      CHECK(static_cast<int>(out.selected_nodes.size()) <= NodeBounds(chi, chi, mode).max_sets);
      CHECK(out.certificate_failures == 0);
      CHECK(out.identity_failures == 0);
    }
  }
}

TEST_CASE("bounds formulas") {
  CHECK(NodeBounds(5, 3, IterMode::kConstChi).max_sets == 6);
  CHECK(NodeBounds(5, 3, IterMode::kConstChi).sigma == 16.0);
  CHECK(NodeBounds(5, 3, IterMode::kGeneral).max_sets == 7);
  CHECK(NodeBounds(5, 3, IterMode::kGeneral).sigma == 4.0 + 6.0 + 36.0);
  CHECK(FmcBounds(4, 2, 2, IterMode::kConstChi).sigma == 12.0);  // min(8 + 4, 16)
  CHECK(FmcBounds(4, 2, 1, IterMode::kConstChi).sigma == 4.0);   // min(4 + 1, 4)
  CHECK(FmcBounds(4, 2, 2, IterMode::kGeneral).sigma == 4.0 + 24.0);
  CHECK(FmcBounds(4, 2, 2, IterMode::kGeneral).max_sets == 5);
}

TEST_CASE("rank certificate: vertex true, midpoint of two vertices false") {
  const FmcInstance inst = FmcInstance::Create(2, 1, 1, {1, 1}, {0, 0}, {{0}, {1}});
  IterLpState st;
  st.sets = {0, 1};
  st.element_live = {1, 1};
  st.k_hat = 1;
  st.target_lo = {1.0};
  st.target_hi = {1.0};
  const LpModel lp = BuildIterLp(inst, st);
  LpSolution a = SolveVertex(lp);
  REQUIRE(a.status == LpStatus::kOptimal);
  CHECK(RankCertificate(a, lp));
  // The other vertex swaps the two sets.
  LpSolution b = a;
  for (int v = 0; v < lp.num_vars(); ++v) {
    const auto& var = lp.vars()[v];
    const int set = var.kind == VarKind::kSet ? var.index : var.index2;
    const int twin = var.kind == VarKind::kSet ? lp.Find(VarKind::kSet, 1 - set)
                                                : lp.Find(VarKind::kIncidence, 1 - var.index, 1 - set);
    b.values[v] = a.values[twin];
  }
  CHECK(MaxViolation(lp, b.values) < 1e-12);
  CHECK(RankCertificate(b, lp));
  LpSolution mid = a;
  for (int v = 0; v < lp.num_vars(); ++v) mid.values[v] = 0.5 * (a.values[v] + b.values[v]);
  CHECK(MaxViolation(lp, mid.values) < 1e-12);
  CHECK_FALSE(RankCertificate(mid, lp));
}

TEST_CASE("branch loop: objective identity and iteration bound") {
  const FmcInstance gap = GapInstance(2);
  IterLpState st;
  for (int s = 0; s < gap.m(); ++s) st.sets.push_back(s);
  st.element_live.assign(gap.n(), 1);
  st.k_hat = gap.k();
  st.window = true;
  st.target_lo = {3.0, 3.0};
  st.target_hi = {6.0, 6.0};
  const IterBranchResult r = RunIterBranch(gap, {}, st, true);
  REQUIRE(r.feasible);
  CHECK(r.identity_ok);
  CHECK(r.certificate_ok);
  CHECK(r.iterations <= r.initial_vars);
  CHECK(static_cast<int>(r.trace.size()) == r.iterations);
  CHECK(r.trace.back().k_hat == 0);
}

TEST_CASE("gap(2), general mode: at most k + chi - 1 = 4 sets") {
  const FmcInstance gap = GapInstance(2);
  IterConfig cfg;
  cfg.mode = IterMode::kGeneral;
  const IterOutcome out = AlgIterFmc(gap, cfg);
  CHECK(out.best.solution.selected.size() <= 4u);
  CHECK(out.meets_count_bound);
  CHECK(out.meets_sigma_bound);
  CHECK(out.certificate_failures == 0);
  CHECK(out.iterations_ok);
  const OracleResult oracle = ExactSolve(gap);
  CHECK(out.best.solution.weight >= *oracle.opt_weight / 2.0 - 1e-9);  // f = 2
}

TEST_CASE("partition instances (f = 1): weight at least the fair optimum") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CounterRng rng(DeriveSeed(seed, "test.partition"));
    const int n = 10;
    std::vector<int> colors(n);
    for (int e = 0; e < n; ++e) colors[e] = static_cast<int>(rng.NextBelow(2));
    colors[0] = 0;
    colors[1] = 1;
    std::vector<std::vector<int>> sets(5);
    for (int e = 0; e < n; ++e) sets[e % 5].push_back(e);
    const FmcInstance inst =
        FmcInstance::Create(n, 2, 2, std::vector<double>(n, 1.0), colors, sets);
    const OracleResult oracle = ExactSolve(inst);
    if (!oracle.feasible) continue;
    IterConfig cfg;
    const IterOutcome out = AlgIterFmc(inst, cfg);
    CHECK(out.meets_count_bound);
    CHECK(out.meets_sigma_bound);
    CHECK(out.best.solution.weight >= *oracle.opt_weight - 1e-9);
    CHECK(out.certificate_failures == 0);
  }
}

TEST_CASE("desk graphs: node bounds against the oracle") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int chi = 2 + static_cast<int>(seed % 2);
    const ColoredGraph g = DeskGraph(seed, chi);
    const int k = 3;
    const OracleResult oracle = ExactSolve(FromGraph(g, k).instance);
    if (!oracle.feasible) continue;
    ++checked;
    for (IterMode mode : {IterMode::kConstChi, IterMode::kGeneral}) {
      INFO("seed " << seed << " mode " << ToString(mode));
      IterConfig cfg;
      cfg.mode = mode;
      const IterOutcome out = AlgIterNode(g, k, cfg);
      const IterBounds b = NodeBounds(k, chi, mode);
      CHECK(static_cast<int>(out.selected_nodes.size()) <= b.max_sets);
      CHECK(out.best.fairness.sigma < b.sigma);
      CHECK(out.best.solution.weight >= *oracle.opt_weight / 2.0 - 1e-9);
      CHECK(out.certificate_failures == 0);
      CHECK(out.identity_failures == 0);
      CHECK(out.iterations_ok);
    }
  }
  CHECK(checked >= 3);
}

TEST_CASE("guards and determinism") {
  ColoredGraph g = DisjointEdges(4);
  IterConfig cfg;
  CHECK_THROWS_AS(AlgIterNode(g, 4, cfg), PreconditionError);
  cfg.mode = IterMode::kGeneral;
  const IterOutcome a = AlgIterNode(g, 4, cfg);
  const IterOutcome b = AlgIterNode(g, 4, cfg);
  CHECK(a.best.solution.selected == b.best.solution.selected);

  IterConfig tiny;
  tiny.max_branches = 1;
  tiny.early_exit = false;
  const IterOutcome partial = AlgIterFmc(GapInstance(2), tiny);
  CHECK(partial.partial);
  CHECK(partial.branches == 1);
}

TEST_CASE("trace of the best branch") {
  IterConfig cfg;
  cfg.trace = true;
  const IterOutcome out = AlgIterNode(DisjointEdges(2), 2, cfg);
  REQUIRE_FALSE(out.trace.empty());
  for (std::size_t i = 0; i < out.trace.size(); ++i) CHECK(out.trace[i].t == static_cast<int>(i) + 1);
}
