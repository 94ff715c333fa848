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

#include "fmc/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fmc/cli.hpp"
#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/geom.hpp"
#include "fmc/iterated.hpp"
#include "fmc/randomized.hpp"
#include "fmc/relax.hpp"
#include "fmc/report.hpp"
#include "fmc/rng.hpp"
#include "fmc/rounding.hpp"
#include "fmc/special.hpp"

namespace fmc {

namespace {

struct DeskCase {
  std::string name;
  FmcInstance instance;
  std::optional<ColoredGraph> graph;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

class Suite {
 public:
  Suite(const SuiteOptions& opt, const std::function<void(const CriterionResult&)>& progress)
      : opt_(opt), progress_(progress) {}

  SuiteReport Run() {
    Time(1, "dependent rounding", 10.0, [&](CriterionResult& r) { DependentRounding(r); });
    Time(2, "exactly-k randomized", 0.0, [&](CriterionResult& r) { ExactlyK(r); });
    CriterionResult fairness;
    Time(3, "rho(f) expectation", 300.0, [&](CriterionResult& r) { Expectation(r, fairness); });
    Time(4, "expectation-ratio fairness", 0.0, [&](CriterionResult& r) { r = fairness; });
    Time(5, "iterated rounding, node", 600.0, [&](CriterionResult& r) { IterNode(r); });
    Time(6, "iterated rounding, set system", 0.0, [&](CriterionResult& r) { IterFmc(r); });
    Time(7, "segregated greed-plus", 0.0, [&](CriterionResult& r) { Segregated(r); });
    Time(8, "delta-balanced", 0.0, [&](CriterionResult& r) { Balanced(r); });
    Time(9, "integrality gap", 0.0, [&](CriterionResult& r) { Gap(r); });
    Time(10, "geometric", 120.0, [&](CriterionResult& r) { Geometric(r); });
    Time(11, "reproducibility", 0.0, [&](CriterionResult& r) { Reproducibility(r); });
    for (auto& [name, s] : summaries_) report_.algorithms.push_back(s);
    return std::move(report_);
  }

 private:
  template <typename Body>
  void Time(int id, const char* name, double limit, Body body) {
    CriterionResult r;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("aborted: ") + e.what();
    }
    r.id = id;
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.limit_seconds = limit;
    if (limit > 0.0 && r.seconds > limit) {
      r.pass = false;
      r.detail += Fmt("; runtime %.1fs exceeds %.0fs", r.seconds, limit);
    }
    if (progress_) progress_(r);
    report_.criteria.push_back(std::move(r));
  }

  OracleResult Oracle(const FmcInstance& inst) {
    return ExactSolve(inst, opt_.oracle_budget, opt_.threads);
  }

  void Record(const std::string& alg, double weight, const OracleResult* oracle, double sigma,
              int checks, int passes) {
    AlgorithmSummary& s = summaries_[alg];
    s.algorithm = alg;
    ++s.runs;
    if (oracle && oracle->feasible && *oracle->opt_weight > 0.0) {
      s.ratio_sum += weight / *oracle->opt_weight;
      ++s.ratio_runs;
    }
    s.max_sigma = std::max(s.max_sigma, sigma);
    s.bound_checks += checks;
    s.bound_passes += passes;
  }

  std::uint64_t Seed(const char* tag, std::uint64_t i) const { return DeriveSeed(opt_.seed, tag, i); }

  std::vector<DeskCase> DeskSuite() {
    std::vector<DeskCase> out;
    out.push_back({"gap2", GapInstance(2), std::nullopt});
    out.push_back({"gap3", GapInstance(3), std::nullopt});
    for (int i = 0; i < 12; ++i) {
      Params p{{"n", 12.0 + 2 * i}, {"m", 8.0 + i % 5}, {"k", 2.0 + i % 4},
               {"chi", 2.0 + i % 3}, {"density", 0.25}, {"weighted", static_cast<double>(i % 2)}};
      out.push_back({"random" + std::to_string(i), Generate("random", p, Seed("desk.random", i)),
                     std::nullopt});
    }
    for (int i = 0; i < 10; ++i) {
      Params p{{"nodes", 8.0 + i % 3}, {"edges", 12.0 + i}, {"chi", 2.0 + i % 2},
               {"weighted", static_cast<double>(i % 2)}};
      const ColoredGraph g = GenerateGraph(p, Seed("desk.graph", i));
      out.push_back({"graph" + std::to_string(i), FromGraph(g, 3 + i % 2).instance, g});
    }
    for (int i = 0; i < 2; ++i) {
      Params p{{"delta", static_cast<double>(i)}, {"chi", 2}, {"k", 3}, {"m", 8}};
      out.push_back({"balanced" + std::to_string(i),
                     Generate("balanced", p, Seed("desk.balanced", i)), std::nullopt});
    }
    return out;
  }

  // 1. Sum preservation and marginals of dependent rounding.
  void DependentRounding(CriterionResult& r) {
    const int vectors = 200;
    const int trials = 10000;
    int sum_violations = 0;
    int marginal_violations = 0;
    double worst = 0.0;
    for (int v = 0; v < vectors; ++v) {
      CounterRng gen(Seed("c1.vector", v));
      const int len = 2 + static_cast<int>(gen.NextBelow(11));
      const int ell = 1 + static_cast<int>(gen.NextBelow(len - 1));
      std::vector<double> p(len, static_cast<double>(ell) / len);
      for (int step = 0; step < 4 * len; ++step) {
        const int i = static_cast<int>(gen.NextBelow(len));
        const int j = static_cast<int>(gen.NextBelow(len));
        if (i == j) continue;
        const double d = gen.NextDouble() * std::min(1.0 - p[i], p[j]);
        p[i] += d;
        p[j] -= d;
      }
      std::vector<int> hits(len, 0);
      CounterRng rng(Seed("c1.trials", v));
      for (int t = 0; t < trials; ++t) {
        const std::vector<int> x = DependentRound(p, rng);
        int sum = 0;
        for (int i = 0; i < len; ++i) {
          sum += x[i];
          hits[i] += x[i];
        }
        sum_violations += sum != ell;
      }
      for (int i = 0; i < len; ++i) {
        const double freq = static_cast<double>(hits[i]) / trials;
        const double sd = std::sqrt(p[i] * (1.0 - p[i]) / trials);
        const double dev = std::abs(freq - p[i]);
        worst = std::max(worst, dev - 3.0 * sd);
        marginal_violations += dev > 3.0 * sd + 0.01;
      }
    }
    r.pass = sum_violations == 0 && marginal_violations == 0;
    r.detail = Fmt("%.0f vectors x %.0f trials; sum violations %.0f", vectors, trials,
                   sum_violations) +
               Fmt("; marginals outside 3sd+0.01: %.0f", marginal_violations);
    r.metrics = {{"sum_violations", sum_violations},
                 {"marginal_violations", marginal_violations},
                 {"worst_excess_over_3sd", worst}};
  }

  // 2. Every trial of every randomized algorithm selects exactly k sets.
  void ExactlyK(CriterionResult& r) {
    int runs = 0;
    int trials = 0;
    int violations = 0;
    int infeasible = 0;
    int skipped = 0;
    const std::vector<DeskCase> desk = DeskSuite();
    for (std::size_t i = 0; i < desk.size(); ++i) {
      const FmcInstance& inst = desk[i].instance;
      const OracleResult oracle = Oracle(inst);
      for (RandomizedAlg alg : {RandomizedAlg::kLarge, RandomizedAlg::kMedium, RandomizedAlg::kSmall}) {
        if (alg == RandomizedAlg::kSmall && inst.chi() > 3) {
          ++skipped;
          continue;
        }
        RandomizedRunConfig cfg;
        cfg.algorithm = alg;
        cfg.seed = Seed("c2", i);
        try {
          const SolverOutcome o = RunRandomized(inst, cfg);
          ++runs;
          bool ok = static_cast<int>(o.best.solution.selected.size()) == inst.k();
          for (const TrialRecord& t : o.trials) {
            ++trials;
            if (t.count != inst.k()) {
              ++violations;
              ok = false;
            }
          }
          violations += static_cast<int>(o.best.solution.selected.size()) != inst.k();
          Record(ToString(alg), o.best.solution.weight, &oracle, o.best.fairness.sigma, 1, ok);
        } catch (const InfeasibleError&) {
          ++infeasible;
        } catch (const std::exception&) {
          ++violations;
        }
      }
    }
    r.pass = violations == 0 && runs > 0;
    r.detail = Fmt("%.0f runs, %.0f trials, %.0f violations", runs, trials, violations) +
               Fmt("; %.0f LP-infeasible, %.0f small-mode runs skipped (chi > 3)", infeasible,
                   skipped);
    r.metrics = {{"runs", runs}, {"trials", trials}, {"violations", violations},
                 {"infeasible", infeasible}, {"skipped", skipped}};
  }

  // 3 and 4. Mean weight and mean color ratio at the true OPT# guess.
  void Expectation(CriterionResult& r, CriterionResult& fairness) {
    const int trials = 500;
    int instances = 0;
    int node_instances = 0;
    int weight_fail = 0;
    int headline_fail = 0;
    int ratio_fail = 0;
    double worst_margin = kInfinity;
    double worst_ratio_slack = kInfinity;
    const std::vector<DeskCase> desk = DeskSuite();
    for (std::size_t i = 0; i < desk.size(); ++i) {
      const FmcInstance& inst = desk[i].instance;
      const OracleResult oracle = Oracle(inst);
      if (!oracle.feasible) continue;
      ++instances;
      const bool node = desk[i].graph.has_value();
      node_instances += node;
      RandomizedRunConfig cfg;
      cfg.algorithm = RandomizedAlg::kLarge;
      cfg.trials = trials;
      cfg.seed = Seed("c3", i);
      cfg.opt_count_override = *oracle.opt_count;
      const SolverOutcome o = RunRandomized(inst, cfg);
      double mean = 0.0;
      std::vector<std::vector<int>> ps;
      for (const TrialRecord& t : o.trials) {
        mean += t.weight;
        ps.push_back(t.p);
      }
      const double count = static_cast<double>(o.trials.size());
      mean /= count;
      double var = 0.0;
      for (const TrialRecord& t : o.trials) var += (t.weight - mean) * (t.weight - mean);
      const double se = std::sqrt(var / (count - 1.0) / count);
      const int f = ComputeStats(inst).f;
      const double opt = *oracle.opt_weight;
      const double margin = mean - (Rho(f) * opt - 3.0 * se);
      worst_margin = std::min(worst_margin, margin / std::max(opt, 1.0));
      weight_fail += margin < -1e-9;
      if (node) headline_fail += mean < 0.632 * opt - 3.0 * se - 1e-9;
      const double limit = 2.0 * f / Rho(f) + 0.25;
      const TrialFairness tf = EvaluateTrials(inst, ps, limit);
      worst_ratio_slack = std::min(worst_ratio_slack, limit - tf.max_mean_ratio);
      ratio_fail += !(tf.max_mean_ratio <= limit);
    }
    r.pass = instances >= 20 && node_instances >= 1 && weight_fail == 0 && headline_fail == 0;
    r.detail = Fmt("%.0f oracle-feasible instances (%.0f node), 500 trials each", instances,
                   node_instances) +
               Fmt("; below rho(f) OPT - 3SE: %.0f; below 0.632 OPT - 3SE (node): %.0f",
                   weight_fail, headline_fail);
    r.metrics = {{"instances", instances}, {"node_instances", node_instances},
                 {"rho_violations", weight_fail}, {"headline_violations", headline_fail},
                 {"worst_relative_margin", worst_margin}};
    fairness.pass = instances >= 20 && ratio_fail == 0;
    fairness.detail = Fmt("%.0f instances; mean-ratio violations of 2f/rho(f) + 0.25: %.0f",
                          instances, ratio_fail) +
                      Fmt("; min slack %.3f", worst_ratio_slack);
    fairness.metrics = {{"instances", instances}, {"violations", ratio_fail},
                        {"min_slack", worst_ratio_slack}};
  }

  // 5. Node-FMC iterated rounding, both modes.
  void IterNode(CriterionResult& r) {
    int instances = 0;
    int violations = 0;
    int cert = 0;
    for (int i = 0; i < 80 && instances < 18; ++i) {
      const int chi = 1 + i % 3;
      Params p{{"nodes", 7.0 + i % 4}, {"edges", 10.0 + i % 7}, {"chi", static_cast<double>(chi)},
               {"weighted", static_cast<double>(i % 2)}};
      const ColoredGraph g = GenerateGraph(p, Seed("c5", i));
      const int k = 3 + i % 3;
      const OracleResult oracle = Oracle(FromGraph(g, k).instance);
      if (!oracle.feasible) continue;
      ++instances;
      for (IterMode mode : {IterMode::kConstChi, IterMode::kGeneral}) {
        IterConfig cfg;
        cfg.mode = mode;
        const IterOutcome o = AlgIterNode(g, k, cfg);
        const IterBounds b = NodeBounds(k, chi, mode);
        const bool count_ok = static_cast<int>(o.selected_nodes.size()) <= b.max_sets;
        const bool sigma_ok = o.best.fairness.sigma < b.sigma;
        const bool weight_ok = mode == IterMode::kGeneral ||
                               o.best.solution.weight >= *oracle.opt_weight / 2.0 - kObjTol;
        cert += o.certificate_failures;
        const bool ok = count_ok && sigma_ok && weight_ok && o.certificate_failures == 0 &&
                        o.identity_failures == 0 && o.iterations_ok && !o.partial;
        violations += !ok;
        Record(std::string("iter-node/") + ToString(mode), o.best.solution.weight, &oracle,
               o.best.fairness.sigma, 3, count_ok + sigma_ok + weight_ok);
      }
    }
    r.pass = instances >= 15 && violations == 0 && cert == 0;
    r.detail = Fmt("%.0f oracle-feasible graphs x 2 modes; violations %.0f; certificate failures %.0f",
                   instances, violations, cert);
    r.metrics = {{"instances", instances}, {"violations", violations},
                 {"certificate_failures", cert}};
  }

  // 6. Set-system iterated rounding with f <= 3.
  void IterFmc(CriterionResult& r) {
    int instances = 0;
    int violations = 0;
    int sigma_misses = 0;
    for (int i = 0; i < 120 && instances < 12; ++i) {
      Params p{{"n", 12.0 + i % 9}, {"m", 8.0 + i % 3}, {"k", 3.0 + i % 2},
               {"chi", 1.0 + i % 3}, {"density", 0.16}, {"weighted", static_cast<double>(i % 2)}};
      const FmcInstance inst = Generate("random", p, Seed("c6", i));
      const int f = ComputeStats(inst).f;
      if (f > 3) continue;
      const OracleResult oracle = Oracle(inst);
      if (!oracle.feasible) continue;
      ++instances;
      for (IterMode mode : {IterMode::kConstChi, IterMode::kGeneral}) {
        IterConfig cfg;
        cfg.mode = mode;
        const IterOutcome o = AlgIterFmc(inst, cfg);
        const IterBounds b = FmcBounds(inst.k(), inst.chi(), f, mode);
        const bool count_ok = static_cast<int>(o.best.solution.selected.size()) <= b.max_sets;
        const bool weight_ok = o.best.solution.weight >= *oracle.opt_weight / f - kObjTol;
        const bool sigma_ok = o.best.fairness.sigma < b.sigma;
        sigma_misses += !sigma_ok;
        const bool ok = count_ok && weight_ok && o.certificate_failures == 0 && !o.partial;
        violations += !ok;
        Record(std::string("iter-fmc/") + ToString(mode), o.best.solution.weight, &oracle,
               o.best.fairness.sigma, 3, count_ok + weight_ok + sigma_ok);
      }
    }
    r.pass = instances >= 10 && violations == 0;
    r.detail = Fmt("%.0f oracle-feasible instances (f <= 3) x 2 modes; violations %.0f", instances,
                   violations) +
               Fmt("; sigma-bound misses (informational) %.0f", sigma_misses);
    r.metrics = {{"instances", instances}, {"violations", violations},
                 {"sigma_misses", sigma_misses}};
  }

  bool CheckGreedPlus(const FmcInstance& inst, const OracleResult& oracle) {
    bool ok = false;
    double weight = 0.0;
    double sigma = kInfinity;
    try {
      const SpecialOutcome o = AlgGreedPlus(inst);
      const double rho = std::max(Rho(inst.k()), Rho(ComputeStats(inst).f));
      weight = o.best.solution.weight;
      sigma = o.best.fairness.sigma;
      ok = static_cast<int>(o.best.solution.selected.size()) <= inst.k() &&
           weight >= rho * *oracle.opt_weight - kObjTol && sigma <= 2.0;
    } catch (const InfeasibleError&) {
      ok = false;
    }
    Record("greedy-plus", weight, &oracle, sigma, 1, ok);
    return ok;
  }

  // 7. Segregated instances plus the single-large-set fixture.
  void Segregated(CriterionResult& r) {
    int instances = 0;
    int violations = 0;
    const FmcInstance fixture = FmcInstance::Create(
        8, 4, 1, std::vector<double>(8, 1.0), std::vector<int>(8, 0),
        {{0, 1, 2, 3}, {4}, {5}, {6}, {7}});
    const OracleResult fixture_oracle = Oracle(fixture);
    const bool fixture_ok = fixture_oracle.feasible && CheckGreedPlus(fixture, fixture_oracle);
    for (int i = 0; i < 120 && instances < 16; ++i) {
      Params p{{"chi", 2.0 + i % 2}, {"k", 3.0 + i % 3}, {"n_per_color", 4.0 + i % 3},
               {"sets_per_color", 3.0 + i % 2}, {"max_size", 3}};
      const FmcInstance inst = Generate("segregated", p, Seed("c7", i));
      const OracleResult oracle = Oracle(inst);
      if (!oracle.feasible) continue;
      ++instances;
      violations += !CheckGreedPlus(inst, oracle);
    }
    r.pass = instances >= 15 && violations == 0 && fixture_ok;
    r.detail = Fmt("%.0f oracle-feasible segregated instances; violations %.0f; single-large-set fixture ",
                   instances, violations) +
               (fixture_ok ? "ok" : "FAILED");
    r.metrics = {{"instances", instances}, {"violations", violations}, {"single_large_set_fixture", fixture_ok}};
  }

  // 8. Delta-balanced instances for delta in {0, 1, 2}.
  void Balanced(CriterionResult& r) {
    int instances = 0;
    int violations = 0;
    for (int delta = 0; delta <= 2; ++delta) {
      int made = 0;
      for (int i = 0; i < 60 && made < 6; ++i) {
        Params p{{"delta", static_cast<double>(delta)}, {"chi", 2.0 + i % 2}, {"k", 2.0 + i % 3},
                 {"m", 8.0 + i % 4}, {"n_per_color", 6.0 + delta}, {"base_max", 2}};
        const FmcInstance inst = Generate("balanced", p, Seed("c8", 100 * delta + i));
        if (!IsDeltaBalanced(inst, delta)) continue;
        ++made;
        ++instances;
        const OracleResult oracle = Oracle(inst);
        const SpecialOutcome o = AlgBalanced(inst, delta);
        const int f = ComputeStats(inst).f;
        const double rho = std::max(Rho(inst.k()), Rho(f));
        const bool count_ok = static_cast<int>(o.best.solution.selected.size()) == inst.k();
        const bool weight_ok = o.best.solution.weight >= rho * oracle.opt_unfair_weight - kObjTol;
        const bool ratio_ok = o.best.fairness.sigma <= (2.0 + 2.0 * delta) * f;
        violations += !(count_ok && weight_ok && ratio_ok);
        Record("balanced", o.best.solution.weight, &oracle, o.best.fairness.sigma, 3,
               count_ok + weight_ok + ratio_ok);
      }
    }
    r.pass = instances >= 15 && violations == 0;
    r.detail = Fmt("%.0f instances over delta in {0,1,2}; violations %.0f", instances, violations);
    r.metrics = {{"instances", instances}, {"violations", violations}};
  }

  // 9. Integrality-gap family.
  void Gap(CriterionResult& r) {
    bool all = true;
    Json rows = Json::array();
    for (int alpha = 2; alpha <= 4; ++alpha) {
      const FmcInstance gap = GapInstance(alpha);
      const LpModel lp = BuildLargeLp(gap, 2 * alpha);
      const int block_sets = alpha * (alpha + 1);
      std::vector<double> x(lp.num_vars(), 0.0);
      std::vector<double> y(gap.m(), 0.0);
      for (int s = 0; s < block_sets; ++s) {
        x[lp.Find(VarKind::kSet, s)] = 1.0 / alpha;
        y[s] = 1.0 / alpha;
      }
      for (int e = 0; e < block_sets; ++e) {
        x[lp.Find(VarKind::kElement, e)] = gap.color(e) == 0 ? 1.0 : 1.0 / alpha;
      }
      const bool feasible = MaxViolation(lp, x) <= kFeasTol;
      // Zero-preserving rounding: the k largest y values, ties by index.
      std::vector<int> order;
      for (int s = 0; s < gap.m(); ++s) {
        if (y[s] > 0.0) order.push_back(s);
      }
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return y[a] > y[b]; });
      order.resize(gap.k());
      const Evaluation naive = Evaluate(gap, order);
      const int f = ComputeStats(gap).f;
      const bool ratio_ok = naive.solution.p[1] == alpha * naive.solution.p[0] && f == alpha;
      const OracleResult oracle = Oracle(gap);
      const bool fair_ok = oracle.feasible && IsExactlyFair(gap, oracle.witness->p) &&
                           Evaluate(gap, oracle.witness->selected).fairness.sigma == 1.0;
      all = all && feasible && ratio_ok && fair_ok;
      rows.push_back({{"alpha", alpha}, {"block_point_feasible", feasible},
                      {"naive_p", naive.solution.p}, {"f", f}, {"oracle_sigma_1", fair_ok}});
    }
    r.pass = all;
    r.detail = all ? "alpha in {2,3,4}: block point feasible, naive p2/p1 = alpha = f, oracle sigma = 1"
                   : "gap family mismatch (see metrics)";
    r.metrics = {{"rows", rows}};
  }

  // 10. Geometric algorithm against the lattice oracle.
  void Geometric(CriterionResult& r) {
    int good = 0;
    const int total = 10;
    for (int i = 0; i < total; ++i) {
      const double eps = i % 2 ? 0.25 : 0.5;
      Params p{{"points", 20.0 + i}, {"chi", 2}, {"side", 6}, {"k", 1.0 + i % 2},
               {"epsilon", eps}, {"lipschitz", eps / 2}, {"weighted", static_cast<double>(i % 3 == 0)}};
      const GeomInstance geo = GenerateGeom(p, Seed("c10", i));
      const GeomOracleResult oracle = GeomOracle(geo);
      GeomConfig cfg;
      cfg.seed = Seed("c10.run", i);
      const GeomOutcome o = AlgGeom(geo, cfg);
      double wmax = 0.0;
      for (const GeomPoint& pt : geo.points) wmax = std::max(wmax, pt.weight);
      const double fair = oracle.fair_found ? oracle.fair_best.coverage : 0.0;
      const bool ratio_ok = o.best.ratio <= 1.0 + eps + 1e-12;
      const bool cover_ok =
          o.best.coverage >= (1.0 - 3.0 * eps) * (fair - eps * geo.chi * wmax) - 1e-9;
      good += ratio_ok && cover_ok;
      AlgorithmSummary& s = summaries_["geom"];
      s.algorithm = "geom";
      ++s.runs;
      if (fair > 0.0) {
        s.ratio_sum += o.best.coverage / fair;
        ++s.ratio_runs;
      }
      s.max_sigma = std::max(s.max_sigma, o.best.ratio);
      s.bound_checks += 2;
      s.bound_passes += ratio_ok + cover_ok;
    }
    r.pass = good >= 9;
    r.detail = Fmt("%.0f/%.0f point clouds meet ratio <= 1 + eps and the coverage bound", good, total);
    r.metrics = {{"good", good}, {"total", total}};
  }

  int Invoke(const std::vector<std::string>& args) {
    if (opt_.cli_path.empty()) {
      std::ostringstream out;
      std::ostringstream err;
      return RunCli(args, out, err);
    }
    std::string cmd = "'" + opt_.cli_path + "'";
    for (const std::string& a : args) cmd += " '" + a + "'";
    cmd += " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  // 11. Every command twice with a fixed seed; outputs must be byte-identical.
  void Reproducibility(CriterionResult& r) {
    namespace fs = std::filesystem;
    const fs::path dir = opt_.scratch_dir.empty()
                             ? fs::temp_directory_path() / ("fmc-repro-" + std::to_string(::getpid()))
                             : fs::path(opt_.scratch_dir);
    fs::create_directories(dir);
    auto at = [&](const std::string& name) { return (dir / name).string(); };
    struct Command {
      std::string label;
      std::vector<std::string> args;  // "@OUT" is replaced per run
    };
    const std::vector<Command> inputs = {
        {"gap.json", {"gen", "--family", "gap", "--params", "alpha=2"}},
        {"random.json", {"gen", "--family", "random", "--params", "n=14,m=8,k=3,chi=2,density=0.2", "--seed", "5"}},
        {"graph.json", {"gen", "--family", "graph", "--params", "nodes=8,edges=12,chi=2,k=3", "--seed", "5"}},
        {"seg.json", {"gen", "--family", "segregated", "--params", "chi=2,k=4,n_per_color=5", "--seed", "5"}},
        {"bal.json", {"gen", "--family", "balanced", "--params", "delta=1,chi=2,k=3,m=8", "--seed", "5"}},
        {"geo.json", {"gen", "--family", "geom", "--params", "points=20,k=2,epsilon=0.5,lipschitz=0.25", "--seed", "5"}},
    };
    std::vector<Command> commands = inputs;
    for (const char* alg : {"large", "medium", "small"}) {
      commands.push_back({std::string("solve-") + alg,
                          {"solve", "--alg", alg, "--input", at("gap.json"), "--seed", "7",
                           "--trials", "20", "--oracle"}});
    }
    commands.push_back({"solve-iter-node", {"solve", "--alg", "iter-node", "--input", at("graph.json"),
                                            "--oracle", "--trace"}});
    commands.push_back({"solve-iter-fmc", {"solve", "--alg", "iter-fmc", "--input", at("random.json"),
                                           "--mode", "general", "--oracle"}});
    commands.push_back({"solve-greedy-plus", {"solve", "--alg", "greedy-plus", "--input", at("seg.json"),
                                              "--oracle"}});
    commands.push_back({"solve-balanced", {"solve", "--alg", "balanced", "--input", at("bal.json"),
                                           "--delta", "1", "--oracle"}});
    commands.push_back({"solve-geom", {"solve", "--alg", "geom", "--input", at("geo.json"),
                                       "--seed", "3", "--oracle"}});
    commands.push_back({"oracle", {"oracle", "--input", at("random.json"), "--at-most-k"}});
    int identical = 0;
    int errors = 0;
    std::vector<std::string> differing;
    for (const Command& c : commands) {
      std::string first;
      int first_code = 0;
      bool same = true;
      for (int run = 0; run < 2; ++run) {
        const std::string out = run == 0 ? at(c.label) : at(c.label + ".again");
        std::vector<std::string> args = c.args;
        args.push_back("--out");
        args.push_back(out);
        const int code = Invoke(args);
        if (code == kExitError || code < 0) ++errors;
        const std::string bytes = Slurp(out);
        if (run == 0) {
          first = bytes;
          first_code = code;
        } else {
          same = !bytes.empty() && bytes == first && code == first_code;
        }
      }
      if (same) {
        ++identical;
      } else {
        differing.push_back(c.label);
      }
    }
    if (opt_.scratch_dir.empty()) fs::remove_all(dir);
    r.pass = identical == static_cast<int>(commands.size()) && errors == 0;
    r.detail = Fmt("%.0f/%.0f commands byte-identical across two runs; %.0f error exits", identical,
                   commands.size(), errors);
    for (const std::string& d : differing) r.detail += "; differs: " + d;
    r.metrics = {{"commands", commands.size()}, {"identical", identical}, {"errors", errors}};
  }

  SuiteOptions opt_;
  const std::function<void(const CriterionResult&)>& progress_;
  SuiteReport report_;
  std::map<std::string, AlgorithmSummary> summaries_;
};

}  // namespace

SuiteReport RunDeskSuite(const SuiteOptions& options,
                         const std::function<void(const CriterionResult&)>& progress) {
  return Suite(options, progress).Run();
}

bool AllPassed(const SuiteReport& report) {
  return std::all_of(report.criteria.begin(), report.criteria.end(),
                     [](const CriterionResult& c) { return c.pass; });
}

Json SuiteJson(const SuiteReport& report, bool timings) {
  Json j;
  j["schema"] = "fmc-bench/1";
  j["suite"] = "desk";
  Json criteria = Json::array();
  for (const CriterionResult& c : report.criteria) {
    Json row = {{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail},
                {"metrics", c.metrics}};
    if (timings) {
      row["seconds"] = c.seconds;
      if (c.limit_seconds > 0.0) row["limit_seconds"] = c.limit_seconds;
    }
    criteria.push_back(std::move(row));
  }
  j["criteria"] = std::move(criteria);
  Json algs = Json::array();
  for (const AlgorithmSummary& s : report.algorithms) {
    algs.push_back({{"algorithm", s.algorithm},
                    {"runs", s.runs},
                    {"mean_weight_ratio", s.ratio_runs ? Number(s.ratio_sum / s.ratio_runs) : Json()},
                    {"max_sigma", Number(s.max_sigma)},
                    {"bound_checks", s.bound_checks},
                    {"bound_passes", s.bound_passes}});
  }
  j["algorithms"] = std::move(algs);
  j["all_pass"] = AllPassed(report);
  return j;
}

std::string SuiteTable(const SuiteReport& report, bool timings) {
  std::ostringstream s;
  char line[512];
  for (const CriterionResult& c : report.criteria) {
    std::snprintf(line, sizeof line, "%2d  %-4s  ", c.id, c.pass ? "PASS" : "FAIL");
    s << line;
    if (timings) {
      std::snprintf(line, sizeof line, "%-30s  %8.2fs", c.name.c_str(), c.seconds);
      s << line;
    } else {
      s << c.name;
    }
    s << "\n";
  }
  s << "\n";
  std::snprintf(line, sizeof line, "%-22s %5s %12s %10s %12s\n", "algorithm", "runs",
                "weight/OPT", "max sigma", "bounds met");
  s << line;
  for (const AlgorithmSummary& a : report.algorithms) {
    const std::string ratio =
        a.ratio_runs ? Fmt("%.3f", a.ratio_sum / a.ratio_runs) : std::string("-");
    const std::string sigma = std::isinf(a.max_sigma) ? "inf" : Fmt("%.3f", a.max_sigma);
    const std::string met = Fmt("%.0f/%.0f", a.bound_passes, a.bound_checks);
    std::snprintf(line, sizeof line, "%-22s %5d %12s %10s %12s\n", a.algorithm.c_str(), a.runs,
                  ratio.c_str(), sigma.c_str(), met.c_str());
    s << line;
  }
  return s.str();
}

}  // namespace fmc
