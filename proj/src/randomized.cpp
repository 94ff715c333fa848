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

#include "fmc/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmc/errors.hpp"
#include "fmc/relax.hpp"
#include "fmc/rng.hpp"
#include "fmc/rounding.hpp"

namespace fmc {

const char* ToString(RandomizedAlg alg) {
  switch (alg) {
    case RandomizedAlg::kLarge: return "large";
    case RandomizedAlg::kMedium: return "medium";
    case RandomizedAlg::kSmall: return "small";
  }
  return "unknown";
}

int DefaultTrials(int n) {
  return std::max(1, static_cast<int>(std::ceil(5.0 * std::log(static_cast<double>(n)))));
}

bool BetterSolution(const Evaluation& a, const Evaluation& b) {
  const double sa = a.fairness.sigma;
  const double sb = b.fairness.sigma;
  if (sa != sb) return sa < sb;
  if (a.solution.weight != b.solution.weight) return a.solution.weight > b.solution.weight;
  return a.solution.selected < b.solution.selected;
}

TrialBody MakeRoundingTrial(const FmcInstance& inst, std::vector<double> y) {
  return [&inst, y = std::move(y)](std::uint64_t trial_seed) {
    CounterRng rng(trial_seed);
    const std::vector<int> x = DependentRound(y, rng);
    std::vector<int> selected;
    for (int s = 0; s < inst.m(); ++s) {
      if (x[s]) selected.push_back(s);
    }
    if (static_cast<int>(selected.size()) != inst.k()) {
      throw NumericalError("rounded selection has " + std::to_string(selected.size()) +
                           " sets instead of k = " + std::to_string(inst.k()));
    }
    return Evaluate(inst, selected);
  };
}

Evaluation Boost(const TrialBody& body, int trials, std::uint64_t seed,
                 std::vector<Evaluation>* trace) {
  if (trials < 1) throw PreconditionError("trials must be at least 1");
  std::optional<Evaluation> best;
  for (int t = 0; t < trials; ++t) {
    Evaluation ev = body(DeriveSeed(seed, "trial", static_cast<std::uint64_t>(t)));
    if (trace) trace->push_back(ev);
    if (!best || BetterSolution(ev, *best)) best = std::move(ev);
  }
  return *best;
}

namespace {

struct Job {
  int opt_count = 0;
  std::vector<int> psi_prime;
  std::vector<int> anchors;
};

class Driver {
 public:
  Driver(const FmcInstance& inst, const RandomizedRunConfig& cfg)
      : inst_(inst), cfg_(cfg), trials_(cfg.trials > 0 ? cfg.trials : DefaultTrials(inst.n())) {
    if (cfg.trials < 0) throw PreconditionError("trials must be at least 1");
  }

  std::vector<int> Guesses() const {
    if (cfg_.opt_count_override) {
      CheckOptCountGuess(inst_, *cfg_.opt_count_override);
      return {*cfg_.opt_count_override};
    }
    return OptCountGuesses(inst_);
  }

  void Run(const Job& job) {
    LpModel lp;
    switch (cfg_.algorithm) {
      case RandomizedAlg::kLarge: lp = BuildLargeLp(inst_, job.opt_count); break;
      case RandomizedAlg::kMedium: lp = BuildMediumLp(inst_, job.opt_count); break;
      case RandomizedAlg::kSmall:
        lp = BuildSmallLp(inst_, job.opt_count, job.psi_prime, job.anchors);
        break;
    }
    const LpSolution sol = SolveVertex(lp);
    GuessRecord rec;
    rec.opt_count = job.opt_count;
    rec.status = sol.status;
    rec.opt_frac = sol.status == LpStatus::kOptimal ? sol.objective : 0.0;
    rec.psi_prime = job.psi_prime;
    rec.anchors = job.anchors;
    const int index = static_cast<int>(out_.guesses.size());
    if (sol.status != LpStatus::kOptimal) {
      out_.guesses.push_back(std::move(rec));
      return;
    }
    any_feasible_ = true;
    // Nothing at this guess can beat a perfectly fair incumbent that already
    // weighs more than the fractional optimum here.
    if (out_.best_guess_index >= 0 && out_.best.fairness.sigma == 1.0 &&
        sol.objective < out_.best.solution.weight - kObjTol) {
      out_.guesses.push_back(std::move(rec));
      return;
    }
    rec.rounded = true;
    out_.guesses.push_back(std::move(rec));

    std::vector<double> y(inst_.m());
    for (int s = 0; s < inst_.m(); ++s) y[s] = sol.values[lp.Find(VarKind::kSet, s)];
    const TrialBody body = MakeRoundingTrial(inst_, std::move(y));
    const std::uint64_t job_seed =
        DeriveSeed(cfg_.seed, ToString(cfg_.algorithm), static_cast<std::uint64_t>(index));
    std::vector<Evaluation> trace;
    const Evaluation best = Boost(body, trials_, job_seed, &trace);
    if (cfg_.keep_trace) {
      for (int t = 0; t < static_cast<int>(trace.size()); ++t) {
        out_.trials.push_back(TrialRecord{index, t, trace[t].solution.weight, trace[t].solution.p,
                                          trace[t].fairness.sigma,
                                          static_cast<int>(trace[t].solution.selected.size())});
      }
    }
    if (out_.best_guess_index < 0 || BetterSolution(best, out_.best)) {
      out_.best = best;
      out_.best_guess_index = index;
      out_.opt_count = job.opt_count;
      out_.opt_frac = sol.objective;
    }
  }

  void Note(std::string s) { out_.notes.push_back(std::move(s)); }

  SolverOutcome Finish() {
    if (out_.best_guess_index < 0) {
      throw InfeasibleError(any_feasible_ ? "no rounding produced a solution"
                                          : "LP relaxation infeasible at every OPT# guess");
    }
    return std::move(out_);
  }

 private:
  const FmcInstance& inst_;
  const RandomizedRunConfig& cfg_;
  int trials_;
  SolverOutcome out_;
  bool any_feasible_ = false;
};

SolverOutcome RunPlain(const FmcInstance& inst, const RandomizedRunConfig& cfg) {
  Driver d(inst, cfg);
  for (int g : d.Guesses()) d.Run(Job{g, {}, {}});
  return d.Finish();
}

}  // namespace

SolverOutcome AlgLarge(const FmcInstance& inst, const RandomizedRunConfig& cfg) {
  RandomizedRunConfig c = cfg;
  c.algorithm = RandomizedAlg::kLarge;
  return RunPlain(inst, c);
}

SolverOutcome AlgMedium(const FmcInstance& inst, const RandomizedRunConfig& cfg) {
  RandomizedRunConfig c = cfg;
  c.algorithm = RandomizedAlg::kMedium;
  return RunPlain(inst, c);
}

SolverOutcome AlgSmall(const FmcInstance& inst, const RandomizedRunConfig& cfg) {
  RandomizedRunConfig c = cfg;
  c.algorithm = RandomizedAlg::kSmall;
  if (inst.chi() > c.small_max_chi) {
    throw PreconditionError("chi exceeds small-mode guard (chi = " + std::to_string(inst.chi()) +
                            ", guard = " + std::to_string(c.small_max_chi) + ")");
  }
  const int chi = inst.chi();
  std::vector<std::vector<int>> sets_with(chi);
  for (int s = 0; s < inst.m(); ++s) {
    std::vector<char> has(chi, 0);
    for (int e : inst.set(s)) has[inst.color(e)] = 1;
    for (int col = 0; col < chi; ++col) {
      if (has[col]) sets_with[col].push_back(s);
    }
  }
  Driver d(inst, c);
  for (int g : d.Guesses()) {
    for (int mask = 0; mask < (1 << chi); ++mask) {
      std::vector<int> psi;
      for (int col = 0; col < chi; ++col) {
        if (mask & (1 << col)) psi.push_back(col);
      }
      std::uint64_t combos = 1;
      for (int col : psi) {
        combos = std::min<std::uint64_t>(combos * sets_with[col].size(),
                                         c.small_max_combinations + 1);
      }
      const bool sample = combos > c.small_max_combinations;
      const std::uint64_t runs = sample ? c.small_max_combinations : combos;
      if (sample) {
        d.Note("OPT# " + std::to_string(g) + ", anchored colors mask " + std::to_string(mask) +
               ": sampled " + std::to_string(runs) + " anchor combinations");
      }
      CounterRng sampler(DeriveSeed(c.seed, "anchors", static_cast<std::uint64_t>(g) * 64 + mask));
      std::vector<int> digit(psi.size(), 0);
      for (std::uint64_t r = 0; r < runs; ++r) {
        Job job{g, psi, {}};
        for (std::size_t i = 0; i < psi.size(); ++i) {
          const auto& pool = sets_with[psi[i]];
          const int pick = sample ? static_cast<int>(sampler.NextBelow(pool.size())) : digit[i];
          job.anchors.push_back(pool[pick]);
        }
        d.Run(job);
        // Mixed-radix increment, last color fastest.
        for (int i = static_cast<int>(psi.size()) - 1; i >= 0; --i) {
          if (++digit[i] < static_cast<int>(sets_with[psi[i]].size())) break;
          digit[i] = 0;
        }
      }
    }
  }
  return d.Finish();
}

SolverOutcome RunRandomized(const FmcInstance& inst, const RandomizedRunConfig& cfg) {
  switch (cfg.algorithm) {
    case RandomizedAlg::kLarge: return AlgLarge(inst, cfg);
    case RandomizedAlg::kMedium: return AlgMedium(inst, cfg);
    case RandomizedAlg::kSmall: return AlgSmall(inst, cfg);
  }
  throw PreconditionError("unknown randomized algorithm");
}

}  // namespace fmc
