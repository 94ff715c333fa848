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

#include "fmc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "fmc/bench.hpp"
#include "fmc/errors.hpp"
#include "fmc/generate.hpp"
#include "fmc/geom.hpp"
#include "fmc/io.hpp"
#include "fmc/iterated.hpp"
#include "fmc/oracle.hpp"
#include "fmc/randomized.hpp"
#include "fmc/report.hpp"
#include "fmc/special.hpp"

namespace fmc {

namespace {

struct SolveArgs {
  std::string alg;
  std::string input;
  std::uint64_t seed = 0;
  int trials = 0;
  std::optional<int> opt_hash;
  std::string mode = "const-chi";
  int delta = 0;
  std::optional<double> epsilon;
  bool oracle = false;
  std::string out;
  std::optional<int> k;
  int max_chi = 3;
  bool trace = false;
  bool timings = false;
  std::string svg;
};

struct GenArgs {
  std::string family;
  std::string params;
  std::uint64_t seed = 0;
  std::string out;
};

struct OracleArgs {
  std::string input;
  bool at_most_k = false;
  std::optional<int> k;
  std::string out;
};

struct BenchArgs {
  std::string suite = "desk";
  std::string out;
  std::uint64_t seed = 1;
  bool timings = false;
};

int EnvInt(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const long x = std::strtol(v, &end, 10);
  if (*end || x < 1) throw PreconditionError(std::string(name) + " must be a positive integer");
  return static_cast<int>(x);
}

std::uint64_t OracleBudget(std::uint64_t fallback) {
  const char* v = std::getenv("FMC_BUDGET");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end || x == 0) throw PreconditionError("FMC_BUDGET must be a positive integer");
  return x;
}

int OracleThreads() { return EnvInt("FMC_THREADS", 1); }

std::vector<int> OneBased(std::vector<int> v) {
  for (int& x : v) ++x;
  return v;
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteFileAtomically(path, text);
  }
}

IterMode ParseMode(const std::string& mode) {
  return mode == "general" ? IterMode::kGeneral : IterMode::kConstChi;
}

Json TraceJson(const std::vector<IterTraceStep>& trace) {
  Json steps = Json::array();
  for (const IterTraceStep& s : trace) {
    steps.push_back({{"t", s.t},
                     {"case", static_cast<int>(s.action)},
                     {"sets", OneBased(s.sets)},
                     {"k_hat", s.k_hat},
                     {"target_lo", s.target_lo},
                     {"target_hi", s.target_hi},
                     {"opt_frac", s.opt_frac}});
  }
  return steps;
}

// Solver-specific part of a set-system report. Fills "solution",
// "details" and, when an oracle result is given, "bounds".
void SolveSetSystem(const SolveArgs& a, const LoadedInput& in, const OracleResult* oracle,
                    Json& report) {
  const FmcInstance& inst = in.instance;
  const int f = ComputeStats(inst).f;
  const double opt = oracle && oracle->feasible ? *oracle->opt_weight : 0.0;
  Json details;
  Json bounds;
  Evaluation best;
  std::vector<std::string> notes;
  if (a.alg == "large" || a.alg == "medium" || a.alg == "small") {
    RandomizedRunConfig cfg;
    cfg.algorithm = a.alg == "large"    ? RandomizedAlg::kLarge
                    : a.alg == "medium" ? RandomizedAlg::kMedium
                                        : RandomizedAlg::kSmall;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.opt_count_override = a.opt_hash;
    cfg.small_max_chi = a.max_chi;
    const SolverOutcome o = RunRandomized(inst, cfg);
    best = o.best;
    notes = o.notes;
    details["opt_count"] = o.opt_count;
    details["opt_frac"] = o.opt_frac;
    details["trials_per_guess"] = a.trials > 0 ? a.trials : DefaultTrials(inst.n());
    Json guesses = Json::array();
    for (const GuessRecord& g : o.guesses) {
      guesses.push_back({{"opt_count", g.opt_count},
                         {"lp", ToString(g.status)},
                         {"opt_frac", g.opt_frac},
                         {"rounded", g.rounded}});
    }
    details["guesses"] = std::move(guesses);
    std::vector<std::vector<int>> ps;
    double mean = 0.0;
    bool all_k = true;
    for (const TrialRecord& t : o.trials) {
      ps.push_back(t.p);
      mean += t.weight;
      all_k = all_k && t.count == inst.k();
    }
    if (!o.trials.empty()) mean /= static_cast<double>(o.trials.size());
    details["trials"] = o.trials.size();
    details["mean_trial_weight"] = mean;
    details["every_trial_exactly_k"] = all_k;
    if (!ps.empty()) {
      const TrialFairness tf = EvaluateTrials(inst, ps, 2.0 * f / Rho(f));
      details["mean_p"] = tf.mean_p;
      details["mean_p_ratio"] = Number(tf.max_mean_ratio);
    }
    if (oracle && oracle->feasible) {
      bounds["exactly_k"] = all_k && static_cast<int>(best.solution.selected.size()) == inst.k();
      bounds["rho_f_opt"] = Rho(f) * opt;
    }
  } else if (a.alg == "iter-node" || a.alg == "iter-fmc") {
    IterConfig cfg;
    cfg.mode = ParseMode(a.mode);
    cfg.max_chi = a.max_chi;
    cfg.trace = a.trace;
    IterOutcome o;
    if (a.alg == "iter-node") {
      if (!in.graph) throw PreconditionError("iter-node needs a graph input");
      o = AlgIterNode(*in.graph, inst.k(), cfg);
      details["selected_nodes"] = OneBased(o.selected_nodes);
    } else {
      o = AlgIterFmc(inst, cfg);
    }
    best = o.best;
    notes = o.notes;
    details["mode"] = ToString(cfg.mode);
    details["opt_count"] = o.opt_count;
    details["anchors"] = OneBased(o.anchors);
    details["target_lo"] = o.target_lo;
    details["target_hi"] = o.target_hi;
    details["count_bound"] = o.bounds.max_sets;
    details["sigma_bound"] = o.bounds.sigma;
    details["meets_count_bound"] = o.meets_count_bound;
    details["meets_sigma_bound"] = o.meets_sigma_bound;
    details["branches"] = o.branches;
    details["feasible_branches"] = o.feasible_branches;
    details["certificate_failures"] = o.certificate_failures;
    details["identity_failures"] = o.identity_failures;
    details["max_iterations"] = o.max_iterations;
    details["iterations_ok"] = o.iterations_ok;
    details["partial"] = o.partial;
    details["early_exit"] = o.early_exit;
    if (a.trace) details["trace"] = TraceJson(o.trace);
    if (oracle && oracle->feasible) {
      const double factor = a.alg == "iter-node" ? 2.0 : f;
      bounds["count"] = o.meets_count_bound;
      bounds["sigma"] = o.meets_sigma_bound;
      bounds["weight"] = best.solution.weight >= opt / factor - kObjTol;
    }
  } else if (a.alg == "greedy-plus") {
    const SpecialOutcome o = AlgGreedPlus(inst, a.opt_hash);
    best = o.best;
    details["opt_count"] = *o.opt_count;
    details["per_color_sets"] = o.per_color_sets;
    if (oracle && oracle->feasible) {
      const double rho = std::max(Rho(inst.k()), Rho(f));
      bounds["at_most_k"] = static_cast<int>(best.solution.selected.size()) <= inst.k();
      bounds["weight"] = best.solution.weight >= rho * opt - kObjTol;
      bounds["ratio_2"] = best.fairness.sigma <= 2.0;
    }
  } else if (a.alg == "balanced") {
    const SpecialOutcome o = AlgBalanced(inst, a.delta);
    best = o.best;
    details["delta"] = a.delta;
    details["baseline"] = o.baseline;
    if (oracle) {
      const double rho = std::max(Rho(inst.k()), Rho(f));
      bounds["exactly_k"] = static_cast<int>(best.solution.selected.size()) == inst.k();
      bounds["weight"] = best.solution.weight >= rho * oracle->opt_unfair_weight - kObjTol;
      bounds["ratio"] = best.fairness.sigma <= (2.0 + 2.0 * a.delta) * f;
    }
  } else {
    throw PreconditionError("algorithm " + a.alg + " needs a set-system or graph input");
  }
  report["solution"] = EvaluationJson(best);
  report["details"] = std::move(details);
  report["notes"] = notes;
  if (oracle) {
    Json cmp = OracleJson(*oracle);
    if (oracle->feasible && opt > 0.0) cmp["weight_ratio"] = best.solution.weight / opt;
    cmp["bounds"] = std::move(bounds);
    report["oracle"] = std::move(cmp);
  }
}

void SolveGeometry(const SolveArgs& a, GeomInstance geo, Json& report) {
  if (a.alg != "geom") throw PreconditionError("geometry inputs need --alg geom");
  if (a.epsilon) geo.epsilon = *a.epsilon;
  if (a.k) geo.k = *a.k;
  ValidateGeom(geo);
  GeomConfig cfg;
  cfg.seed = a.seed;
  cfg.repetitions = a.trials;
  const GeomOutcome o = AlgGeom(geo, cfg);
  report["instance"] = {{"digest", Digest(GeomToJson(geo))},
                        {"points", geo.points.size()},
                        {"chi", geo.chi},
                        {"k", geo.k},
                        {"delta", geo.delta},
                        {"epsilon", geo.epsilon},
                        {"lipschitz", geo.lipschitz}};
  report["solution"] = GeomEvaluationJson(o.best);
  Json reps = Json::array();
  for (const GeomRepetition& r : o.repetitions) {
    reps.push_back({{"shift", {r.shift_x, r.shift_y}},
                    {"cells", r.cells},
                    {"candidates", r.candidates},
                    {"admissible", r.admissible},
                    {"coverage", r.eval.coverage},
                    {"ratio", Number(r.eval.ratio)},
                    {"rounded", r.rounded}});
  }
  report["details"] = {{"lattice_step", o.lattice_step},
                       {"cell_side", o.cell_side},
                       {"best_repetition", o.best_repetition + 1},
                       {"rounded", o.rounded},
                       {"repetitions", std::move(reps)}};
  report["notes"] = o.notes;
  if (a.oracle) {
    const GeomOracleResult r = GeomOracle(geo, OracleBudget(1000000));
    double wmax = 0.0;
    for (const GeomPoint& p : geo.points) wmax = std::max(wmax, p.weight);
    const double fair = r.fair_found ? r.fair_best.coverage : 0.0;
    const double eps = geo.epsilon;
    Json cmp;
    cmp["fair_found"] = r.fair_found;
    cmp["fair_best"] = GeomEvaluationJson(r.fair_best);
    cmp["unconstrained"] = GeomEvaluationJson(r.unconstrained);
    cmp["enumerated"] = r.enumerated;
    cmp["bounds"] = {{"ratio", o.best.ratio <= 1.0 + eps + 1e-12},
                     {"coverage", o.best.coverage >= (1.0 - 3.0 * eps) *
                                                         (fair - eps * geo.chi * wmax) - 1e-9}};
    report["oracle"] = std::move(cmp);
  }
  if (!a.svg.empty()) WriteFileAtomically(a.svg, GeomSvg(geo, &o));
}

int CmdSolve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema"] = kReportSchema;
  report["command"] = "solve";
  report["algorithm"] = a.alg;
  Json config = {{"seed", a.seed}, {"trials", a.trials}, {"mode", a.mode},
                 {"delta", a.delta}, {"max_chi", a.max_chi}, {"oracle", a.oracle}};
  if (a.opt_hash) config["opt_hash"] = *a.opt_hash;
  if (a.epsilon) config["epsilon"] = *a.epsilon;
  if (a.k) config["k"] = *a.k;
  report["config"] = std::move(config);
  int code = kExitOk;
  try {
    const Json raw = ReadJsonFile(a.input);
    if (LooksLikeGeom(raw)) {
      SolveGeometry(a, GeomFromJson(raw), report);
    } else {
      if (a.alg == "geom") throw PreconditionError("--alg geom needs a geometry input");
      const LoadedInput in = LoadInput(a.input, a.k);
      report["instance"] = InstanceSummary(in.instance);
      report["instance"]["kind"] = in.graph ? "graph" : "set-system";
      std::optional<OracleResult> oracle;
      if (a.oracle) oracle = ExactSolve(in.instance, OracleBudget(kDefaultOracleBudget), OracleThreads());
      SolveSetSystem(a, in, oracle ? &*oracle : nullptr, report);
    }
    report["status"] = "ok";
  } catch (const InfeasibleError& e) {
    report["status"] = "infeasible";
    report["message"] = e.what();
    err << "infeasible: " << e.what() << "\n";
    code = kExitInfeasible;
  }
  if (a.timings) {
    report["timings"] = {{"wall_seconds", std::chrono::duration<double>(
                                              std::chrono::steady_clock::now() - start)
                                              .count()}};
  }
  Emit(a.out, Render(report), out);
  return code;
}

int CmdGen(const GenArgs& a, std::ostream& out) {
  const Params params = ParseParams(a.params);
  Json j;
  if (a.family == "geom") {
    j = GeomToJson(GenerateGeom(params, a.seed));
  } else if (a.family == "graph") {
    auto it = params.find("k");
    j = GraphToJson(GenerateGraph(params, a.seed),
                    static_cast<int>(it == params.end() ? 3.0 : it->second));
  } else {
    j = InstanceToJson(Generate(a.family, params, a.seed));
  }
  Emit(a.out, Render(j), out);
  return kExitOk;
}

int CmdOracle(const OracleArgs& a, std::ostream& out) {
  const Json raw = ReadJsonFile(a.input);
  Json j;
  if (LooksLikeGeom(raw)) {
    GeomInstance geo = GeomFromJson(raw);
    if (a.k) geo.k = *a.k;
    const GeomOracleResult r = GeomOracle(geo, OracleBudget(1000000));
    j["feasible"] = r.fair_found;
    j["fair_best"] = GeomEvaluationJson(r.fair_best);
    j["unconstrained"] = GeomEvaluationJson(r.unconstrained);
    j["enumerated"] = r.enumerated;
  } else {
    const FmcInstance inst = LoadInput(a.input, a.k).instance;
    const std::uint64_t budget = OracleBudget(kDefaultOracleBudget);
    j = OracleJson(ExactSolve(inst, budget, OracleThreads()));
    if (a.at_most_k) j["feasible_at_most_k"] = FeasibleAtMost(inst, budget);
  }
  Emit(a.out, Render(j), out);
  return kExitOk;
}

int CmdBench(const BenchArgs& a, std::ostream& out) {
  if (a.suite != "desk") throw PreconditionError("unknown suite " + a.suite);
  SuiteOptions opt;
  opt.seed = a.seed;
  opt.threads = OracleThreads();
  opt.oracle_budget = OracleBudget(kDefaultOracleBudget);
  const SuiteReport r = RunDeskSuite(opt, [&](const CriterionResult& c) {
    out << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << c.detail << "\n";
    out.flush();
  });
  const std::string table = SuiteTable(r, a.timings);
  out << "\n" << table;
  if (!a.out.empty()) {
    std::filesystem::create_directories(a.out);
    WriteFileAtomically(a.out + "/summary.json", Render(SuiteJson(r, a.timings)));
    WriteFileAtomically(a.out + "/summary.txt", table);
  }
  return AllPassed(r) ? kExitOk : kExitError;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair maximum coverage solvers", "fmc"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "Run one solver on an input file");
  solve->add_option("--alg", sa.alg, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"large", "medium", "small", "iter-node", "iter-fmc", "greedy-plus",
                             "balanced", "geom"}));
  solve->add_option("--input", sa.input, "Instance, graph or geometry JSON")->required();
  solve->add_option("--seed", sa.seed, "Random seed");
  solve->add_option("--trials", sa.trials, "Rounding trials per guess (geom: repetitions)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--opt-hash", sa.opt_hash, "Fix the OPT# guess");
  solve->add_option("--mode", sa.mode, "Iterated rounding mode")
      ->check(CLI::IsMember({"const-chi", "general"}));
  solve->add_option("--delta", sa.delta, "Balance parameter for --alg balanced")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--epsilon", sa.epsilon, "Geometry epsilon override");
  solve->add_flag("--oracle", sa.oracle, "Run the exact oracle and compare");
  solve->add_option("--out", sa.out, "Report file (default: stdout)");
  solve->add_option("--k", sa.k, "Budget override (required for graphs without k)");
  solve->add_option("--max-chi", sa.max_chi, "Color-count guard for small and const-chi");
  solve->add_flag("--trace", sa.trace, "Include the iterated-rounding trace");
  solve->add_flag("--timings", sa.timings, "Include wall-clock timings");
  solve->add_option("--svg", sa.svg, "Write an SVG plot (geom only)");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", ga.family, "gap|random|segregated|balanced|graph|geom")->required();
  gen->add_option("--params", ga.params, "key=value,... parameters");
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--out", ga.out, "Output file (default: stdout)");

  OracleArgs oa;
  CLI::App* orc = app.add_subcommand("oracle", "Exact brute-force optimum");
  orc->add_option("--input", oa.input, "Instance, graph or geometry JSON")->required();
  orc->add_flag("--at-most-k", oa.at_most_k, "Also decide feasibility with at most k sets");
  orc->add_option("--k", oa.k, "Budget override");
  orc->add_option("--out", oa.out, "Output file (default: stdout)");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Run the acceptance suite");
  bench->add_option("--suite", ba.suite, "Suite name")->check(CLI::IsMember({"desk"}));
  bench->add_option("--out", ba.out, "Directory for summary.json and summary.txt");
  bench->add_option("--seed", ba.seed, "Suite seed");
  bench->add_flag("--timings", ba.timings, "Include timings in the summary");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  try {
    if (*solve) return CmdSolve(sa, out, err);
    if (*gen) return CmdGen(ga, out);
    if (*orc) return CmdOracle(oa, out);
    return CmdBench(ba, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace fmc
