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

#include "fmc/geom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fmc/errors.hpp"
#include "fmc/oracle.hpp"
#include "fmc/rng.hpp"

namespace fmc {

namespace {

constexpr double kCoverTol = 1e-12;

bool Covers(const Ball& b, const GeomPoint& p) {
  const double dx = p.x - b.x;
  const double dy = p.y - b.y;
  return dx * dx + dy * dy <= 1.0 + kCoverTol;
}

double Ratio(const std::vector<double>& per_color) {
  const auto [lo, hi] = std::minmax_element(per_color.begin(), per_color.end());
  if (*lo <= 0.0) return kInfinity;
  return *hi / *lo;
}

// A lattice center with the points it covers.
struct Candidate {
  Ball center;
  std::vector<int> covered;
  double mass = 0.0;
};

double CentroidDistance(const GeomInstance& geo, const Candidate& c) {
  double cx = 0.0;
  double cy = 0.0;
  for (int p : c.covered) {
    cx += geo.points[p].x;
    cy += geo.points[p].y;
  }
  cx /= static_cast<double>(c.covered.size());
  cy /= static_cast<double>(c.covered.size());
  return std::hypot(c.center.x - cx, c.center.y - cy);
}

std::vector<Candidate> LatticeCandidates(const GeomInstance& geo, bool (*keep)(const Ball&, const void*),
                                         const void* ctx) {
  const double step = LatticeStep(geo);
  const int steps = static_cast<int>(std::floor(geo.delta / step + 1e-9));
  std::vector<Candidate> out;
  std::map<std::vector<int>, std::size_t> seen;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      Candidate c;
      c.center = Ball{i * step, j * step};
      if (keep && !keep(c.center, ctx)) continue;
      for (int p = 0; p < static_cast<int>(geo.points.size()); ++p) {
        if (Covers(c.center, geo.points[p])) {
          c.covered.push_back(p);
          c.mass += geo.points[p].weight;
        }
      }
      if (c.covered.empty()) continue;
      // One center per covered set: the one nearest the covered centroid.
      auto it = seen.find(c.covered);
      if (it == seen.end()) {
        seen.emplace(c.covered, out.size());
        out.push_back(std::move(c));
      } else if (CentroidDistance(geo, c) < CentroidDistance(geo, out[it->second])) {
        out[it->second].center = c.center;
      }
    }
  }
  return out;
}

struct Tally {
  std::vector<double> per_color;
  double coverage = 0.0;
};

Tally UnionTally(const GeomInstance& geo, const std::vector<const Candidate*>& chosen,
                 std::vector<char>& mark) {
  Tally t;
  t.per_color.assign(geo.chi, 0.0);
  std::vector<int> touched;
  for (const Candidate* c : chosen) {
    for (int p : c->covered) {
      if (mark[p]) continue;
      mark[p] = 1;
      touched.push_back(p);
    }
  }
  std::sort(touched.begin(), touched.end());
  for (int p : touched) {
    t.per_color[geo.points[p].color] += geo.points[p].weight;
    t.coverage += geo.points[p].weight;
    mark[p] = 0;
  }
  return t;
}

// Calls visit(subset) for every subset of [0, n) with 1..r members, in
// size-then-lexicographic order.
template <typename Visit>
void ForEachSubset(int n, int r, Visit visit) {
  for (int size = 1; size <= std::min(n, r); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      visit(idx);
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

std::uint64_t SubsetCount(int n, int r) {
  std::uint64_t total = 0;
  for (int s = 1; s <= std::min(n, r); ++s) total += Binomial(n, s);
  return total;
}

struct Grid {
  double side;
  double sx;
  double sy;
  bool single;  // no walls
};

bool FarFromWalls(const Ball& b, const void* ctx) {
  const Grid& g = *static_cast<const Grid*>(ctx);
  if (g.single) return true;
  auto ok = [&](double v, double shift) {
    const double off = std::fmod(v - shift, g.side);
    const double pos = off < 0 ? off + g.side : off;
    return pos > 1.0 && g.side - pos > 1.0;
  };
  return ok(b.x, g.sx) && ok(b.y, g.sy);
}

std::pair<long long, long long> CellOf(const Ball& b, const Grid& g) {
  if (g.single) return {0, 0};
  return {static_cast<long long>(std::floor((b.x - g.sx) / g.side)),
          static_cast<long long>(std::floor((b.y - g.sy) / g.side))};
}

struct Option {
  int count = 0;
  std::vector<long long> units;
  Tally tally;
  std::vector<Ball> centers;
};

struct DpState {
  Tally tally;
  std::vector<Ball> centers;
};

GeomRepetition RunRepetition(const GeomInstance& geo, const GeomConfig& cfg, const Grid& grid,
                             std::vector<std::string>& notes) {
  GeomRepetition rep;
  rep.shift_x = grid.sx;
  rep.shift_y = grid.sy;
  const double unit = geo.epsilon / geo.k;
  std::vector<Candidate> all = LatticeCandidates(geo, &FarFromWalls, &grid);
  std::map<std::pair<long long, long long>, std::vector<Candidate>> cells;
  for (auto& c : all) {
    const auto key = CellOf(c.center, grid);
    cells[key].push_back(std::move(c));
  }
  std::vector<char> mark(geo.points.size(), 0);
  std::vector<std::vector<Option>> options;
  const int per_cell = std::min(geo.k, cfg.subset_cap);
  if (cfg.subset_cap < geo.k) {
    notes.push_back("per-cell subset size capped at " + std::to_string(cfg.subset_cap));
  }
  for (auto& [key, pool] : cells) {
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Candidate& a, const Candidate& b) { return a.mass > b.mass; });
    if (static_cast<int>(pool.size()) > cfg.center_cap) {
      notes.push_back("cell candidate pool of " + std::to_string(pool.size()) +
                      " centers capped at " + std::to_string(cfg.center_cap));
      pool.resize(cfg.center_cap);
    }
    const int n = static_cast<int>(pool.size());
    if (SubsetCount(n, per_cell) > cfg.max_subsets_per_cell) {
      throw BudgetExceeded("geometric cell enumeration exceeds " +
                           std::to_string(cfg.max_subsets_per_cell) + " subsets");
    }
    ++rep.cells;
    rep.candidates += n;
    // Keep the best coverage per (count, rounded vector).
    std::map<std::vector<long long>, Option> best;
    ForEachSubset(n, per_cell, [&](const std::vector<int>& idx) {
      std::vector<const Candidate*> chosen;
      for (int i : idx) chosen.push_back(&pool[i]);
      Option o;
      o.count = static_cast<int>(idx.size());
      o.tally = UnionTally(geo, chosen, mark);
      std::vector<long long> key{o.count};
      for (double w : o.tally.per_color) {
        o.units.push_back(static_cast<long long>(std::floor(w / unit + 1e-9)));
        key.push_back(o.units.back());
      }
      auto it = best.find(key);
      if (it != best.end() && it->second.tally.coverage >= o.tally.coverage) return;
      for (const Candidate* c : chosen) o.centers.push_back(c->center);
      best[key] = std::move(o);
    });
    std::vector<Option> list;
    for (auto& [k, o] : best) list.push_back(std::move(o));
    options.push_back(std::move(list));
  }
  // Vector DP over cells, at most one option per cell.
  std::map<std::vector<long long>, DpState> dp;
  dp[std::vector<long long>(geo.chi + 1, 0)] = DpState{Tally{std::vector<double>(geo.chi, 0.0), 0.0}, {}};
  for (const auto& list : options) {
    std::map<std::vector<long long>, DpState> next = dp;
    for (const auto& [key, state] : dp) {
      for (const Option& o : list) {
        if (key[0] + o.count > geo.k) continue;
        std::vector<long long> nk(key);
        nk[0] += o.count;
        DpState ns;
        ns.tally.per_color = state.tally.per_color;
        for (int c = 0; c < geo.chi; ++c) {
          nk[c + 1] += o.units[c];
          ns.tally.per_color[c] += o.tally.per_color[c];
        }
        ns.tally.coverage = state.tally.coverage + o.tally.coverage;
        auto it = next.find(nk);
        if (it != next.end() && it->second.tally.coverage >= ns.tally.coverage) continue;
        ns.centers = state.centers;
        ns.centers.insert(ns.centers.end(), o.centers.begin(), o.centers.end());
        next[nk] = std::move(ns);
      }
    }
    dp = std::move(next);
  }
  // Admissible: rounded vector inside the window and exact weights too.
  const DpState* pick = nullptr;
  const std::vector<long long>* pick_key = nullptr;
  for (const auto& [key, state] : dp) {
    if (key[0] == 0) continue;
    const auto [lo, hi] = std::minmax_element(key.begin() + 1, key.end());
    if (*lo <= 0 || static_cast<double>(*hi) > (1.0 + geo.epsilon) * static_cast<double>(*lo) + 1e-9) {
      continue;
    }
    if (Ratio(state.tally.per_color) > 1.0 + geo.epsilon + 1e-12) continue;
    if (!pick || state.tally.coverage > pick->tally.coverage) {
      pick = &state;
      pick_key = &key;
    }
  }
  rep.admissible = pick != nullptr;
  if (!pick) {
    // Fallback: smallest exact ratio, then coverage.
    for (const auto& [key, state] : dp) {
      if (key[0] == 0) continue;
      const double r = Ratio(state.tally.per_color);
      if (!pick || r < Ratio(pick->tally.per_color) ||
          (r == Ratio(pick->tally.per_color) && state.tally.coverage > pick->tally.coverage)) {
        pick = &state;
        pick_key = &key;
      }
    }
  }
  if (pick) {
    rep.eval = EvaluateBalls(geo, pick->centers);
    for (int c = 0; c < geo.chi; ++c) rep.rounded.push_back((*pick_key)[c + 1] * unit);
  } else {
    rep.eval = EvaluateBalls(geo, {});
    rep.rounded.assign(geo.chi, 0.0);
  }
  return rep;
}

// Fair before unfair, then coverage, then ratio.
bool BetterRep(const GeomRepetition& a, const GeomRepetition& b) {
  if (a.eval.fair != b.eval.fair) return a.eval.fair;
  if (a.eval.coverage != b.eval.coverage) return a.eval.coverage > b.eval.coverage;
  return a.eval.ratio < b.eval.ratio;
}

}  // namespace

void ValidateGeom(const GeomInstance& geo) {
  if (!(geo.delta > 0.0)) throw ValidationError("domain side must be positive");
  if (!(geo.epsilon > 0.0 && geo.epsilon < 1.0)) throw ValidationError("epsilon must be in (0, 1)");
  if (!(geo.lipschitz > 0.0)) throw ValidationError("lipschitz constant must be positive");
  if (geo.k < 1) throw ValidationError("k must be at least 1");
  if (geo.chi < 1) throw ValidationError("chi must be at least 1");
  std::vector<double> mass(geo.chi, 0.0);
  for (std::size_t i = 0; i < geo.points.size(); ++i) {
    const GeomPoint& p = geo.points[i];
    if (!(p.x >= 0.0 && p.x <= geo.delta && p.y >= 0.0 && p.y <= geo.delta)) {
      throw ValidationError("point " + std::to_string(i + 1) + " outside the domain");
    }
    if (p.color < 0 || p.color >= geo.chi) {
      throw ValidationError("color out of range for point " + std::to_string(i + 1));
    }
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
      throw ValidationError("negative or non-finite weight for point " + std::to_string(i + 1));
    }
    mass[p.color] += p.weight;
  }
  for (int c = 0; c < geo.chi; ++c) {
    if (!(mass[c] > 0.0)) throw ValidationError("color " + std::to_string(c + 1) + " has no weight");
  }
}

bool LooksLikeGeom(const Json& j) { return j.is_object() && j.contains("points"); }

GeomInstance GeomFromJson(const Json& j) {
  if (!LooksLikeGeom(j)) throw ParseError("geometry instance must have \"points\"");
  GeomInstance geo;
  try {
    geo.delta = j.at("delta").get<double>();
    geo.epsilon = j.at("epsilon").get<double>();
    geo.lipschitz = j.value("lipschitz", 1.0);
    geo.k = j.at("k").get<int>();
    int chi = 0;
    for (const auto& row : j.at("points")) {
      if (!row.is_array() || row.size() < 3 || row.size() > 4) {
        throw ParseError("points entries must be [x, y, color, weight]");
      }
      GeomPoint p;
      p.x = row[0].get<double>();
      p.y = row[1].get<double>();
      p.color = row[2].get<int>() - 1;
      p.weight = row.size() == 4 ? row[3].get<double>() : 1.0;
      chi = std::max(chi, p.color + 1);
      geo.points.push_back(p);
    }
    geo.chi = j.contains("chi") ? j.at("chi").get<int>() : chi;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad geometry field: ") + e.what());
  }
  ValidateGeom(geo);
  return geo;
}

Json GeomToJson(const GeomInstance& geo) {
  Json j;
  j["delta"] = geo.delta;
  j["epsilon"] = geo.epsilon;
  j["lipschitz"] = geo.lipschitz;
  j["k"] = geo.k;
  j["chi"] = geo.chi;
  Json pts = Json::array();
  for (const GeomPoint& p : geo.points) pts.push_back({p.x, p.y, p.color + 1, p.weight});
  j["points"] = std::move(pts);
  return j;
}

GeomInstance GenerateGeom(const Params& params, std::uint64_t seed) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  GeomInstance geo;
  const int n = static_cast<int>(get("points", 24));
  geo.chi = static_cast<int>(get("chi", 2));
  geo.delta = get("side", 6.0);
  geo.k = static_cast<int>(get("k", 2));
  geo.epsilon = get("epsilon", 0.5);
  geo.lipschitz = get("lipschitz", 0.1);
  const int clusters = static_cast<int>(get("clusters", 3));
  const bool weighted = get("weighted", 0) != 0;
  if (n < geo.chi || clusters < 1 || geo.delta <= 0.0) {
    throw PreconditionError("geom: need points >= chi, clusters >= 1, side > 0");
  }
  CounterRng rng(DeriveSeed(seed, "gen.geom"));
  std::vector<Ball> hubs(clusters);
  for (Ball& h : hubs) {
    h.x = geo.delta * (0.15 + 0.7 * rng.NextDouble());
    h.y = geo.delta * (0.15 + 0.7 * rng.NextDouble());
  }
  for (int i = 0; i < n; ++i) {
    const Ball& h = hubs[rng.NextBelow(clusters)];
    const double r = 1.2 * std::sqrt(rng.NextDouble());
    const double a = 2.0 * 3.14159265358979323846 * rng.NextDouble();
    GeomPoint p;
    p.x = std::clamp(h.x + r * std::cos(a), 0.0, geo.delta);
    p.y = std::clamp(h.y + r * std::sin(a), 0.0, geo.delta);
    p.color = i < geo.chi ? i : static_cast<int>(rng.NextBelow(geo.chi));
    p.weight = weighted ? 1.0 + static_cast<double>(rng.NextBelow(4)) : 1.0;
    geo.points.push_back(p);
  }
  ValidateGeom(geo);
  return geo;
}

double LatticeStep(const GeomInstance& geo) { return geo.epsilon / (8.0 * geo.lipschitz); }

double CellSide(const GeomInstance& geo) { return 16.0 / geo.epsilon; }

GeomEvaluation EvaluateBalls(const GeomInstance& geo, const std::vector<Ball>& centers) {
  GeomEvaluation ev;
  ev.centers = centers;
  ev.per_color.assign(geo.chi, 0.0);
  for (const GeomPoint& p : geo.points) {
    const bool hit =
        std::any_of(centers.begin(), centers.end(), [&](const Ball& b) { return Covers(b, p); });
    if (!hit) continue;
    ev.per_color[p.color] += p.weight;
    ev.coverage += p.weight;
  }
  ev.ratio = Ratio(ev.per_color);
  ev.fair = ev.ratio <= 1.0 + geo.epsilon + 1e-12;
  return ev;
}

GeomOutcome AlgGeom(const GeomInstance& geo, const GeomConfig& cfg) {
  ValidateGeom(geo);
  GeomOutcome out;
  out.lattice_step = LatticeStep(geo);
  out.cell_side = CellSide(geo);
  const int n = static_cast<int>(geo.points.size());
  int reps = cfg.repetitions;
  if (reps <= 0) reps = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(n, 1)))));
  std::vector<std::string> notes;
  for (int r = 0; r < reps; ++r) {
    CounterRng rng(DeriveSeed(cfg.seed, "geom.shift", r));
    Grid grid{out.cell_side, out.cell_side * rng.NextDouble(), out.cell_side * rng.NextDouble(),
              false};
    GeomRepetition rep = RunRepetition(geo, cfg, grid, notes);
    if (rep.cells == 0) {
      notes.push_back("repetition " + std::to_string(r + 1) +
                      ": no center clears the grid; single-cell fallback");
      grid.single = true;
      rep = RunRepetition(geo, cfg, grid, notes);
    }
    if (out.best_repetition < 0 || BetterRep(rep, out.repetitions[out.best_repetition])) {
      out.best_repetition = r;
    }
    out.repetitions.push_back(std::move(rep));
  }
  out.best = out.repetitions[out.best_repetition].eval;
  out.rounded = out.repetitions[out.best_repetition].rounded;
  std::sort(notes.begin(), notes.end());
  notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
  out.notes = std::move(notes);
  return out;
}

GeomOracleResult GeomOracle(const GeomInstance& geo, std::uint64_t budget) {
  ValidateGeom(geo);
  const std::vector<Candidate> pool = LatticeCandidates(geo, nullptr, nullptr);
  const int n = static_cast<int>(pool.size());
  if (SubsetCount(n, geo.k) > budget) {
    throw BudgetExceeded("geometric oracle needs " + std::to_string(SubsetCount(n, geo.k)) +
                         " subsets, budget " + std::to_string(budget));
  }
  GeomOracleResult res;
  res.unconstrained = EvaluateBalls(geo, {});
  std::vector<char> mark(geo.points.size(), 0);
  std::vector<int> fair_idx;
  std::vector<int> free_idx;
  double fair_cov = -1.0;
  double free_cov = -1.0;
  ForEachSubset(n, geo.k, [&](const std::vector<int>& idx) {
    ++res.enumerated;
    std::vector<const Candidate*> chosen;
    for (int i : idx) chosen.push_back(&pool[i]);
    const Tally t = UnionTally(geo, chosen, mark);
    if (t.coverage > free_cov) {
      free_cov = t.coverage;
      free_idx = idx;
    }
    if (Ratio(t.per_color) <= 1.0 + geo.epsilon + 1e-12 && t.coverage > fair_cov) {
      fair_cov = t.coverage;
      fair_idx = idx;
    }
  });
  auto centers = [&](const std::vector<int>& idx) {
    std::vector<Ball> out;
    for (int i : idx) out.push_back(pool[i].center);
    return out;
  };
  if (!free_idx.empty()) res.unconstrained = EvaluateBalls(geo, centers(free_idx));
  res.fair_found = fair_cov >= 0.0;
  res.fair_best = res.fair_found ? EvaluateBalls(geo, centers(fair_idx)) : res.unconstrained;
  return res;
}

std::string GeomSvg(const GeomInstance& geo, const GeomOutcome* outcome) {
  const double scale = 600.0 / std::max(geo.delta, 1.0);
  const double pad = 20.0;
  const double size = geo.delta * scale + 2 * pad;
  static const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  auto X = [&](double x) { return pad + x * scale; };
  auto Y = [&](double y) { return pad + (geo.delta - y) * scale; };
  std::ostringstream s;
  s.precision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
    << "\">\n";
  s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << geo.delta * scale
    << "\" height=\"" << geo.delta * scale << "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (outcome && outcome->best_repetition >= 0) {
    const GeomRepetition& rep = outcome->repetitions[outcome->best_repetition];
    const double side = outcome->cell_side;
    for (int axis = 0; axis < 2; ++axis) {
      const double shift = axis == 0 ? rep.shift_x : rep.shift_y;
      for (double v = shift - side * std::ceil(shift / side); v <= geo.delta; v += side) {
        if (v < 0.0) continue;
        if (axis == 0) {
          s << "<line x1=\"" << X(v) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(v) << "\" y2=\""
            << Y(geo.delta) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 4\"/>\n";
        } else {
          s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(v) << "\" x2=\"" << X(geo.delta)
            << "\" y2=\"" << Y(v) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 4\"/>\n";
        }
      }
    }
    for (const Ball& b : outcome->best.centers) {
      s << "<circle cx=\"" << X(b.x) << "\" cy=\"" << Y(b.y) << "\" r=\"" << scale
        << "\" fill=\"#000\" fill-opacity=\"0.08\" stroke=\"#000\"/>\n";
    }
  }
  for (const GeomPoint& p : geo.points) {
    s << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"3\" fill=\""
      << kPalette[p.color % 8] << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace fmc
