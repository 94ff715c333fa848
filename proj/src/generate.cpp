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

#include "fmc/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fmc/errors.hpp"
#include "fmc/rng.hpp"

namespace fmc {

namespace {

double Param(const Params& p, std::string_view key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int IntParam(const Params& p, std::string_view key, int fallback) {
  const double v = Param(p, key, fallback);
  if (v != std::floor(v)) throw PreconditionError(std::string(key) + " must be an integer");
  return static_cast<int>(v);
}

// k distinct values from [0, n), sorted.
std::vector<int> Sample(CounterRng& rng, int n, int k) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.NextBelow(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

FmcInstance RandomInstance(const Params& p, std::uint64_t seed) {
  const int n = IntParam(p, "n", 12);
  const int m = IntParam(p, "m", 8);
  const int k = IntParam(p, "k", 3);
  const int chi = IntParam(p, "chi", 2);
  const double density = Param(p, "density", 0.25);
  const bool weighted = IntParam(p, "weighted", 0) != 0;
  if (n < chi || m < 1 || chi < 1 || density <= 0.0 || density > 1.0) {
    throw PreconditionError("random: need n >= chi >= 1, m >= 1, density in (0, 1]");
  }
  CounterRng rng(DeriveSeed(seed, "gen.random"));
  // Colors: a shuffled balanced assignment so every color is present.
  std::vector<int> colors(n);
  for (int e = 0; e < n; ++e) colors[e] = e % chi;
  for (int i = n - 1; i > 0; --i) std::swap(colors[i], colors[rng.NextBelow(i + 1)]);
  std::vector<double> weights(n, 1.0);
  if (weighted) {
    for (double& w : weights) w = 1.0 + static_cast<double>(rng.NextBelow(9));
  }
  std::vector<std::vector<int>> sets(m);
  for (auto& s : sets) {
    for (int e = 0; e < n; ++e) {
      if (rng.NextDouble() < density) s.push_back(e);
    }
    if (s.empty()) s.push_back(static_cast<int>(rng.NextBelow(n)));
  }
  return FmcInstance::Create(n, std::min(k, m), chi, std::move(weights), std::move(colors),
                             std::move(sets));
}

FmcInstance SegregatedInstance(const Params& p, std::uint64_t seed) {
  const int chi = IntParam(p, "chi", 2);
  const int k = IntParam(p, "k", 3);
  const int per_color = IntParam(p, "n_per_color", 6);
  const int sets_per_color = IntParam(p, "sets_per_color", 4);
  const int max_size = std::min(IntParam(p, "max_size", 3), per_color);
  if (chi < 1 || per_color < 1 || sets_per_color < 1 || max_size < 1) {
    throw PreconditionError("segregated: chi, n_per_color, sets_per_color, max_size must be >= 1");
  }
  CounterRng rng(DeriveSeed(seed, "gen.segregated"));
  const int n = chi * per_color;
  std::vector<int> colors(n);
  for (int e = 0; e < n; ++e) colors[e] = e / per_color;
  std::vector<std::vector<int>> sets;
  for (int r = 0; r < chi; ++r) {
    for (int s = 0; s < sets_per_color; ++s) {
      const int size = 1 + static_cast<int>(rng.NextBelow(max_size));
      std::vector<int> members = Sample(rng, per_color, size);
      for (int& e : members) e += r * per_color;
      sets.push_back(std::move(members));
    }
  }
  const int m = static_cast<int>(sets.size());
  return FmcInstance::Create(n, std::min(k, m), chi, std::vector<double>(n, 1.0),
                             std::move(colors), std::move(sets));
}

FmcInstance BalancedInstance(const Params& p, std::uint64_t seed) {
  const int delta = IntParam(p, "delta", 0);
  const int chi = IntParam(p, "chi", 2);
  const int k = IntParam(p, "k", 2);
  const int m = IntParam(p, "m", 6);
  const int per_color = IntParam(p, "n_per_color", 6);
  const int base_max = IntParam(p, "base_max", 2);
  if (delta < 0 || chi < 1 || m < 1 || base_max < 1 || per_color < base_max + delta) {
    throw PreconditionError("balanced: need delta >= 0, n_per_color >= base_max + delta");
  }
  CounterRng rng(DeriveSeed(seed, "gen.balanced"));
  const int n = chi * per_color;
  std::vector<int> colors(n);
  for (int e = 0; e < n; ++e) colors[e] = e % chi;
  // Elements of color c are c, c + chi, c + 2 chi, ...
  std::vector<std::vector<int>> sets;
  for (int s = 0; s < m; ++s) {
    const int base = 1 + static_cast<int>(rng.NextBelow(base_max));
    std::vector<int> counts(chi, base);
    for (int attempt = 0; attempt < 16; ++attempt) {
      std::vector<int> trial(chi);
      int size = 0;
      for (int c = 0; c < chi; ++c) {
        trial[c] = base + static_cast<int>(rng.NextBelow(delta + 1));
        size += trial[c];
      }
      const int lo = std::max(1, size / chi - delta);
      const int hi = (size + chi - 1) / chi + delta;
      if (std::all_of(trial.begin(), trial.end(), [&](int c) { return c >= lo && c <= hi; })) {
        counts = trial;
        break;
      }
    }
    std::vector<int> members;
    for (int c = 0; c < chi; ++c) {
      for (int idx : Sample(rng, per_color, counts[c])) members.push_back(idx * chi + c);
    }
    sets.push_back(std::move(members));
  }
  return FmcInstance::Create(n, std::min(k, m), chi, std::vector<double>(n, 1.0),
                             std::move(colors), std::move(sets));
}

}  // namespace

Params ParseParams(std::string_view text) {
  Params out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("expected key=value in params, got \"" + std::string(item) + "\"");
    }
    const std::string value(item.substr(eq + 1));
    try {
      std::size_t used = 0;
      out[std::string(item.substr(0, eq))] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("non-numeric param value \"" + value + "\"");
    }
  }
  return out;
}

FmcInstance GapInstance(int alpha) {
  if (alpha < 2) throw PreconditionError("gap family needs alpha >= 2");
  std::vector<int> colors;
  std::vector<std::vector<int>> sets;
  for (int block = 0; block < alpha; ++block) {
    const int first = static_cast<int>(colors.size());
    colors.push_back(0);
    for (int i = 0; i < alpha; ++i) colors.push_back(1);
    for (int drop = 0; drop <= alpha; ++drop) {
      std::vector<int> s;
      for (int i = 0; i <= alpha; ++i) {
        if (i != drop) s.push_back(first + i);
      }
      sets.push_back(std::move(s));
    }
  }
  for (int pair = 0; pair <= alpha; ++pair) {
    const int first = static_cast<int>(colors.size());
    colors.push_back(0);
    colors.push_back(1);
    sets.push_back({first, first + 1});
  }
  const int n = static_cast<int>(colors.size());
  return FmcInstance::Create(n, alpha + 1, 2, std::vector<double>(n, 1.0), std::move(colors),
                             std::move(sets));
}

FmcInstance Generate(std::string_view family, const Params& params, std::uint64_t seed) {
  if (family == "gap") return GapInstance(IntParam(params, "alpha", 2));
  if (family == "random") return RandomInstance(params, seed);
  if (family == "segregated") return SegregatedInstance(params, seed);
  if (family == "balanced") return BalancedInstance(params, seed);
  if (family == "graph") {
    return FromGraph(GenerateGraph(params, seed), IntParam(params, "k", 3)).instance;
  }
  throw PreconditionError("unknown generator family \"" + std::string(family) + "\"");
}

ColoredGraph GenerateGraph(const Params& params, std::uint64_t seed) {
  const int nodes = IntParam(params, "nodes", 8);
  const int edges = IntParam(params, "edges", 12);
  const int chi = IntParam(params, "chi", 2);
  const bool weighted = IntParam(params, "weighted", 0) != 0;
  const int max_edges = nodes * (nodes - 1) / 2;
  if (nodes < 2 || chi < 1 || edges < chi || edges > max_edges) {
    throw PreconditionError("graph: need nodes >= 2 and chi <= edges <= nodes(nodes-1)/2");
  }
  CounterRng rng(DeriveSeed(seed, "gen.graph"));
  ColoredGraph g;
  g.nodes = nodes;
  g.chi = chi;
  std::vector<int> picks = Sample(rng, max_edges, edges);
  std::vector<int> colors(edges);
  for (int i = 0; i < edges; ++i) colors[i] = i % chi;
  for (int i = edges - 1; i > 0; --i) std::swap(colors[i], colors[rng.NextBelow(i + 1)]);
  int idx = 0;
  int code = 0;
  for (int u = 0; u < nodes; ++u) {
    for (int v = u + 1; v < nodes; ++v, ++code) {
      if (idx < edges && picks[idx] == code) {
        const double w = weighted ? 1.0 + static_cast<double>(rng.NextBelow(9)) : 1.0;
        g.edges.push_back(Edge{u, v, colors[idx], w});
        ++idx;
      }
    }
  }
  return g;
}

bool IsDeltaBalanced(const FmcInstance& inst, int delta) {
  const int chi = inst.chi();
  const auto nu = ColorCountsPerSet(inst);
  for (int s = 0; s < inst.m(); ++s) {
    const int size = static_cast<int>(inst.set(s).size());
    const int lo = std::max(1, size / chi - delta);
    const int hi = (size + chi - 1) / chi + delta;
    for (int c = 0; c < chi; ++c) {
      if (nu[s][c] < lo || nu[s][c] > hi) return false;
    }
  }
  return true;
}

bool IsSegregated(const FmcInstance& inst) {
  for (const auto& s : inst.sets()) {
    for (int e : s) {
      if (inst.color(e) != inst.color(s.front())) return false;
    }
  }
  return true;
}

}  // namespace fmc
