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

#include "fmc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

std::string Ordinal(int zero_based) { return std::to_string(zero_based + 1); }

}  // namespace

Rational Rational::Make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

FmcInstance FmcInstance::Create(int num_elements, int k, int chi,
                                std::vector<double> weights, std::vector<int> colors,
                                std::vector<std::vector<int>> sets,
                                std::vector<Rational> proportions) {
  if (num_elements < 1) throw ValidationError("n must be positive");
  if (chi < 1) throw ValidationError("chi must be at least 1");
  if (static_cast<int>(weights.size()) != num_elements) {
    throw ValidationError("weights has " + std::to_string(weights.size()) +
                          " entries, expected n = " + std::to_string(num_elements));
  }
  if (static_cast<int>(colors.size()) != num_elements) {
    throw ValidationError("colors has " + std::to_string(colors.size()) +
                          " entries, expected n = " + std::to_string(num_elements));
  }
  for (int e = 0; e < num_elements; ++e) {
    if (!(weights[e] >= 0.0) || !std::isfinite(weights[e])) {
      throw ValidationError("negative or non-finite weight for element " + Ordinal(e));
    }
    if (colors[e] < 0 || colors[e] >= chi) {
      throw ValidationError("color out of range for element " + Ordinal(e));
    }
  }
  std::vector<int> color_used(chi, 0);
  for (int c : colors) color_used[c] = 1;
  for (int c = 0; c < chi; ++c) {
    if (!color_used[c]) throw ValidationError("color " + Ordinal(c) + " has no element");
  }
  const int m = static_cast<int>(sets.size());
  if (m < 1) throw ValidationError("instance has no sets");
  std::vector<int> seen(num_elements, -1);
  for (int s = 0; s < m; ++s) {
    if (sets[s].empty()) throw ValidationError("empty set " + Ordinal(s));
    for (int e : sets[s]) {
      if (e < 0 || e >= num_elements) {
        throw ValidationError("element index out of range in set " + Ordinal(s));
      }
      if (seen[e] == s) throw ValidationError("duplicate element in set " + Ordinal(s));
      seen[e] = s;
    }
    std::sort(sets[s].begin(), sets[s].end());
  }
  if (k < 1 || k > m) {
    throw ValidationError("k = " + std::to_string(k) + " outside [1, m = " +
                          std::to_string(m) + "]");
  }

  FmcInstance inst;
  inst.k_ = k;
  inst.chi_ = chi;
  inst.weights_ = std::move(weights);
  inst.colors_ = std::move(colors);
  inst.sets_ = std::move(sets);
  if (proportions.empty()) {
    inst.proportions_.assign(chi, Rational::Make(1, chi));
    inst.equal_proportions_ = true;
  } else {
    if (static_cast<int>(proportions.size()) != chi) {
      throw ValidationError("proportions must have chi entries");
    }
    // Sum with a common denominator; inputs are small.
    Rational sum{0, 1};
    for (int c = 0; c < chi; ++c) {
      const Rational q = Rational::Make(proportions[c].num, proportions[c].den);
      if (q.num <= 0) throw ValidationError("non-positive proportion for color " + Ordinal(c));
      proportions[c] = q;
      sum = Rational::Make(sum.num * q.den + q.num * sum.den, sum.den * q.den);
    }
    if (!(sum == Rational{1, 1})) throw ValidationError("proportions do not sum to 1");
    inst.equal_proportions_ = std::all_of(proportions.begin(), proportions.end(),
                                          [&](const Rational& q) { return q == proportions[0]; });
    inst.proportions_ = std::move(proportions);
  }
  return inst;
}

FmcInstance FmcInstance::WithK(int k) const {
  if (k < 1 || k > m()) throw ValidationError("k outside [1, m]");
  FmcInstance copy = *this;
  copy.k_ = k;
  return copy;
}

InstanceStats ComputeStats(const FmcInstance& inst) {
  InstanceStats stats;
  std::vector<int> freq(inst.n(), 0);
  for (const auto& s : inst.sets()) {
    stats.a = std::max(stats.a, static_cast<int>(s.size()));
    for (int e : s) ++freq[e];
  }
  stats.f = *std::max_element(freq.begin(), freq.end());
  stats.per_color_counts.assign(inst.chi(), 0);
  for (int e = 0; e < inst.n(); ++e) {
    ++stats.per_color_counts[inst.color(e)];
    if (inst.weight(e) != 1.0) stats.unweighted = false;
  }
  stats.singleton_only = stats.a == 1;
  return stats;
}

std::vector<std::vector<int>> ColorCountsPerSet(const FmcInstance& inst) {
  std::vector<std::vector<int>> nu(inst.m(), std::vector<int>(inst.chi(), 0));
  for (int s = 0; s < inst.m(); ++s) {
    for (int e : inst.set(s)) ++nu[s][inst.color(e)];
  }
  return nu;
}

void ValidateGraph(const ColoredGraph& g) {
  if (g.nodes < 1) throw ValidationError("graph has no nodes");
  if (g.chi < 1) throw ValidationError("graph chi must be at least 1");
  std::vector<int> used(g.chi, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    const std::string where = "edge " + std::to_string(i + 1);
    if (e.u < 0 || e.u >= g.nodes || e.v < 0 || e.v >= g.nodes) {
      throw ValidationError("endpoint out of range in " + where);
    }
    if (e.u == e.v) throw ValidationError("self-loop in " + where);
    if (e.color < 0 || e.color >= g.chi) throw ValidationError("color out of range in " + where);
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("negative or non-finite weight in " + where);
    }
    used[e.color] = 1;
  }
  for (int c = 0; c < g.chi; ++c) {
    if (!used[c]) throw ValidationError("color " + Ordinal(c) + " has no edge");
  }
}

GraphInstance FromGraph(const ColoredGraph& g, int k) {
  ValidateGraph(g);
  std::vector<std::vector<int>> incident(g.nodes);
  std::vector<double> weights;
  std::vector<int> colors;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    incident[g.edges[i].u].push_back(static_cast<int>(i));
    incident[g.edges[i].v].push_back(static_cast<int>(i));
    weights.push_back(g.edges[i].weight);
    colors.push_back(g.edges[i].color);
  }
  std::vector<std::vector<int>> sets;
  std::vector<int> node_of_set;
  for (int v = 0; v < g.nodes; ++v) {
    if (incident[v].empty()) continue;
    sets.push_back(incident[v]);
    node_of_set.push_back(v);
  }
  if (k > static_cast<int>(sets.size())) {
    throw ValidationError("k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(sets.size()) + " non-isolated nodes");
  }
  return GraphInstance{
      FmcInstance::Create(static_cast<int>(g.edges.size()), k, g.chi, std::move(weights),
                          std::move(colors), std::move(sets)),
      std::move(node_of_set)};
}

std::vector<int> NormalizeSelection(const FmcInstance& inst, std::span<const int> selected) {
  std::vector<int> out(selected.begin(), selected.end());
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0 || out[i] >= inst.m()) {
      throw ValidationError("selected set index " + std::to_string(out[i] + 1) + " out of range");
    }
    if (i > 0 && out[i] == out[i - 1]) {
      throw ValidationError("duplicate selected set " + std::to_string(out[i] + 1));
    }
  }
  return out;
}

double Sigma(const FmcInstance& inst, std::span<const int> p) {
  double max_share = 0.0;
  double min_positive = kInfinity;
  bool any_zero = false;
  for (int c = 0; c < inst.chi(); ++c) {
    const double share = p[c] / inst.proportions()[c].ToDouble();
    if (p[c] == 0) {
      any_zero = true;
    } else {
      min_positive = std::min(min_positive, share);
    }
    max_share = std::max(max_share, share);
  }
  if (max_share == 0.0) return 1.0;  // nothing covered: all counts equal
  if (any_zero) return kInfinity;
  return max_share / min_positive;
}

bool IsExactlyFair(const FmcInstance& inst, std::span<const int> p) {
  const auto& q = inst.proportions();
  for (int i = 0; i < inst.chi(); ++i) {
    for (int j = i + 1; j < inst.chi(); ++j) {
      // p_i / q_i == p_j / q_j
      if (static_cast<std::int64_t>(p[i]) * q[i].den * q[j].num !=
          static_cast<std::int64_t>(p[j]) * q[j].den * q[i].num) {
        return false;
      }
    }
  }
  return true;
}

namespace {

bool PairwiseWithin(const FmcInstance& inst, std::span<const double> p, double epsilon) {
  const auto& q = inst.proportions();
  for (int i = 0; i < inst.chi(); ++i) {
    for (int j = 0; j < inst.chi(); ++j) {
      if (i == j) continue;
      // p_i q_j <= eps p_j q_i
      if (p[i] * q[j].ToDouble() > epsilon * p[j] * q[i].ToDouble() * (1.0 + 1e-12)) return false;
    }
  }
  return true;
}

}  // namespace

Evaluation Evaluate(const FmcInstance& inst, std::span<const int> selected, double epsilon,
                    CardinalityMode mode) {
  Evaluation out;
  Solution& sol = out.solution;
  sol.selected = NormalizeSelection(inst, selected);
  sol.cardinality_mode = mode;
  std::vector<char> hit(inst.n(), 0);
  for (int s : sol.selected) {
    for (int e : inst.set(s)) hit[e] = 1;
  }
  sol.p.assign(inst.chi(), 0);
  for (int e = 0; e < inst.n(); ++e) {
    if (!hit[e]) continue;
    sol.covered.push_back(e);
    ++sol.p[inst.color(e)];
    sol.weight += inst.weight(e);
  }
  out.fairness.epsilon = epsilon;
  out.fairness.sigma = Sigma(inst, sol.p);
  std::vector<double> pd(sol.p.begin(), sol.p.end());
  out.fairness.deterministic_ok = PairwiseWithin(inst, pd, epsilon);
  return out;
}

TrialFairness EvaluateTrials(const FmcInstance& inst,
                             std::span<const std::vector<int>> p_per_trial, double epsilon) {
  TrialFairness out;
  out.mean_p.assign(inst.chi(), 0.0);
  if (p_per_trial.empty()) return out;
  int joint = 0;
  for (const auto& p : p_per_trial) {
    std::vector<double> pd(p.begin(), p.end());
    for (int c = 0; c < inst.chi(); ++c) out.mean_p[c] += pd[c];
    if (PairwiseWithin(inst, pd, epsilon)) ++joint;
  }
  const double t = static_cast<double>(p_per_trial.size());
  for (double& v : out.mean_p) v /= t;
  out.joint_probability = joint / t;
  out.expectation_ok = PairwiseWithin(inst, out.mean_p, epsilon);
  const auto& q = inst.proportions();
  out.max_mean_ratio = 1.0;
  for (int i = 0; i < inst.chi(); ++i) {
    for (int j = 0; j < inst.chi(); ++j) {
      if (i == j) continue;
      const double num = out.mean_p[i] / q[i].ToDouble();
      const double den = out.mean_p[j] / q[j].ToDouble();
      if (den == 0.0) {
        if (num > 0.0) out.max_mean_ratio = kInfinity;
        continue;
      }
      out.max_mean_ratio = std::max(out.max_mean_ratio, num / den);
    }
  }
  return out;
}

}  // namespace fmc
