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

#ifndef FMC_INSTANCE_HPP_
#define FMC_INSTANCE_HPP_

// Data model for fair maximum coverage.
//
// Element and set indices are 0-based everywhere in the library and 1-based
// in files and user-facing messages. Colors are 0-based internally
// (color c in a file is c-1 here).

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmc {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Reduces to lowest terms with a positive denominator.
  static Rational Make(std::int64_t num, std::int64_t den);
  double ToDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// A validated, immutable instance. Build with Create(); the constructor is
// private so every live object satisfies the model invariants.
class FmcInstance {
 public:
  // Throws ValidationError naming the violated invariant and index.
  // `proportions` empty means all colors share equally.
  static FmcInstance Create(int num_elements, int k, int chi,
                            std::vector<double> weights, std::vector<int> colors,
                            std::vector<std::vector<int>> sets,
                            std::vector<Rational> proportions = {});

  int n() const { return static_cast<int>(weights_.size()); }
  int m() const { return static_cast<int>(sets_.size()); }
  int k() const { return k_; }
  int chi() const { return chi_; }

  double weight(int element) const { return weights_[element]; }
  int color(int element) const { return colors_[element]; }
  std::span<const int> set(int index) const { return sets_[index]; }

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& colors() const { return colors_; }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  const std::vector<Rational>& proportions() const { return proportions_; }
  bool has_equal_proportions() const { return equal_proportions_; }

  // Same universe and sets with a different budget.
  FmcInstance WithK(int k) const;

  friend bool operator==(const FmcInstance&, const FmcInstance&) = default;

 private:
  FmcInstance() = default;

  int k_ = 1;
  int chi_ = 1;
  std::vector<double> weights_;
  std::vector<int> colors_;
  std::vector<std::vector<int>> sets_;
  std::vector<Rational> proportions_;
  bool equal_proportions_ = true;
};

struct InstanceStats {
  int a = 0;  // max set cardinality
  int f = 0;  // max element frequency
  std::vector<int> per_color_counts;
  bool unweighted = true;
  // a == 1: only singleton sets. Permitted but outside the usual a >= 2 range.
  bool singleton_only = false;
};

InstanceStats ComputeStats(const FmcInstance& inst);

// Number of elements of each color in every set; nu[set][color].
std::vector<std::vector<int>> ColorCountsPerSet(const FmcInstance& inst);

struct Edge {
  int u = 0;
  int v = 0;
  int color = 0;  // 0-based
  double weight = 1.0;
};

struct ColoredGraph {
  int nodes = 0;
  int chi = 1;
  std::vector<Edge> edges;
};

// Throws ValidationError on self-loops, out-of-range endpoints or colors,
// negative weights, or an unused color.
void ValidateGraph(const ColoredGraph& g);

// Node-cover-to-set-cover translation. Isolated nodes produce no set;
// node_of_set maps every set index back to its graph node.
struct GraphInstance {
  FmcInstance instance;
  std::vector<int> node_of_set;
};

GraphInstance FromGraph(const ColoredGraph& g, int k);

enum class CardinalityMode { kExactK, kAtMostK };

struct Solution {
  std::vector<int> selected;  // sorted set indices
  std::vector<int> covered;   // sorted element indices
  std::vector<int> p;         // covered count per color
  double weight = 0.0;
  CardinalityMode cardinality_mode = CardinalityMode::kExactK;
};

struct FairnessReport {
  // max over i, j with p_j > 0 of (p_i / q_i) / (p_j / q_j); +inf when some
  // color is uncovered while another is covered.
  double sigma = 1.0;
  double epsilon = 1.0;
  // p_i q_j <= epsilon p_j q_i for all pairs.
  bool deterministic_ok = true;
};

struct Evaluation {
  Solution solution;
  FairnessReport fairness;
};

// Recomputes everything from scratch. Throws ValidationError on duplicate or
// out-of-range indices.
Evaluation Evaluate(const FmcInstance& inst, std::span<const int> selected,
                    double epsilon = 1.0,
                    CardinalityMode mode = CardinalityMode::kExactK);

double Sigma(const FmcInstance& inst, std::span<const int> p);

// p_i * q_j == p_j * q_i for every pair, in exact integer arithmetic.
bool IsExactlyFair(const FmcInstance& inst, std::span<const int> p);

// Fairness notions evaluated over repeated randomized runs.
struct TrialFairness {
  std::vector<double> mean_p;
  double max_mean_ratio = 1.0;  // max_{i,j} mean p_i / mean p_j (q-scaled)
  bool expectation_ok = true;   // mean p_i <= eps * mean p_j for all pairs
  double joint_probability = 1.0;  // fraction of trials meeting eq. for all pairs
};

TrialFairness EvaluateTrials(const FmcInstance& inst,
                             std::span<const std::vector<int>> p_per_trial,
                             double epsilon);

// Exact-k bookkeeping helper used by solvers: distinct, sorted, in range.
std::vector<int> NormalizeSelection(const FmcInstance& inst, std::span<const int> selected);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace fmc

#endif  // FMC_INSTANCE_HPP_
