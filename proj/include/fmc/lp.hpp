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

#ifndef FMC_LP_HPP_
#define FMC_LP_HPP_

// Sparse LP models and a dense bounded-variable primal simplex that always
// returns a basic (extreme-point) optimum.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace fmc {

inline constexpr double kFeasTol = 1e-9;  // row feasibility, scaled by row norm
inline constexpr double kObjTol = 1e-8;
inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

enum class VarKind { kSet, kElement, kIncidence, kAux };

struct LpVariable {
  VarKind kind = VarKind::kSet;
  int index = 0;       // set / element / color index
  int index2 = -1;     // second index for incidence variables (the set)
  double lower = 0.0;  // always finite
  double upper = kLpInf;
  double objective = 0.0;
};

enum class RowSense { kLe, kEq, kGe };

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kEq;
  double rhs = 0.0;
  std::string tag;  // which family of constraints the row belongs to
};

class LpModel {
 public:
  // Objective sense is always maximize.
  int AddVariable(VarKind kind, int index, double lower, double upper, double objective,
                  int index2 = -1);
  int AddRow(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs,
             std::string tag);

  // -1 when absent.
  int Find(VarKind kind, int index, int index2 = -1) const;

  void SetBounds(int var, double lower, double upper);

  // Drops rows that hold for every point in the variable box.
  int PruneRedundantRows();

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpVariable>& vars() const { return vars_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  int CountRows(const std::string& tag) const;

  std::string VariableName(int var) const;

  // Plain-text dump: objective, rows with tags, bounds.
  std::string ToText() const;

 private:
  std::vector<LpVariable> vars_;
  std::vector<LpRow> rows_;
  std::map<std::tuple<int, int, int>, int> lookup_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  bool is_vertex = false;
  int tight_rows = 0;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 200000;
  // Switch to Bland's rule after this many degenerate pivots per variable.
  int degenerate_pivots_per_var = 50;
};

// Throws NumericalError if the final point violates the model beyond
// tolerance or the iteration cap is hit.
LpSolution SolveVertex(const LpModel& model, const SimplexOptions& options = {});

// Largest row violation, each divided by max(1, ||row||_inf).
double MaxViolation(const LpModel& model, const std::vector<double>& x);

double ObjectiveValue(const LpModel& model, const std::vector<double>& x);

// Rank of the tight constraints at x, counting tight variable bounds as
// unit rows. A feasible x is an extreme point iff this equals num_vars().
int TightRank(const LpModel& model, const std::vector<double>& x, double tol = 1e-9);

}  // namespace fmc

#endif  // FMC_LP_HPP_
