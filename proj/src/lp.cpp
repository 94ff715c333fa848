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

#include "fmc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fmc/errors.hpp"

namespace fmc {

int LpModel::AddVariable(VarKind kind, int index, double lower, double upper, double objective,
                         int index2) {
  if (!std::isfinite(lower)) throw PreconditionError("LP variables must be bounded below");
  if (upper < lower) throw PreconditionError("LP variable with upper < lower");
  const int id = num_vars();
  vars_.push_back(LpVariable{kind, index, index2, lower, upper, objective});
  lookup_[{static_cast<int>(kind), index, index2}] = id;
  return id;
}

int LpModel::AddRow(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs,
                    std::string tag) {
  for (const auto& [var, coef] : terms) {
    if (var < 0 || var >= num_vars()) throw PreconditionError("LP row references unknown variable");
    (void)coef;
  }
  rows_.push_back(LpRow{std::move(terms), sense, rhs, std::move(tag)});
  return num_rows() - 1;
}

int LpModel::Find(VarKind kind, int index, int index2) const {
  auto it = lookup_.find({static_cast<int>(kind), index, index2});
  return it == lookup_.end() ? -1 : it->second;
}

void LpModel::SetBounds(int var, double lower, double upper) {
  if (!std::isfinite(lower) || upper < lower) throw PreconditionError("bad LP bounds");
  vars_[var].lower = lower;
  vars_[var].upper = upper;
}

int LpModel::PruneRedundantRows() {
  const auto redundant = [&](const LpRow& row) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& [var, coef] : row.terms) {
      const LpVariable& v = vars_[var];
      if (coef >= 0) {
        lo += coef * v.lower;
        hi += coef * v.upper;
      } else {
        lo += coef * v.upper;
        hi += coef * v.lower;
      }
    }
    switch (row.sense) {
      case RowSense::kLe: return hi <= row.rhs + kFeasTol;
      case RowSense::kGe: return lo >= row.rhs - kFeasTol;
      case RowSense::kEq: return std::abs(hi - row.rhs) <= kFeasTol &&
                                 std::abs(lo - row.rhs) <= kFeasTol;
    }
    return false;
  };
  const auto before = rows_.size();
  rows_.erase(std::remove_if(rows_.begin(), rows_.end(), redundant), rows_.end());
  return static_cast<int>(before - rows_.size());
}

int LpModel::CountRows(const std::string& tag) const {
  return static_cast<int>(
      std::count_if(rows_.begin(), rows_.end(), [&](const LpRow& r) { return r.tag == tag; }));
}

std::string LpModel::VariableName(int var) const {
  const LpVariable& v = vars_[var];
  switch (v.kind) {
    case VarKind::kSet: return "y" + std::to_string(v.index + 1);
    case VarKind::kElement: return "x" + std::to_string(v.index + 1);
    case VarKind::kIncidence:
      return "x" + std::to_string(v.index + 1) + "_" + std::to_string(v.index2 + 1);
    case VarKind::kAux: return "h" + std::to_string(v.index + 1);
  }
  return "v" + std::to_string(var + 1);
}

std::string LpModel::ToText() const {
  std::ostringstream out;
  out.precision(17);
  const auto term = [&](double coef, int var, bool first) {
    if (coef < 0) {
      out << (first ? "-" : " - ");
    } else if (!first) {
      out << " + ";
    }
    out << std::abs(coef) << " " << VariableName(var);
  };
  out << "maximize\n obj:";
  bool first = true;
  for (int j = 0; j < num_vars(); ++j) {
    if (vars_[j].objective == 0.0) continue;
    out << (first ? " " : "");
    term(vars_[j].objective, j, first);
    first = false;
  }
  if (first) out << " 0";
  out << "\nsubject to\n";
  for (int i = 0; i < num_rows(); ++i) {
    const LpRow& row = rows_[i];
    out << " r" << i + 1 << "_" << row.tag << ": ";
    bool f = true;
    for (const auto& [var, coef] : row.terms) {
      term(coef, var, f);
      f = false;
    }
    if (f) out << "0";
    out << (row.sense == RowSense::kLe ? " <= " : row.sense == RowSense::kGe ? " >= " : " = ")
        << row.rhs << "\n";
  }
  out << "bounds\n";
  for (int j = 0; j < num_vars(); ++j) {
    out << " " << vars_[j].lower << " <= " << VariableName(j) << " <= ";
    if (std::isinf(vars_[j].upper)) {
      out << "inf\n";
    } else {
      out << vars_[j].upper << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

double RowActivity(const LpRow& row, const std::vector<double>& x) {
  double act = 0.0;
  for (const auto& [var, coef] : row.terms) act += coef * x[var];
  return act;
}

double RowScale(const LpRow& row) {
  double norm = 1.0;
  for (const auto& term : row.terms) norm = std::max(norm, std::abs(term.second));
  return norm;
}

// Solves the square system in place with partial pivoting; false if singular.
bool SolveDense(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < 1e-13) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] * inv;
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * b[c];
    b[r] = acc / a[r * n + r];
  }
  return true;
}

// Dense tableau over shifted variables z = x - lower, all z in [0, ub].
// Columns: structural, then one slack per inequality row, then artificials.
class BoundedSimplex {
 public:
  BoundedSimplex(const LpModel& model, const SimplexOptions& options)
      : model_(model), options_(options) {
    nv_ = model.num_vars();
    nr_ = model.num_rows();
    int slacks = 0;
    for (const auto& row : model.rows()) slacks += row.sense != RowSense::kEq;
    // Upper bound on columns; artificials are appended as needed.
    ncols_ = nv_ + slacks;
    std::vector<double> shifted_rhs(nr_);
    std::vector<int> slack_col(nr_, -1);
    std::vector<double> sign(nr_, 1.0);
    std::vector<char> needs_art(nr_, 0);
    int next_slack = nv_;
    for (int i = 0; i < nr_; ++i) {
      const LpRow& row = model.rows()[i];
      double b = row.rhs;
      for (const auto& [var, coef] : row.terms) b -= coef * model.vars()[var].lower;
      shifted_rhs[i] = b;
      switch (row.sense) {
        case RowSense::kLe:
          sign[i] = b >= 0 ? 1.0 : -1.0;
          needs_art[i] = b < 0;
          slack_col[i] = next_slack++;
          break;
        case RowSense::kGe:
          sign[i] = b <= 0 ? -1.0 : 1.0;
          needs_art[i] = b > 0;
          slack_col[i] = next_slack++;
          break;
        case RowSense::kEq:
          sign[i] = b >= 0 ? 1.0 : -1.0;
          needs_art[i] = 1;
          break;
      }
    }
    first_art_ = ncols_;
    for (int i = 0; i < nr_; ++i) ncols_ += needs_art[i];

    ub_.assign(ncols_, kLpInf);
    for (int j = 0; j < nv_; ++j) ub_[j] = model.vars()[j].upper - model.vars()[j].lower;
    a_.assign(static_cast<std::size_t>(nr_) * ncols_, 0.0);
    rhs_.assign(nr_, 0.0);
    basis_.assign(nr_, -1);
    int next_art = first_art_;
    for (int i = 0; i < nr_; ++i) {
      const LpRow& row = model.rows()[i];
      for (const auto& [var, coef] : row.terms) At(a_, i, var) += sign[i] * coef;
      if (slack_col[i] >= 0) {
        const double slack_coef = row.sense == RowSense::kLe ? 1.0 : -1.0;
        At(a_, i, slack_col[i]) = sign[i] * slack_coef;
      }
      rhs_[i] = sign[i] * shifted_rhs[i];
      if (needs_art[i]) {
        At(a_, i, next_art) = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = slack_col[i];
      }
    }
    tab_ = a_;
    value_.assign(ncols_, 0.0);
    at_upper_.assign(ncols_, 0);
    is_basic_.assign(ncols_, 0);
    for (int i = 0; i < nr_; ++i) {
      value_[basis_[i]] = rhs_[i];
      is_basic_[basis_[i]] = 1;
    }
  }

  LpSolution Solve() {
    LpSolution sol;
    // Phase 1: minimize the sum of artificials.
    std::vector<double> cost(ncols_, 0.0);
    double rhs_scale = 1.0;
    for (double b : rhs_) rhs_scale = std::max(rhs_scale, std::abs(b));
    if (first_art_ < ncols_) {
      for (int j = first_art_; j < ncols_; ++j) cost[j] = 1.0;
      if (Optimize(cost) != Outcome::kOptimal) {
        throw NumericalError("phase 1 reported unbounded");
      }
      double infeas = 0.0;
      for (int j = first_art_; j < ncols_; ++j) infeas += value_[j];
      if (infeas > 1e-8 * rhs_scale) {
        sol.status = LpStatus::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
      for (int j = first_art_; j < ncols_; ++j) {
        ub_[j] = 0.0;
        value_[j] = 0.0;
      }
      DriveOutArtificials();
    }
    std::fill(cost.begin(), cost.end(), 0.0);
    for (int j = 0; j < nv_; ++j) cost[j] = -model_.vars()[j].objective;
    if (Optimize(cost) == Outcome::kUnbounded) {
      sol.status = LpStatus::kUnbounded;
      sol.iterations = iterations_;
      return sol;
    }
    RefineBasicValues();
    sol.status = LpStatus::kOptimal;
    sol.iterations = iterations_;
    sol.values.resize(nv_);
    for (int j = 0; j < nv_; ++j) {
      double z = value_[j];
      if (std::abs(z) < 1e-11) z = 0.0;
      if (std::isfinite(ub_[j]) && std::abs(z - ub_[j]) < 1e-11) z = ub_[j];
      sol.values[j] = model_.vars()[j].lower + z;
    }
    sol.objective = ObjectiveValue(model_, sol.values);
    const double viol = MaxViolation(model_, sol.values);
    if (viol > 1e-7) {
      throw NumericalError("simplex point violates the model by " + std::to_string(viol));
    }
    sol.is_vertex = true;
    for (const auto& row : model_.rows()) {
      if (std::abs(RowActivity(row, sol.values) - row.rhs) <= kFeasTol * RowScale(row)) {
        ++sol.tight_rows;
      }
    }
    return sol;
  }

 private:
  enum class Outcome { kOptimal, kUnbounded };

  double& At(std::vector<double>& m, int r, int c) {
    return m[static_cast<std::size_t>(r) * ncols_ + c];
  }
  double Tab(int r, int c) const { return tab_[static_cast<std::size_t>(r) * ncols_ + c]; }

  Outcome Optimize(const std::vector<double>& cost) {
    // Reduced costs d_j = c_j - c_B^T T_j.
    std::vector<double> d(cost);
    for (int i = 0; i < nr_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) d[j] -= cb * Tab(i, j);
    }
    const long degenerate_limit =
        static_cast<long>(options_.degenerate_pivots_per_var) * std::max(1, nv_);
    constexpr double kDualTol = 1e-9;
    constexpr double kPivTol = 1e-9;
    while (true) {
      if (++iterations_ > options_.max_iterations) {
        throw NumericalError("simplex iteration cap exceeded");
      }
      // Entering column.
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < ncols_; ++j) {
        if (is_basic_[j] || ub_[j] == 0.0) continue;
        const bool improving = at_upper_[j] ? d[j] > kDualTol : d[j] < -kDualTol;
        if (!improving) continue;
        if (bland_) {
          q = j;
          break;
        }
        if (std::abs(d[j]) > best) {
          best = std::abs(d[j]);
          q = j;
        }
      }
      if (q < 0) return Outcome::kOptimal;
      const double dir = at_upper_[q] ? -1.0 : 1.0;

      // Ratio test. Basic variable i moves by -dir * T_iq per unit step.
      double theta = ub_[q];
      int leave = -1;
      bool leave_to_upper = false;
      for (int i = 0; i < nr_; ++i) {
        const double t = Tab(i, q);
        if (std::abs(t) < kPivTol) continue;
        const double delta = -dir * t;
        const int bv = basis_[i];
        double limit;
        bool to_upper;
        if (delta < 0) {
          limit = std::max(0.0, value_[bv]) / -delta;
          to_upper = false;
        } else {
          if (!std::isfinite(ub_[bv])) continue;
          limit = std::max(0.0, ub_[bv] - value_[bv]) / delta;
          to_upper = true;
        }
        bool take;
        if (leave < 0) {
          take = limit < theta + 1e-12;
        } else if (limit < theta - 1e-12) {
          take = true;
        } else if (limit <= theta + 1e-12) {
          take = bland_ ? bv < basis_[leave] : std::abs(t) > std::abs(Tab(leave, q));
        } else {
          take = false;
        }
        if (take) {
          theta = std::min(theta, limit);
          leave = i;
          leave_to_upper = to_upper;
        }
      }
      if (std::isinf(theta)) return Outcome::kUnbounded;

      if (theta < 1e-12) {
        if (++degenerate_ > degenerate_limit) bland_ = true;
      }
      for (int i = 0; i < nr_; ++i) {
        const double t = Tab(i, q);
        if (t != 0.0) value_[basis_[i]] -= dir * t * theta;
      }
      value_[q] += dir * theta;

      if (leave < 0) {
        // Bound flip.
        at_upper_[q] = !at_upper_[q];
        value_[q] = at_upper_[q] ? ub_[q] : 0.0;
        continue;
      }
      const int out = basis_[leave];
      value_[out] = leave_to_upper ? ub_[out] : 0.0;
      at_upper_[out] = leave_to_upper;
      is_basic_[out] = 0;
      Pivot(leave, q, d);
      basis_[leave] = q;
      is_basic_[q] = 1;
      at_upper_[q] = 0;
      for (int i = 0; i < nr_; ++i) Clamp(basis_[i]);
    }
  }

  void Clamp(int j) {
    if (value_[j] < 0.0 && value_[j] > -1e-9) value_[j] = 0.0;
    if (std::isfinite(ub_[j]) && value_[j] > ub_[j] && value_[j] < ub_[j] + 1e-9) {
      value_[j] = ub_[j];
    }
  }

  void Pivot(int r, int q, std::vector<double>& d) {
    const double inv = 1.0 / Tab(r, q);
    double* prow = &tab_[static_cast<std::size_t>(r) * ncols_];
    for (int j = 0; j < ncols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < nr_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * ncols_];
      const double factor = row[q];
      if (factor == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) {
        if (prow[j] != 0.0) row[j] -= factor * prow[j];
      }
      row[q] = 0.0;
    }
    const double dq = d[q];
    if (dq != 0.0) {
      for (int j = 0; j < ncols_; ++j) {
        if (prow[j] != 0.0) d[j] -= dq * prow[j];
      }
      d[q] = 0.0;
    }
  }

  // Artificials still basic at level zero are swapped for any structural or
  // slack column with a usable pivot; rows with none are redundant.
  void DriveOutArtificials() {
    std::vector<double> dummy(ncols_, 0.0);
    for (int i = 0; i < nr_; ++i) {
      if (basis_[i] < first_art_) continue;
      int best = -1;
      for (int j = 0; j < first_art_; ++j) {
        if (is_basic_[j]) continue;
        if (std::abs(Tab(i, j)) > 1e-7 &&
            (best < 0 || std::abs(Tab(i, j)) > std::abs(Tab(i, best)) + 1e-12)) {
          best = j;
        }
      }
      if (best < 0) continue;
      const int out = basis_[i];
      is_basic_[out] = 0;
      value_[out] = 0.0;
      at_upper_[out] = 0;
      Pivot(i, best, dummy);
      basis_[i] = best;
      is_basic_[best] = 1;
      at_upper_[best] = 0;
      // The entering column keeps its current (bound) value: the pivot is degenerate.
    }
  }

  // Recomputes basic values from the original rows to remove drift.
  void RefineBasicValues() {
    std::vector<double> b(rhs_);
    for (int j = 0; j < ncols_; ++j) {
      if (is_basic_[j] || value_[j] == 0.0) continue;
      for (int i = 0; i < nr_; ++i) b[i] -= At(a_, i, j) * value_[j];
    }
    std::vector<double> bmat(static_cast<std::size_t>(nr_) * nr_);
    for (int i = 0; i < nr_; ++i) {
      for (int c = 0; c < nr_; ++c) bmat[i * nr_ + c] = At(a_, i, basis_[c]);
    }
    if (!SolveDense(bmat, b, nr_)) return;
    for (int c = 0; c < nr_; ++c) value_[basis_[c]] = b[c];
    for (int c = 0; c < nr_; ++c) Clamp(basis_[c]);
  }

  const LpModel& model_;
  SimplexOptions options_;
  int nv_ = 0;
  int nr_ = 0;
  int ncols_ = 0;
  int first_art_ = 0;
  std::vector<double> a_;    // original augmented rows
  std::vector<double> tab_;  // B^-1 A
  std::vector<double> rhs_;
  std::vector<double> ub_;
  std::vector<double> value_;
  std::vector<char> at_upper_;
  std::vector<char> is_basic_;
  std::vector<int> basis_;
  int iterations_ = 0;
  long degenerate_ = 0;
  bool bland_ = false;
};

}  // namespace

LpSolution SolveVertex(const LpModel& model, const SimplexOptions& options) {
  if (model.num_rows() == 0) {
    // Box-constrained: each variable sits at the bound its objective favors.
    LpSolution sol;
    sol.values.resize(model.num_vars());
    for (int j = 0; j < model.num_vars(); ++j) {
      const LpVariable& v = model.vars()[j];
      if (v.objective > 0) {
        if (std::isinf(v.upper)) {
          sol.status = LpStatus::kUnbounded;
          return sol;
        }
        sol.values[j] = v.upper;
      } else {
        sol.values[j] = v.lower;
      }
    }
    sol.status = LpStatus::kOptimal;
    sol.objective = ObjectiveValue(model, sol.values);
    sol.is_vertex = true;
    return sol;
  }
  return BoundedSimplex(model, options).Solve();
}

double MaxViolation(const LpModel& model, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : model.rows()) {
    const double act = RowActivity(row, x);
    double v = 0.0;
    switch (row.sense) {
      case RowSense::kLe: v = act - row.rhs; break;
      case RowSense::kGe: v = row.rhs - act; break;
      case RowSense::kEq: v = std::abs(act - row.rhs); break;
    }
    worst = std::max(worst, v / RowScale(row));
  }
  for (int j = 0; j < model.num_vars(); ++j) {
    worst = std::max(worst, model.vars()[j].lower - x[j]);
    worst = std::max(worst, x[j] - model.vars()[j].upper);
  }
  return worst;
}

double ObjectiveValue(const LpModel& model, const std::vector<double>& x) {
  double obj = 0.0;
  for (int j = 0; j < model.num_vars(); ++j) obj += model.vars()[j].objective * x[j];
  return obj;
}

int TightRank(const LpModel& model, const std::vector<double>& x, double tol) {
  const int n = model.num_vars();
  std::vector<std::vector<double>> rows;
  for (const auto& row : model.rows()) {
    if (std::abs(RowActivity(row, x) - row.rhs) > tol * RowScale(row)) continue;
    std::vector<double> dense(n, 0.0);
    for (const auto& [var, coef] : row.terms) dense[var] += coef;
    rows.push_back(std::move(dense));
  }
  for (int j = 0; j < n; ++j) {
    const LpVariable& v = model.vars()[j];
    if (std::abs(x[j] - v.lower) <= tol || (std::isfinite(v.upper) && std::abs(x[j] - v.upper) <= tol)) {
      std::vector<double> unit(n, 0.0);
      unit[j] = 1.0;
      rows.push_back(std::move(unit));
    }
  }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    double best = 1e-9;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (std::abs(rows[r][col]) > best) {
        best = std::abs(rows[r][col]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      const double factor = rows[r][col] / rows[rank][col];
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace fmc
