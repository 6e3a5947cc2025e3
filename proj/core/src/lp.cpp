#include "gsg/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsg/errors.hpp"

namespace gsg {

int LinearProgram::AddVariable(double lo, double hi, double cost) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  for (auto& row : eq_rows) row.push_back(0.0);
  for (auto& row : ub_rows) row.push_back(0.0);
  return NumVariables() - 1;
}

void LinearProgram::AddEquality(std::vector<double> row, double rhs) {
  row.resize(objective.size(), 0.0);
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LinearProgram::AddLessEqual(std::vector<double> row, double rhs) {
  row.resize(objective.size(), 0.0);
  ub_rows.push_back(std::move(row));
  ub_rhs.push_back(rhs);
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kFixedTol = 1e-13;
constexpr int kDegenerateSwitch = 40;
constexpr int kMaxPivots = 200000;

enum class RowKind { kLe, kGe, kEq };

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  // Row `rows_` is the objective row; column `cols_` is the right-hand side.
  double& obj(int c) { return at(rows_, c); }
  double& rhs(int r) { return at(r, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    double* prow = &data_[pr * (cols_ + 1)];
    for (int c = 0; c <= cols_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * (cols_ + 1)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

struct SimplexState {
  Tableau tab;
  std::vector<int> basis;
  int pivots = 0;
};

// Runs primal simplex on the current objective row. Columns at or beyond
// `barred_from` may not enter. Returns false when unbounded.
bool RunSimplex(SimplexState& s, int barred_from) {
  Tableau& t = s.tab;
  int degenerate_run = 0;
  for (;;) {
    const bool bland = degenerate_run >= kDegenerateSwitch;
    int enter = -1;
    double best = -kCostTol;
    for (int c = 0; c < barred_from; ++c) {
      const double rc = t.obj(c);
      if (rc < best) {
        enter = c;
        if (bland) break;
        best = rc;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = kInfinity;
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      const bool better = leave < 0 || ratio < best_ratio - 1e-12;
      const bool tie_wins = !better && ratio <= best_ratio + 1e-12 &&
                            s.basis[r] < s.basis[leave];
      if (better || tie_wins) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;

    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    t.Pivot(leave, enter);
    s.basis[leave] = enter;
    if (++s.pivots > kMaxPivots) throw LpError("simplex pivot limit exceeded");
  }
}

}  // namespace

LpResult SolveLp(const LinearProgram& lp) {
  const int n = lp.NumVariables();
  if (static_cast<int>(lp.lower.size()) != n || static_cast<int>(lp.upper.size()) != n ||
      lp.eq_rows.size() != lp.eq_rhs.size() || lp.ub_rows.size() != lp.ub_rhs.size()) {
    throw ValidationError("linear program has inconsistent dimensions");
  }
  for (const auto* rows : {&lp.eq_rows, &lp.ub_rows}) {
    for (const auto& row : *rows) {
      if (static_cast<int>(row.size()) != n) {
        throw ValidationError("linear program row has wrong width");
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j])) {
      throw ValidationError("variable " + std::to_string(j) + " has no finite lower bound");
    }
    if (lp.upper[j] < lp.lower[j] - kFixedTol) {
      LpResult r;
      r.status = LpStatus::kInfeasible;
      return r;
    }
  }

  // Shift x = lower + s and drop fixed variables.
  std::vector<int> column_of(n, -1);
  std::vector<int> var_of_column;
  for (int j = 0; j < n; ++j) {
    if (lp.upper[j] - lp.lower[j] > kFixedTol) {
      column_of[j] = static_cast<int>(var_of_column.size());
      var_of_column.push_back(j);
    }
  }
  const int nf = static_cast<int>(var_of_column.size());

  struct Row {
    std::vector<double> coef;
    double rhs;
    RowKind kind;
  };
  std::vector<Row> rows;
  auto add_row = [&](const std::vector<double>& full, double rhs, RowKind kind) {
    Row row{std::vector<double>(nf, 0.0), rhs, kind};
    bool any = false;
    for (int j = 0; j < n; ++j) {
      row.rhs -= full[j] * lp.lower[j];
      if (column_of[j] >= 0 && full[j] != 0.0) {
        row.coef[column_of[j]] = full[j];
        any = true;
      }
    }
    if (!any) {
      // Constant row: check it directly.
      const bool ok = kind == RowKind::kEq ? std::abs(row.rhs) <= kLpFeasibilityTol
                                           : row.rhs >= -kLpFeasibilityTol;
      return ok;
    }
    if (row.rhs < 0.0) {
      for (double& c : row.coef) c = -c;
      row.rhs = -row.rhs;
      if (kind == RowKind::kLe) row.kind = RowKind::kGe;
    }
    rows.push_back(std::move(row));
    return true;
  };

  bool consistent = true;
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    consistent &= add_row(lp.eq_rows[i], lp.eq_rhs[i], RowKind::kEq);
  }
  for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) {
    consistent &= add_row(lp.ub_rows[i], lp.ub_rhs[i], RowKind::kLe);
  }
  for (int c = 0; c < nf; ++c) {
    const int j = var_of_column[c];
    if (std::isfinite(lp.upper[j])) {
      std::vector<double> unit(n, 0.0);
      unit[j] = 1.0;
      consistent &= add_row(unit, lp.upper[j], RowKind::kLe);
    }
  }
  if (!consistent) {
    LpResult r;
    r.status = LpStatus::kInfeasible;
    return r;
  }

  const int m = static_cast<int>(rows.size());
  int num_slack = 0, num_art = 0;
  for (const auto& row : rows) {
    if (row.kind != RowKind::kEq) ++num_slack;
    if (row.kind != RowKind::kLe) ++num_art;
  }
  const int art_begin = nf + num_slack;
  const int total_cols = art_begin + num_art;

  SimplexState s{Tableau(m, total_cols), std::vector<int>(m, -1), 0};
  Tableau& t = s.tab;
  int next_slack = nf, next_art = art_begin;
  for (int r = 0; r < m; ++r) {
    const auto& row = rows[r];
    for (int c = 0; c < nf; ++c) t.at(r, c) = row.coef[c];
    t.rhs(r) = row.rhs;
    if (row.kind == RowKind::kLe) {
      t.at(r, next_slack) = 1.0;
      s.basis[r] = next_slack++;
    } else {
      if (row.kind == RowKind::kGe) t.at(r, next_slack++) = -1.0;
      t.at(r, next_art) = 1.0;
      s.basis[r] = next_art++;
    }
  }

  // Phase 1: maximize -sum(artificials).
  if (num_art > 0) {
    for (int c = art_begin; c < total_cols; ++c) t.obj(c) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (s.basis[r] >= art_begin) {
        for (int c = 0; c <= total_cols; ++c) t.obj(c) -= t.at(r, c);
      }
    }
    RunSimplex(s, total_cols);
    double scale = 1.0;
    for (const auto& row : rows) scale = std::max(scale, std::abs(row.rhs));
    if (t.obj(total_cols) < -kLpFeasibilityTol * scale) {
      LpResult r;
      r.status = LpStatus::kInfeasible;
      r.pivots = s.pivots;
      return r;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (s.basis[r] < art_begin) continue;
      int best = -1;
      double best_abs = kPivotTol;
      for (int c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(r, c)) > best_abs) {
          best_abs = std::abs(t.at(r, c));
          best = c;
        }
      }
      if (best >= 0) {
        t.Pivot(r, best);
        s.basis[r] = best;
      }
    }
  }

  // Phase 2.
  for (int c = 0; c <= total_cols; ++c) t.obj(c) = 0.0;
  for (int c = 0; c < nf; ++c) t.obj(c) = -lp.objective[var_of_column[c]];
  for (int r = 0; r < m; ++r) {
    const double f = t.obj(s.basis[r]);
    if (f == 0.0) continue;
    for (int c = 0; c <= total_cols; ++c) t.obj(c) -= f * t.at(r, c);
  }
  const bool bounded = RunSimplex(s, art_begin);

  LpResult result;
  result.pivots = s.pivots;
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x = lp.lower;
  for (int r = 0; r < m; ++r) {
    const int b = s.basis[r];
    if (b < nf) result.x[var_of_column[b]] += std::max(0.0, t.rhs(r));
  }
  for (int j = 0; j < n; ++j) {
    result.x[j] = std::clamp(result.x[j], lp.lower[j], lp.upper[j]);
    result.value += lp.objective[j] * result.x[j];
  }
  return result;
}

double LpMaxViolation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  const int n = lp.NumVariables();
  for (int j = 0; j < n; ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    if (std::isfinite(lp.upper[j])) worst = std::max(worst, x[j] - lp.upper[j]);
  }
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += row[j] * x[j];
    return s;
  };
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    worst = std::max(worst, std::abs(dot(lp.eq_rows[i]) - lp.eq_rhs[i]));
  }
  for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) {
    worst = std::max(worst, dot(lp.ub_rows[i]) - lp.ub_rhs[i]);
  }
  return worst;
}

}  // namespace gsg
