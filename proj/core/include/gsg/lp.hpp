#pragma once

#include <limits>
#include <vector>

namespace gsg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dense linear program: maximize objective . x subject to
///   eq_rows x == eq_rhs, ub_rows x <= ub_rhs, lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;

  int NumVariables() const { return static_cast<int>(objective.size()); }

  // Appends a variable and returns its index. Existing rows are widened.
  int AddVariable(double lo, double hi, double cost);
  void AddEquality(std::vector<double> row, double rhs);
  void AddLessEqual(std::vector<double> row, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;      // objective at x (optimal only)
  std::vector<double> x;   // optimal vertex (optimal only)
  int pivots = 0;
};

// Feasibility tolerance of returned solutions.
inline constexpr double kLpFeasibilityTol = 1e-8;

/// Two-phase primal simplex on a dense tableau. Deterministic: Dantzig
/// pricing with a switch to Bland's rule after a run of degenerate pivots.
/// Throws ValidationError on inconsistent dimensions or bounds.
LpResult SolveLp(const LinearProgram& lp);

// Largest violation of any constraint or bound by `x`.
double LpMaxViolation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace gsg
