#pragma once

#include <optional>
#include <vector>

#include "gsg/lp.hpp"
#include "gsg/pwl.hpp"

namespace gsg {

/// A run of LP variables that must fill left to right: the segments of one
/// piecewise-linear term, each of width `width`.
struct SegmentGroup {
  std::vector<int> vars;
  double width = 0.0;
};

/// Maximize `lp` subject to the extra requirement that every group's
/// segment variables follow a fill pattern. This is the MILP whose binaries
/// only encode fill order.
struct FillOrderProblem {
  LinearProgram lp;
  std::vector<SegmentGroup> groups;
};

struct FillOrderOptions {
  // Stop as soon as a fill-ordered solution reaches this value, and prune
  // nodes whose bound is below it. Unset means full optimization.
  std::optional<double> target;
  double tolerance = 1e-9;
  int max_nodes = 200000;
};

struct FillOrderResult {
  bool found = false;          // a fill-ordered feasible solution exists
  double value = 0.0;          // best fill-ordered objective found
  std::vector<double> x;
  int nodes = 0;
  int lp_solves = 0;
};

/// Best-first branch and bound over fill patterns. Node bounds come from the
/// LP with unassigned groups relaxed (order requirement dropped); branching
/// assigns one pattern to a group whose relaxed solution is out of order.
/// Throws LpError if the node limit is reached.
FillOrderResult SolveFillOrdered(const FillOrderProblem& problem,
                                 const FillOrderOptions& options = {});

// True when `x` follows a fill pattern on every group.
bool IsFillOrdered(const FillOrderProblem& problem, const std::vector<double>& x,
                   double tol = 1e-9);

}  // namespace gsg
