#include "gsg/pattern_search.hpp"

#include <cmath>
#include <queue>

#include "gsg/errors.hpp"

namespace gsg {

namespace {

bool GroupOrdered(const SegmentGroup& g, const std::vector<double>& x, double tol) {
  bool filling = true;
  for (int v : g.vars) {
    if (filling) {
      if (x[v] < g.width - tol) filling = false;
    } else if (x[v] > tol) {
      return false;
    }
  }
  return true;
}

struct Node {
  double bound;
  long seq;
  std::vector<int> patterns;  // -1: unassigned
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.seq > b.seq;
  }
};

LinearProgram WithPatterns(const FillOrderProblem& problem,
                           const std::vector<int>& patterns) {
  LinearProgram lp = problem.lp;
  for (std::size_t g = 0; g < problem.groups.size(); ++g) {
    if (patterns[g] < 0) continue;
    const auto& group = problem.groups[g];
    const FillPattern pat{patterns[g], patterns[g] == 0 ? 0 : patterns[g] - 1,
                          patterns[g] > 0};
    for (std::size_t j = 0; j < group.vars.size(); ++j) {
      const int v = group.vars[j];
      lp.lower[v] = pat.SegmentLower(static_cast<int>(j), group.width);
      lp.upper[v] = pat.SegmentUpper(static_cast<int>(j), group.width);
    }
  }
  return lp;
}

}  // namespace

bool IsFillOrdered(const FillOrderProblem& problem, const std::vector<double>& x,
                   double tol) {
  for (const auto& g : problem.groups) {
    if (!GroupOrdered(g, x, tol)) return false;
  }
  return true;
}

FillOrderResult SolveFillOrdered(const FillOrderProblem& problem,
                                 const FillOrderOptions& options) {
  const double tol = options.tolerance;
  const auto& groups = problem.groups;
  FillOrderResult result;
  double incumbent = -kInfinity;

  auto reached_target = [&] {
    return options.target && result.found && incumbent >= *options.target - tol;
  };
  auto below_target = [&](double bound) {
    return options.target && bound < *options.target - tol;
  };
  auto offer = [&](const LpResult& lp) {
    if (lp.value > incumbent) {
      incumbent = lp.value;
      result.found = true;
      result.value = lp.value;
      result.x = lp.x;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  open.push({kInfinity, seq++, std::vector<int>(groups.size(), -1)});

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound <= incumbent + tol || below_target(node.bound)) continue;
    if (++result.nodes > options.max_nodes) {
      throw LpError("fill-order search exceeded its node limit");
    }

    const LpResult relaxed = SolveLp(WithPatterns(problem, node.patterns));
    ++result.lp_solves;
    if (relaxed.status == LpStatus::kUnbounded) {
      throw LpError("fill-order relaxation is unbounded");
    }
    if (relaxed.status != LpStatus::kOptimal) continue;
    if (relaxed.value <= incumbent + tol || below_target(relaxed.value)) continue;

    int branch_group = -1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (node.patterns[g] < 0 && !GroupOrdered(groups[g], relaxed.x, tol)) {
        branch_group = static_cast<int>(g);
        break;
      }
    }
    if (branch_group < 0) {
      offer(relaxed);
      if (reached_target()) break;
      continue;
    }

    // Rounding: pin every out-of-order group to the pattern holding its
    // current total and re-solve.
    std::vector<int> rounded = node.patterns;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (rounded[g] >= 0 || GroupOrdered(groups[g], relaxed.x, tol)) continue;
      double total = 0.0;
      for (int v : groups[g].vars) total += relaxed.x[v];
      const int k = static_cast<int>(groups[g].vars.size());
      rounded[g] = PatternForTotal(total / (k * groups[g].width), k);
    }
    const LpResult heuristic = SolveLp(WithPatterns(problem, rounded));
    ++result.lp_solves;
    if (heuristic.status == LpStatus::kOptimal && IsFillOrdered(problem, heuristic.x, tol)) {
      offer(heuristic);
      if (reached_target()) break;
    }

    const int k = static_cast<int>(groups[branch_group].vars.size());
    for (int m = 1; m <= k; ++m) {
      Node child{relaxed.value, seq++, node.patterns};
      child.patterns[branch_group] = m;
      open.push(std::move(child));
    }
  }
  return result;
}

}  // namespace gsg
