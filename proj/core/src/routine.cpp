#include "gsg/routine.hpp"

#include <algorithm>
#include <numeric>

#include "gsg/errors.hpp"
#include "gsg/qri.hpp"

namespace gsg {

RoutineSolution SolveRoutine(std::span<const TargetPayoffs> payoffs, double lambda,
                             int resources, int segments) {
  const int n = static_cast<int>(payoffs.size());
  if (n == 0) throw ValidationError("routine patrol needs at least one target");
  if (resources < 0) throw ValidationError("resources must be >= 0");

  RoutineSolution sol;
  if (resources == 0 || lambda == 0.0) {
    sol.x0 = CoverageVector(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return payoffs[a].DefenderGap() > payoffs[b].DefenderGap();
    });
    for (int j = 0; j < std::min(resources, n); ++j) sol.x0[order[j]] = 1.0;
  } else {
    sol.x0 = SolveQri(payoffs, lambda, resources, 0.0, segments).x;
  }
  sol.q0 = QuantalResponse(sol.x0, payoffs, lambda);
  sol.def_eu0 = SingleAttackUtility(sol.x0, sol.q0, payoffs);
  return sol;
}

RoutineSolution SolveRoutine(const GameInstance& instance, int segments) {
  RequireValid(instance);
  return SolveRoutine(instance.targets, instance.lambda, instance.resources, segments);
}

double SingleAttackUtility(const CoverageVector& x, const AttackDistribution& q,
                           std::span<const TargetPayoffs> payoffs) {
  if (x.size() != payoffs.size() || q.size() != payoffs.size()) {
    throw ValidationError("coverage, attack distribution and payoffs differ in size");
  }
  double u = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    u += q[i] * (x[i] * payoffs[i].reward_def + (1.0 - x[i]) * payoffs[i].penalty_def);
  }
  return u;
}

}  // namespace gsg
