#pragma once

#include <span>
#include <vector>

#include "gsg/model.hpp"
#include "gsg/routine.hpp"

namespace gsg {

/// Defender strategy against an attacker who knows tips are possible: the
/// default patrol x, the probability z_i of covering i after a tip on i,
/// and the exposure y = (1 - w) x + w z the attacker responds to.
struct QriStrategy {
  CoverageVector x;
  std::vector<double> z;
  CoverageVector y;
  // Certified level of the bisection: the PWL objective reaches it.
  double objective = 0.0;
  // True defender utility of (x, z) per attack.
  double exact_objective = 0.0;
  int bisection_steps = 0;
  long search_nodes = 0;
};

AttackDistribution QriAttackDistribution(const CoverageVector& x,
                                         std::span<const double> z, double w,
                                         std::span<const TargetPayoffs> payoffs,
                                         double lambda);

// sum_i q_i (Pd_i + y_i (Rd_i - Pd_i)) with q the QRI attack distribution.
double QriObjective(const CoverageVector& x, std::span<const double> z, double w,
                    std::span<const TargetPayoffs> payoffs, double lambda);

/// Bisects on the defender utility; each level is checked by a fill-ordered
/// piecewise-linear program with `segments` pieces per target.
QriStrategy SolveQri(std::span<const TargetPayoffs> payoffs, double lambda,
                     int resources, double w, int segments = kDefaultSegments);

QriStrategy SolveQri(const GameInstance& instance, double w,
                     int segments = kDefaultSegments);

struct WSelection {
  std::vector<int> informants;  // ascending
  double w = 0.0;               // 1 - prod (1 - w_u)
};

/// Picks the k informants with the largest intensity towards attacker 0
/// (ties to the lower index).
WSelection SelectInformantsByW(const SocialGraph& graph, int k);

/// Whether some x, z in [0,1]^n with sum x <= r realise exposure y.
bool FeasibilityMap(std::span<const double> y, double w, int resources);

}  // namespace gsg
