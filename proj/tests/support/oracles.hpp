#pragma once

// Reference implementations used by the tests. They share only the plain
// data types with the library and are written for clarity, not speed.

#include <vector>

#include "gsg/lp.hpp"
#include "gsg/model.hpp"
#include "gsg/tips.hpp"

namespace oracle {

// Best utility over every covered set of at most r targets, where target i
// is attacked (counts[i] + q[i] * mass) times in expectation.
struct Allocation {
  std::vector<int> covered;
  double value = 0.0;
};
Allocation BestAllocation(const std::vector<gsg::TargetPayoffs>& payoffs,
                          const std::vector<int>& counts, const std::vector<double>& q,
                          double mass, int resources);

// Utility of covering exactly `covered`.
double AllocationValue(const std::vector<gsg::TargetPayoffs>& payoffs,
                       const std::vector<int>& counts, const std::vector<double>& q,
                       double mass, const std::vector<int>& covered);

// DefEU(U) by enumerating every reported set and every labelled assignment
// of reported attackers to targets. The defender plays x0 when nothing is
// reported and the best allocation otherwise.
double BruteForceDefEU(const gsg::GameInstance& instance, const gsg::InformantSet& recruited,
                       const std::vector<double>& x0, const std::vector<double>& q);

// Sum over labelled placements of `elsewhere` attackers on the other targets
// (weight prod q_j) of those leaving fewer than r targets ahead of `target`.
double BruteForceCoverProbability(const std::vector<gsg::TargetPayoffs>& payoffs,
                                  const std::vector<double>& q, int target, int on_target,
                                  int elsewhere, double mass, int resources);

// Maximum of a bounded LP by enumerating every basic solution.
struct VertexResult {
  bool feasible = false;
  double value = 0.0;
};
VertexResult VertexEnumeration(const gsg::LinearProgram& lp);

// Defender utility per attack against an attacker who sees exposure
// y = (1 - w) x + w z, computed from first principles.
double QriUtility(const std::vector<gsg::TargetPayoffs>& payoffs, double lambda, double w,
                  const std::vector<double>& x, const std::vector<double>& z);

// Grid search over x in step^n with sum x <= r and z in step^n. Two targets.
double GridQri(const std::vector<gsg::TargetPayoffs>& payoffs, double lambda, int resources,
               double w, double step);

}  // namespace oracle
