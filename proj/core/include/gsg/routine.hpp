#pragma once

#include <span>

#include "gsg/model.hpp"

namespace gsg {

// Segments of the piecewise-linear approximation used by default.
inline constexpr int kDefaultSegments = 10;

/// Routine patrol optimal against a quantal-response attacker, with its
/// per-attack defender utility.
struct RoutineSolution {
  CoverageVector x0;
  double def_eu0 = 0.0;
  AttackDistribution q0;
};

/// Solves for x0. lambda = 0 is handled directly: the attacker ignores
/// coverage, so the r targets with the largest Rd - Pd are covered (ties to
/// the lower index). Otherwise x0 is the informant-free case (w = 0) of the
/// informant-aware solver.
RoutineSolution SolveRoutine(std::span<const TargetPayoffs> payoffs, double lambda,
                             int resources, int segments = kDefaultSegments);

RoutineSolution SolveRoutine(const GameInstance& instance,
                             int segments = kDefaultSegments);

// sum_i q_i [x_i Rd_i + (1 - x_i) Pd_i]
double SingleAttackUtility(const CoverageVector& x, const AttackDistribution& q,
                           std::span<const TargetPayoffs> payoffs);

}  // namespace gsg
