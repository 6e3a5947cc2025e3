#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gsg/level_k.hpp"
#include "gsg/model.hpp"

namespace gsg {

/// Single-attacker game for the level-infinity defender problem. The
/// attacker attacks with probability `attack_prob` and is reported with
/// probability w when he does.
struct BilevelProblem {
  std::vector<TargetPayoffs> payoffs;
  double lambda = 0.0;
  int resources = 1;
  double w = 0.0;
  double attack_prob = 1.0;

  int NumTargets() const { return static_cast<int>(payoffs.size()); }
};

// Targets, lambda and r from `instance`; the instance graph is ignored.
BilevelProblem MakeBilevelProblem(const GameInstance& instance, double w,
                                  double attack_prob = 1.0);

/// Expected attacks per target under tip vector V: the unit vector of the
/// tipped target, or p~(0) q with p~(0) = (1 - w) p / (1 - w p) without a tip.
std::vector<double> ExpectedAttackMass(std::optional<int> tipped_target,
                                       const AttackDistribution& q, double w,
                                       double attack_prob);

/// Defender utility of playing `default_strategy` without a tip and
/// `tip_strategies[j]` after a tip on j, against attack distribution q.
double BilevelObjective(const BilevelProblem& problem,
                        const CoverageVector& default_strategy,
                        const std::vector<CoverageVector>& tip_strategies,
                        const AttackDistribution& q);

struct InnerSolution {
  double value = 0.0;
  CoverageVector default_strategy;
  std::vector<CoverageVector> tip_strategies;
  AttackDistribution q;  // QR(x_hat)
};

/// Best tip-conditioned strategies whose marginal equals x_hat. Requires
/// x_hat in [0,1]^n with sum <= r.
InnerSolution SolveInnerLp(const BilevelProblem& problem, const CoverageVector& x_hat);

struct OuterOptions {
  int restarts = 8;
  std::uint64_t seed = 1;
  double gradient_step = 1e-4;
  int max_iterations = 200;
  double tolerance = 1e-9;
};

struct BilevelSolution {
  CoverageVector x_hat;
  CoverageVector default_strategy;
  std::vector<CoverageVector> tip_strategies;
  AttackDistribution q;
  double def_eu = 0.0;
  int outer_iterations = 0;  // summed over restarts
};

/// Projected gradient ascent of the inner optimum over
/// { x_hat in [0,1]^n : sum x_hat <= r }, with central-difference gradients
/// (one-sided at the boundary). Starts from the routine patrol, the marginal
/// of the level-0 pair when its fixed point is found, and random points.
/// Local optimum only.
BilevelSolution OuterOptimize(const BilevelProblem& problem,
                              const OuterOptions& options = {});

/// Routine patrol plus greedy tip response: after a tip on j cover j and
/// then the lowest-index other targets up to r.
struct LevelZeroPair {
  CoverageVector routine;
  std::vector<CoverageVector> tip_strategies;
  AttackDistribution q;     // level-infinity fixed point against the pair
  CoverageVector x_hat;     // marginal at q
  double value = 0.0;
  double residual = 0.0;
};

LevelZeroPair EvaluateLevelZeroPair(const BilevelProblem& problem,
                                    const FixedPointOptions& options = {});

// Euclidean projection onto { x in [0,1]^n : sum x <= r }.
CoverageVector ProjectCappedBox(const CoverageVector& x, double cap);

}  // namespace gsg
