#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gsg/model.hpp"
#include "gsg/tips.hpp"

namespace gsg {

/// One attacker who always attacks and is reported with probability w.
/// tip_strategies[j] is the defender's coverage after a tip on target j.
struct SingleAttackerSetup {
  std::vector<TargetPayoffs> payoffs;
  double lambda = 0.0;
  double w = 0.0;
  CoverageVector routine;
  std::vector<CoverageVector> tip_strategies;
};

// (1 - w) x0 + sum_j w q_j x(V_j)
CoverageVector MarginalStrategySingle(const CoverageVector& x0,
                                      const std::vector<CoverageVector>& tip_strategies,
                                      double w, const AttackDistribution& q);

/// Marginal coverage when the defender answers tips greedily and attackers
/// target by q: x0 on the no-report branch, the greedy response otherwise.
CoverageVector MarginalStrategyGeneral(const GameInstance& instance,
                                       const CoverageVector& x0,
                                       const InformantSet& recruited,
                                       const AttackDistribution& q);

// Marginal coverage induced by an attack distribution.
using MarginalMap = std::function<CoverageVector(const AttackDistribution&)>;

inline constexpr double kLevelTolerance = 1e-8;
inline constexpr int kDefaultMaxLevels = 10000;

struct LevelTrace {
  std::vector<AttackDistribution> q_seq;  // q^0, q^1, ...
  std::vector<CoverageVector> x_hat_seq;  // x^0 = x0, x^1, ...
  bool converged = false;
  double residual = 0.0;                  // |q^k - q^(k-1)|_1 at the last step
  // Two consecutive members of a detected cycle, and its period.
  std::optional<std::pair<AttackDistribution, AttackDistribution>> cycle;
  int cycle_period = 0;
};

/// q^0 = QR(x0), q^(k+1) = QR(MS(q^k)). Stops when the step falls below
/// kLevelTolerance or when q^k returns to q^(k-p) for some period
/// 2 <= p <= cycle_window while still moving.
LevelTrace IterateLevels(const MarginalMap& marginal, const CoverageVector& x0,
                         std::span<const TargetPayoffs> payoffs, double lambda,
                         int max_levels = kDefaultMaxLevels, int cycle_window = 2);

LevelTrace IterateLevels(const SingleAttackerSetup& setup,
                         int max_levels = kDefaultMaxLevels, int cycle_window = 2);

LevelTrace IterateLevels(const GameInstance& instance, const CoverageVector& x0,
                         const InformantSet& recruited,
                         int max_levels = kDefaultMaxLevels, int cycle_window = 2);

struct ContractionReport {
  bool pass = true;
  std::vector<double> max_tip_coverage;  // max_j x_i(V_j)
  std::vector<double> thresholds;        // L / (n lambda (Ra_i - Pa_i))
  std::vector<double> margins;           // threshold - max coverage
};

/// Sufficient condition for the level iteration to contract with factor L.
ContractionReport ContractionCheck(const std::vector<CoverageVector>& tip_strategies,
                                   std::span<const TargetPayoffs> payoffs,
                                   double lambda, double contraction);

struct FixedPointOptions {
  double damping = 1.0;
  double tolerance = 1e-9;
  int max_iterations = 100000;
};

struct FixedPointResult {
  AttackDistribution q;
  double residual = 0.0;  // |q - QR(MS(q))|_1
  int iterations = 0;
  double damping = 1.0;   // step size in use at the end
};

/// Damped iteration q <- (1 - a) q + a QR(MS(q)) from `start`, halving a
/// whenever the residual grows. Throws NonConvergenceError carrying the best
/// residual when max_iterations is reached.
FixedPointResult SolveFixedPoint(const MarginalMap& marginal,
                                 std::span<const TargetPayoffs> payoffs, double lambda,
                                 const AttackDistribution& start,
                                 const FixedPointOptions& options = {});

FixedPointResult SolveFixedPoint(const SingleAttackerSetup& setup,
                                 const FixedPointOptions& options = {});

FixedPointResult SolveFixedPoint(const GameInstance& instance, const CoverageVector& x0,
                                 const InformantSet& recruited,
                                 const FixedPointOptions& options = {});

// |a - b|_1
double L1Distance(std::span<const double> a, std::span<const double> b);

}  // namespace gsg
