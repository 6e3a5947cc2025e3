#include "gsg/level_k.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsg/errors.hpp"
#include "gsg/evaluate.hpp"

namespace gsg {

double L1Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("vectors differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

namespace {

void CheckSetup(const SingleAttackerSetup& s) {
  const std::size_t n = s.payoffs.size();
  if (n == 0) throw ValidationError("setup has no targets");
  if (s.routine.size() != n || s.tip_strategies.size() != n) {
    throw ValidationError("setup needs a routine patrol and one tip strategy per target");
  }
  for (const auto& x : s.tip_strategies) {
    if (x.size() != n) throw ValidationError("tip strategy has the wrong size");
  }
  if (!(s.w >= 0.0 && s.w <= 1.0)) throw ValidationError("w must lie in [0,1]");
  if (!(s.lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
}

MarginalMap SingleMap(const SingleAttackerSetup& s) {
  return [&s](const AttackDistribution& q) {
    return MarginalStrategySingle(s.routine, s.tip_strategies, s.w, q);
  };
}

MarginalMap GeneralMap(const GameInstance& instance, const CoverageVector& x0,
                       const InformantSet& recruited) {
  return [&instance, &x0, recruited](const AttackDistribution& q) {
    return MarginalStrategyGeneral(instance, x0, recruited, q);
  };
}

}  // namespace

CoverageVector MarginalStrategySingle(const CoverageVector& x0,
                                      const std::vector<CoverageVector>& tip_strategies,
                                      double w, const AttackDistribution& q) {
  const std::size_t n = x0.size();
  if (tip_strategies.size() != q.size() || q.size() != n) {
    throw ValidationError("marginal strategy inputs differ in size");
  }
  CoverageVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (1.0 - w) * x0[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (tip_strategies[j].size() != n) throw ValidationError("tip strategy has the wrong size");
    for (std::size_t i = 0; i < n; ++i) out[i] += w * q[j] * tip_strategies[j][i];
  }
  return out;
}

CoverageVector MarginalStrategyGeneral(const GameInstance& instance,
                                       const CoverageVector& x0,
                                       const InformantSet& recruited,
                                       const AttackDistribution& q) {
  return ExpectedCoverage(MakeContext(instance, x0, q), recruited);
}

LevelTrace IterateLevels(const MarginalMap& marginal, const CoverageVector& x0,
                         std::span<const TargetPayoffs> payoffs, double lambda,
                         int max_levels, int cycle_window) {
  if (max_levels < 0) throw ValidationError("level limit must be >= 0");
  LevelTrace trace;
  trace.x_hat_seq.push_back(x0);
  trace.q_seq.push_back(QuantalResponse(x0, payoffs, lambda));
  for (int level = 1; level <= max_levels; ++level) {
    trace.x_hat_seq.push_back(marginal(trace.q_seq.back()));
    trace.q_seq.push_back(QuantalResponse(trace.x_hat_seq.back(), payoffs, lambda));
    const auto& q = trace.q_seq;
    const std::size_t k = q.size() - 1;
    trace.residual = L1Distance(q[k].span(), q[k - 1].span());
    if (trace.residual < kLevelTolerance) {
      trace.converged = true;
      break;
    }
    for (int p = 2; p <= cycle_window && static_cast<std::size_t>(p) <= k; ++p) {
      const double back = L1Distance(q[k].span(), q[k - p].span());
      if (back <= 1e-9 && back <= 1e-4 * trace.residual) {
        trace.cycle = std::make_pair(q[k - 1], q[k]);
        trace.cycle_period = p;
        break;
      }
    }
    if (trace.cycle) break;
  }
  return trace;
}

LevelTrace IterateLevels(const SingleAttackerSetup& setup, int max_levels,
                         int cycle_window) {
  CheckSetup(setup);
  return IterateLevels(SingleMap(setup), setup.routine, setup.payoffs, setup.lambda,
                       max_levels, cycle_window);
}

LevelTrace IterateLevels(const GameInstance& instance, const CoverageVector& x0,
                         const InformantSet& recruited, int max_levels,
                         int cycle_window) {
  RequireValid(instance);
  return IterateLevels(GeneralMap(instance, x0, recruited), x0, instance.targets,
                       instance.lambda, max_levels, cycle_window);
}

ContractionReport ContractionCheck(const std::vector<CoverageVector>& tip_strategies,
                                   std::span<const TargetPayoffs> payoffs,
                                   double lambda, double contraction) {
  const std::size_t n = payoffs.size();
  if (tip_strategies.size() != n) throw ValidationError("need one tip strategy per target");
  if (!(contraction >= 0.0 && contraction < 1.0)) {
    throw ValidationError("contraction factor L must lie in [0,1)");
  }
  ContractionReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    double top = 0.0;
    for (const auto& x : tip_strategies) {
      if (x.size() != n) throw ValidationError("tip strategy has the wrong size");
      top = std::max(top, x[i]);
    }
    const double denom = n * lambda * payoffs[i].AttackerGap();
    const double threshold =
        denom > 0.0 ? contraction / denom : std::numeric_limits<double>::infinity();
    rep.max_tip_coverage.push_back(top);
    rep.thresholds.push_back(threshold);
    rep.margins.push_back(threshold - top);
    if (top > threshold) rep.pass = false;
  }
  return rep;
}

FixedPointResult SolveFixedPoint(const MarginalMap& marginal,
                                 std::span<const TargetPayoffs> payoffs, double lambda,
                                 const AttackDistribution& start,
                                 const FixedPointOptions& options) {
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ValidationError("damping must lie in (0,1]");
  }
  if (start.size() != payoffs.size()) throw ValidationError("start has the wrong size");
  FixedPointResult res;
  res.q = start;
  res.damping = options.damping;
  double previous = std::numeric_limits<double>::infinity();
  double best = previous;
  for (int it = 0; it <= options.max_iterations; ++it) {
    const auto image = QuantalResponse(marginal(res.q), payoffs, lambda);
    res.residual = L1Distance(res.q.span(), image.span());
    res.iterations = it;
    best = std::min(best, res.residual);
    if (res.residual <= options.tolerance) return res;
    if (it == options.max_iterations) break;
    if (res.residual > previous) res.damping = std::max(res.damping * 0.5, 1e-6);
    previous = res.residual;
    double total = 0.0;
    for (std::size_t i = 0; i < res.q.size(); ++i) {
      res.q[i] = (1.0 - res.damping) * res.q[i] + res.damping * image[i];
      total += res.q[i];
    }
    for (double& v : res.q) v /= total;
  }
  throw NonConvergenceError("fixed-point iteration did not reach tolerance", best);
}

FixedPointResult SolveFixedPoint(const SingleAttackerSetup& setup,
                                 const FixedPointOptions& options) {
  CheckSetup(setup);
  return SolveFixedPoint(SingleMap(setup), setup.payoffs, setup.lambda,
                         QuantalResponse(setup.routine, setup.payoffs, setup.lambda),
                         options);
}

FixedPointResult SolveFixedPoint(const GameInstance& instance, const CoverageVector& x0,
                                 const InformantSet& recruited,
                                 const FixedPointOptions& options) {
  RequireValid(instance);
  return SolveFixedPoint(GeneralMap(instance, x0, recruited), instance.targets,
                         instance.lambda, QuantalResponse(x0, instance.targets, instance.lambda),
                         options);
}

}  // namespace gsg
