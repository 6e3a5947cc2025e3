#include "gsg/bilevel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gsg/errors.hpp"
#include "gsg/lp.hpp"
#include "gsg/routine.hpp"

namespace gsg {

namespace {

void CheckProblem(const BilevelProblem& p) {
  if (p.payoffs.empty()) throw ValidationError("bi-level problem has no targets");
  if (p.resources < 0) throw ValidationError("resources must be >= 0");
  if (!(p.w >= 0.0 && p.w <= 1.0)) throw ValidationError("w must lie in [0,1]");
  if (!(p.attack_prob >= 0.0 && p.attack_prob <= 1.0)) {
    throw ValidationError("attack probability must lie in [0,1]");
  }
  if (!(p.lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
}

double SilentAttackProb(double w, double p) {
  const double denom = 1.0 - w * p;
  return denom > 0.0 ? (1.0 - w) * p / denom : 0.0;
}

}  // namespace

BilevelProblem MakeBilevelProblem(const GameInstance& instance, double w,
                                  double attack_prob) {
  RequireValid(instance);
  BilevelProblem p;
  p.payoffs = instance.targets;
  p.lambda = instance.lambda;
  p.resources = instance.resources;
  p.w = w;
  p.attack_prob = attack_prob;
  CheckProblem(p);
  return p;
}

std::vector<double> ExpectedAttackMass(std::optional<int> tipped_target,
                                       const AttackDistribution& q, double w,
                                       double attack_prob) {
  std::vector<double> d(q.size(), 0.0);
  if (tipped_target) {
    if (*tipped_target < 0 || *tipped_target >= static_cast<int>(q.size())) {
      throw ValidationError("tipped target out of range");
    }
    d[*tipped_target] = 1.0;
    return d;
  }
  const double silent = SilentAttackProb(w, attack_prob);
  for (std::size_t i = 0; i < q.size(); ++i) d[i] = silent * q[i];
  return d;
}

double BilevelObjective(const BilevelProblem& problem,
                        const CoverageVector& default_strategy,
                        const std::vector<CoverageVector>& tip_strategies,
                        const AttackDistribution& q) {
  CheckProblem(problem);
  const int n = problem.NumTargets();
  if (default_strategy.size() != static_cast<std::size_t>(n) ||
      tip_strategies.size() != static_cast<std::size_t>(n) ||
      q.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("bi-level strategy has the wrong size");
  }
  const double wp = problem.w * problem.attack_prob;
  const auto& pay = problem.payoffs;
  double value = 0.0;
  const auto d0 = ExpectedAttackMass(std::nullopt, q, problem.w, problem.attack_prob);
  for (int i = 0; i < n; ++i) {
    value += (1.0 - wp) * d0[i] * (pay[i].penalty_def + default_strategy[i] * pay[i].DefenderGap());
  }
  for (int j = 0; j < n; ++j) {
    value += wp * q[j] * (pay[j].penalty_def + tip_strategies[j][j] * pay[j].DefenderGap());
  }
  return value;
}

InnerSolution SolveInnerLp(const BilevelProblem& problem, const CoverageVector& x_hat) {
  CheckProblem(problem);
  const int n = problem.NumTargets();
  if (x_hat.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("marginal has the wrong size");
  }
  double total = 0.0;
  for (double v : x_hat) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw ValidationError("marginal outside [0,1]");
    total += v;
  }
  if (total > problem.resources + 1e-9) throw ValidationError("marginal exceeds resources");

  InnerSolution sol;
  sol.q = QuantalResponse(x_hat, problem.payoffs, problem.lambda);
  const double wp = problem.w * problem.attack_prob;
  const auto d0 = ExpectedAttackMass(std::nullopt, sol.q, problem.w, problem.attack_prob);
  const auto& pay = problem.payoffs;

  // Variables: block 0 is x(no tip), block 1 + j is x(tip on j).
  LinearProgram lp;
  std::vector<double> prob(n + 1);
  prob[0] = 1.0 - wp;
  for (int j = 0; j < n; ++j) prob[j + 1] = wp * sol.q[j];
  double constant = 0.0;
  for (int i = 0; i < n; ++i) {
    lp.AddVariable(0.0, 1.0, prob[0] * d0[i] * pay[i].DefenderGap());
    constant += prob[0] * d0[i] * pay[i].penalty_def;
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      lp.AddVariable(0.0, 1.0, i == j ? prob[j + 1] * pay[j].DefenderGap() : 0.0);
    }
    constant += prob[j + 1] * pay[j].penalty_def;
  }
  const int nv = lp.NumVariables();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(nv, 0.0);
    for (int b = 0; b <= n; ++b) row[b * n + i] = prob[b];
    lp.AddEquality(std::move(row), std::clamp(x_hat[i], 0.0, 1.0));
  }
  for (int b = 0; b <= n; ++b) {
    std::vector<double> row(nv, 0.0);
    for (int i = 0; i < n; ++i) row[b * n + i] = 1.0;
    lp.AddLessEqual(std::move(row), problem.resources);
  }
  const auto res = SolveLp(lp);
  if (res.status != LpStatus::kOptimal) {
    throw LpError("inner program has no optimal solution");
  }
  sol.value = res.value + constant;
  sol.default_strategy = CoverageVector(n);
  sol.tip_strategies.assign(n, CoverageVector(n));
  for (int i = 0; i < n; ++i) sol.default_strategy[i] = res.x[i];
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) sol.tip_strategies[j][i] = res.x[(j + 1) * n + i];
  }
  return sol;
}

CoverageVector ProjectCappedBox(const CoverageVector& x, double cap) {
  CoverageVector out(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i], 0.0, 1.0);
    total += out[i];
  }
  if (total <= cap) return out;
  // Shift down by tau so that sum clamp(x - tau) = cap.
  double lo = 0.0, hi = 0.0;
  for (double v : x) hi = std::max(hi, v);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double v : x) s += std::clamp(v - mid, 0.0, 1.0);
    if (s > cap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i] - hi, 0.0, 1.0);
  return out;
}

LevelZeroPair EvaluateLevelZeroPair(const BilevelProblem& problem,
                                    const FixedPointOptions& options) {
  CheckProblem(problem);
  const int n = problem.NumTargets();
  LevelZeroPair pair;
  pair.routine = SolveRoutine(problem.payoffs, problem.lambda, problem.resources).x0;
  for (int j = 0; j < n; ++j) {
    CoverageVector x(n);
    int left = problem.resources;
    if (left > 0) {
      x[j] = 1.0;
      --left;
    }
    for (int i = 0; i < n && left > 0; ++i) {
      if (i == j) continue;
      x[i] = 1.0;
      --left;
    }
    pair.tip_strategies.push_back(std::move(x));
  }
  const double wp = problem.w * problem.attack_prob;
  MarginalMap marginal = [&](const AttackDistribution& q) {
    return MarginalStrategySingle(pair.routine, pair.tip_strategies, wp, q);
  };
  const auto fp = SolveFixedPoint(marginal, problem.payoffs, problem.lambda,
                                  QuantalResponse(pair.routine, problem.payoffs,
                                                  problem.lambda),
                                  options);
  pair.q = fp.q;
  pair.residual = fp.residual;
  pair.x_hat = marginal(pair.q);
  pair.value = BilevelObjective(problem, pair.routine, pair.tip_strategies, pair.q);
  return pair;
}

namespace {

struct Ascent {
  CoverageVector x;
  InnerSolution inner;
  int iterations = 0;
};

Ascent Climb(const BilevelProblem& problem, CoverageVector start,
             const OuterOptions& options) {
  const int n = problem.NumTargets();
  const double cap = problem.resources;
  const double h = options.gradient_step;
  auto value_at = [&](const CoverageVector& x) { return SolveInnerLp(problem, x).value; };

  Ascent a;
  a.x = ProjectCappedBox(start, cap);
  a.inner = SolveInnerLp(problem, a.x);
  double step = 0.5;
  for (; a.iterations < options.max_iterations; ++a.iterations) {
    std::vector<double> grad(n, 0.0);
    double total = 0.0;
    for (double v : a.x) total += v;
    for (int i = 0; i < n; ++i) {
      const bool up = a.x[i] + h <= 1.0 && total + h <= cap + 1e-12;
      const bool down = a.x[i] - h >= 0.0;
      CoverageVector probe = a.x;
      double plus = a.inner.value, minus = a.inner.value, span = 0.0;
      if (up) {
        probe[i] = a.x[i] + h;
        plus = value_at(probe);
        span += h;
      }
      if (down) {
        probe[i] = a.x[i] - h;
        minus = value_at(probe);
        span += h;
      }
      grad[i] = span > 0.0 ? (plus - minus) / span : 0.0;
    }

    bool moved = false;
    for (step = std::min(1.0, step * 2.0); step >= 1e-10; step *= 0.5) {
      CoverageVector cand(n);
      for (int i = 0; i < n; ++i) cand[i] = a.x[i] + step * grad[i];
      cand = ProjectCappedBox(cand, cap);
      if (L1Distance(cand.span(), a.x.span()) < options.tolerance) break;
      auto inner = SolveInnerLp(problem, cand);
      if (inner.value > a.inner.value + options.tolerance) {
        a.x = std::move(cand);
        a.inner = std::move(inner);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return a;
}

}  // namespace

BilevelSolution OuterOptimize(const BilevelProblem& problem, const OuterOptions& options) {
  CheckProblem(problem);
  if (options.restarts < 1) throw ValidationError("need at least one restart");
  const int n = problem.NumTargets();

  std::vector<CoverageVector> starts;
  starts.push_back(SolveRoutine(problem.payoffs, problem.lambda, problem.resources).x0);
  try {
    starts.push_back(EvaluateLevelZeroPair(problem).x_hat);
  } catch (const NonConvergenceError&) {
    // Level-0 pair has no reachable fixed point; random starts only.
  }
  Rng rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(starts.size()) < options.restarts) {
    CoverageVector x(n);
    for (double& v : x) v = unit(rng);
    starts.push_back(std::move(x));
  }

  BilevelSolution best;
  bool have = false;
  int iterations = 0;
  for (const auto& s : starts) {
    auto a = Climb(problem, s, options);
    iterations += a.iterations;
    if (!have || a.inner.value > best.def_eu) {
      have = true;
      best.x_hat = a.x;
      best.default_strategy = a.inner.default_strategy;
      best.tip_strategies = a.inner.tip_strategies;
      best.q = a.inner.q;
      best.def_eu = a.inner.value;
    }
  }
  best.outer_iterations = iterations;
  return best;
}

}  // namespace gsg
