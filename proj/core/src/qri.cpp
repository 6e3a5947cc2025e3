#include "gsg/qri.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsg/bisect.hpp"
#include "gsg/errors.hpp"
#include "gsg/pattern_search.hpp"
#include "gsg/pwl.hpp"

namespace gsg {

namespace {

void CheckStrategy(const CoverageVector& x, std::span<const double> z, double w,
                   std::size_t n) {
  if (x.size() != n || z.size() != n) {
    throw ValidationError("strategy and payoffs differ in size");
  }
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("w must lie in [0,1]");
}

// Variable layout of the level check for one target.
struct TargetVars {
  int first_segment;
  int x;
  int z;
};

struct LevelProblem {
  FillOrderProblem problem;
  std::vector<TargetVars> vars;
  std::vector<double> theta;
  std::vector<PwlApprox> pwl;
};

LevelProblem BuildLevelProblem(std::span<const TargetPayoffs> payoffs, double lambda,
                               int resources, double w, int segments) {
  const int n = static_cast<int>(payoffs.size());
  LevelProblem lp;
  double max_ra = -kInfinity;
  for (const auto& t : payoffs) max_ra = std::max(max_ra, t.reward_att);

  auto& prog = lp.problem.lp;
  const double width = 1.0 / segments;
  for (int i = 0; i < n; ++i) {
    const auto& t = payoffs[i];
    lp.theta.push_back(std::exp(lambda * (t.reward_att - max_ra)));
    lp.pwl.push_back(PwlApprox::Build(lambda * t.AttackerGap(), segments));
    TargetVars tv{};
    SegmentGroup group{{}, width};
    for (int j = 0; j < segments; ++j) {
      const int v = prog.AddVariable(0.0, width, 0.0);
      if (j == 0) tv.first_segment = v;
      group.vars.push_back(v);
    }
    tv.x = prog.AddVariable(0.0, w >= 1.0 ? 0.0 : 1.0, 0.0);
    tv.z = prog.AddVariable(0.0, w <= 0.0 ? 0.0 : 1.0, 0.0);
    lp.vars.push_back(tv);
    lp.problem.groups.push_back(std::move(group));
  }

  const int nv = prog.NumVariables();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(nv, 0.0);
    for (int j = 0; j < segments; ++j) row[lp.vars[i].first_segment + j] = 1.0;
    row[lp.vars[i].x] = -(1.0 - w);
    row[lp.vars[i].z] = -w;
    prog.AddEquality(std::move(row), 0.0);
  }
  std::vector<double> budget(nv, 0.0);
  for (int i = 0; i < n; ++i) budget[lp.vars[i].x] = 1.0;
  prog.AddLessEqual(std::move(budget), resources);
  return lp;
}

// Sets the objective for level delta and returns the constant term.
double SetLevel(LevelProblem& lp, std::span<const TargetPayoffs> payoffs, double delta) {
  auto& obj = lp.problem.lp.objective;
  double constant = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    const double a = lp.theta[i] * (payoffs[i].penalty_def - delta);
    const double b = lp.theta[i] * payoffs[i].DefenderGap();
    constant += a;
    const auto& pwl = lp.pwl[i];
    for (int j = 0; j < pwl.segments; ++j) {
      obj[lp.vars[i].first_segment + j] =
          a * pwl.decay_slopes[j] + b * pwl.weighted_slopes[j];
    }
  }
  return constant;
}

}  // namespace

AttackDistribution QriAttackDistribution(const CoverageVector& x,
                                         std::span<const double> z, double w,
                                         std::span<const TargetPayoffs> payoffs,
                                         double lambda) {
  CheckStrategy(x, z, w, payoffs.size());
  CoverageVector y(payoffs.size());
  for (std::size_t i = 0; i < payoffs.size(); ++i) y[i] = (1.0 - w) * x[i] + w * z[i];
  return QuantalResponse(y, payoffs, lambda);
}

double QriObjective(const CoverageVector& x, std::span<const double> z, double w,
                    std::span<const TargetPayoffs> payoffs, double lambda) {
  const auto q = QriAttackDistribution(x, z, w, payoffs, lambda);
  double u = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    const double y = (1.0 - w) * x[i] + w * z[i];
    u += q[i] * (payoffs[i].penalty_def + y * payoffs[i].DefenderGap());
  }
  return u;
}

QriStrategy SolveQri(std::span<const TargetPayoffs> payoffs, double lambda,
                     int resources, double w, int segments) {
  const int n = static_cast<int>(payoffs.size());
  if (n == 0) throw ValidationError("QRI needs at least one target");
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("w must lie in [0,1]");
  if (resources < 0) throw ValidationError("resources must be >= 0");
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
  if (segments < 1) throw ValidationError("segments must be >= 1");

  LevelProblem lp = BuildLevelProblem(payoffs, lambda, resources, w, segments);
  double lo = kInfinity, hi = -kInfinity;
  for (const auto& t : payoffs) {
    lo = std::min(lo, t.penalty_def);
    hi = std::max(hi, t.reward_def);
  }

  QriStrategy out;
  std::vector<double> best_x;
  auto feasible_at = [&](double delta) {
    const double constant = SetLevel(lp, payoffs, delta);
    FillOrderOptions opts;
    opts.target = -constant;
    const auto res = SolveFillOrdered(lp.problem, opts);
    ++out.bisection_steps;
    out.search_nodes += res.nodes;
    const bool ok = res.found && res.value + constant >= -opts.tolerance;
    if (ok) best_x = res.x;
    return ok;
  };
  out.objective = BisectLevel(feasible_at, lo, hi);
  if (best_x.empty()) throw LpError("QRI level check found no feasible strategy");

  out.x = CoverageVector(n);
  out.z.assign(n, 0.0);
  out.y = CoverageVector(n);
  for (int i = 0; i < n; ++i) {
    out.x[i] = std::clamp(best_x[lp.vars[i].x], 0.0, 1.0);
    out.z[i] = std::clamp(best_x[lp.vars[i].z], 0.0, 1.0);
    out.y[i] = (1.0 - w) * out.x[i] + w * out.z[i];
  }
  out.exact_objective = QriObjective(out.x, out.z, w, payoffs, lambda);
  return out;
}

QriStrategy SolveQri(const GameInstance& instance, double w, int segments) {
  RequireValid(instance);
  return SolveQri(instance.targets, instance.lambda, instance.resources, w, segments);
}

WSelection SelectInformantsByW(const SocialGraph& graph, int k) {
  if (graph.NumAttackers() < 1) throw ValidationError("graph has no attacker");
  const int nx = graph.NumInformants();
  std::vector<double> intensity(nx, 0.0);
  for (const auto& e : graph.edges) {
    if (e.attacker == 0 && e.informant >= 0 && e.informant < nx) {
      intensity[e.informant] = 1.0 - (1.0 - intensity[e.informant]) * (1.0 - e.intensity);
    }
  }
  std::vector<int> order(nx);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return intensity[a] > intensity[b]; });
  WSelection out;
  double miss = 1.0;
  for (int j = 0; j < std::min(std::max(k, 0), nx); ++j) {
    out.informants.push_back(order[j]);
    miss *= 1.0 - intensity[order[j]];
  }
  std::sort(out.informants.begin(), out.informants.end());
  out.w = 1.0 - miss;
  return out;
}

bool FeasibilityMap(std::span<const double> y, double w, int resources) {
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("w must lie in [0,1]");
  for (double v : y) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("y must lie in [0,1]^n");
  }
  if (w >= 1.0) return true;
  double need = 0.0;
  for (double v : y) need += std::max(0.0, (v - w) / (1.0 - w));
  return need <= resources + 1e-12;
}

}  // namespace gsg
