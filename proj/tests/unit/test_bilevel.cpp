#include <doctest.h>

#include <cmath>

#include "gsg/errors.hpp"
#include "gsg/bilevel.hpp"
#include "oracles.hpp"

using namespace gsg;

namespace {

BilevelProblem TwoTargetProblem(double w) {
  BilevelProblem p;
  p.payoffs = {{1.0, -0.5, 0.7, -1.2}, {1.5, -1.0, 1.1, -0.4}};
  p.lambda = 1.5;
  p.resources = 1;
  p.w = w;
  return p;
}

// The inner program rebuilt from its definition.
LinearProgram InnerProgram(const BilevelProblem& p, const CoverageVector& xh,
                           const std::vector<double>& q, double& constant) {
  const int n = 2;
  const double wp = p.w * p.attack_prob;
  const double silent = (1 - p.w) * p.attack_prob / (1 - wp);
  std::vector<double> prob{1 - wp, wp * q[0], wp * q[1]};
  LinearProgram lp;
  constant = 0.0;
  for (int b = 0; b <= n; ++b) {
    for (int i = 0; i < n; ++i) {
      const double gap = p.payoffs[i].reward_def - p.payoffs[i].penalty_def;
      const double weight = b == 0 ? prob[0] * silent * q[i] : (b - 1 == i ? prob[b] : 0.0);
      lp.AddVariable(0.0, 1.0, weight * gap);
      constant += weight * p.payoffs[i].penalty_def;
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(6, 0.0);
    for (int b = 0; b <= n; ++b) row[b * n + i] = prob[b];
    lp.AddEquality(row, xh[i]);
  }
  for (int b = 0; b <= n; ++b) {
    std::vector<double> row(6, 0.0);
    row[b * n] = row[b * n + 1] = 1.0;
    lp.AddLessEqual(row, p.resources);
  }
  return lp;
}

}  // namespace

TEST_CASE("expected attack mass per tip vector") {
  const AttackDistribution q{0.25, 0.75};
  CHECK(ExpectedAttackMass(1, q, 0.5, 1.0) == std::vector<double>{0.0, 1.0});
  const auto silent = ExpectedAttackMass(std::nullopt, q, 0.5, 1.0);
  CHECK(silent[1] == doctest::Approx(0.75));
  const auto half = ExpectedAttackMass(std::nullopt, q, 0.5, 0.5);
  CHECK(half[0] == doctest::Approx(0.25 / 3));
  CHECK(ExpectedAttackMass(std::nullopt, q, 1.0, 1.0) == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(ExpectedAttackMass(2, q, 0.5, 1.0), ValidationError);
}

TEST_CASE("projection onto the capped box") {
  const auto a = ProjectCappedBox(CoverageVector{0.8, 0.8, 0.8}, 1.0);
  for (double v : a) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(ProjectCappedBox(CoverageVector{1.5, -0.2}, 2.0) == CoverageVector{1.0, 0.0});
  const auto b = ProjectCappedBox(CoverageVector{1.4, 0.1, 0.5}, 1.0);
  CHECK(b.Sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b[0] - b[2] == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(b[1] == 0.0);
}

TEST_CASE("inner program matches vertex enumeration") {
  for (double w : {0.0, 0.3, 0.8}) {
    for (const auto& xh : {CoverageVector{0.2, 0.6}, CoverageVector{0.5, 0.5}, CoverageVector{1.0, 0.0}}) {
      const auto p = TwoTargetProblem(w);
      const auto sol = SolveInnerLp(p, xh);
      double constant = 0.0;
      const auto lp = InnerProgram(p, xh, sol.q.values(), constant);
      const auto want = oracle::VertexEnumeration(lp);
      REQUIRE(want.feasible);
      CHECK(sol.value == doctest::Approx(want.value + constant).epsilon(1e-8));
      CHECK(BilevelObjective(p, sol.default_strategy, sol.tip_strategies, sol.q) ==
            doctest::Approx(sol.value).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(SolveInnerLp(TwoTargetProblem(0.5), CoverageVector{0.8, 0.8}), ValidationError);
}

TEST_CASE("outer optimization is no worse than the level-0 pair") {
  for (double w : {0.2, 0.7}) {
    const auto p = TwoTargetProblem(w);
    const auto pair = EvaluateLevelZeroPair(p);
    const auto sol = OuterOptimize(p);
    CHECK(sol.def_eu >= pair.value - 1e-9);
    CHECK(sol.x_hat.Sum() <= p.resources + 1e-9);
    CHECK(sol.def_eu == doctest::Approx(SolveInnerLp(p, sol.x_hat).value));
  }
}
