#include <doctest.h>

#include <cmath>
#include <random>

#include "gsg/errors.hpp"
#include "gsg/bisect.hpp"
#include "gsg/lp.hpp"
#include "gsg/pattern_search.hpp"
#include "gsg/pwl.hpp"
#include "oracles.hpp"

using namespace gsg;

TEST_CASE("simplex matches vertex enumeration on random bounded programs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int optimal = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LinearProgram lp;
    const int nv = 2 + trial % 3;
    for (int j = 0; j < nv; ++j) lp.AddVariable(0.0, 1.0 + (j % 2), u(rng));
    for (int r = 0; r < 2; ++r) {
      std::vector<double> row(nv);
      for (double& v : row) v = u(rng);
      lp.AddLessEqual(row, 0.5 + u(rng));
    }
    if (trial % 2 == 0) {
      std::vector<double> row(nv, 1.0);
      lp.AddEquality(row, 0.4 * nv);
    }
    const auto got = SolveLp(lp);
    const auto want = oracle::VertexEnumeration(lp);
    CHECK((got.status == LpStatus::kOptimal) == want.feasible);
    if (got.status == LpStatus::kOptimal && want.feasible) {
      ++optimal;
      CHECK(got.value == doctest::Approx(want.value).epsilon(1e-7));
      CHECK(LpMaxViolation(lp, got.x) <= kLpFeasibilityTol);
    }
  }
  CHECK(optimal > 20);
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
  LinearProgram infeasible;
  infeasible.AddVariable(0.0, 1.0, 1.0);
  infeasible.AddEquality({1.0}, 2.0);
  CHECK(SolveLp(infeasible).status == LpStatus::kInfeasible);

  LinearProgram unbounded;
  unbounded.AddVariable(0.0, kInfinity, 1.0);
  unbounded.AddVariable(0.0, 1.0, 0.0);
  unbounded.AddLessEqual({-1.0, 1.0}, 1.0);
  CHECK(SolveLp(unbounded).status == LpStatus::kUnbounded);

  LinearProgram crossed;
  crossed.AddVariable(1.0, 0.0, 1.0);
  CHECK(SolveLp(crossed).status == LpStatus::kInfeasible);

  LinearProgram bad;
  bad.AddVariable(-kInfinity, 0.0, 1.0);
  CHECK_THROWS_AS(SolveLp(bad), ValidationError);
}

TEST_CASE("bisection finds the threshold of a monotone predicate") {
  const double t = BisectLevel([](double v) { return v <= 0.3721; }, -2.0, 5.0, 1e-9);
  CHECK(t <= 0.3721);
  CHECK(t == doctest::Approx(0.3721).epsilon(1e-8));
  CHECK(BisectLevel([](double) { return true; }, 0.0, 1.0) == 1.0);
  CHECK_THROWS_AS(BisectLevel([](double) { return false; }, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(BisectLevel([](double) { return true; }, 1.0, 0.0), ValidationError);
}

TEST_CASE("piecewise-linear secants interpolate at the breakpoints") {
  const auto pwl = PwlApprox::Build(1.7, 10);
  for (int j = 0; j <= 10; ++j) {
    const double y = j / 10.0;
    CHECK(pwl.EvalDecay(y) == doctest::Approx(std::exp(-1.7 * y)).epsilon(1e-12));
    CHECK(pwl.EvalWeighted(y) == doctest::Approx(y * std::exp(-1.7 * y)).epsilon(1e-12));
  }
  // Between breakpoints the convex decay lies below its secant.
  CHECK(pwl.EvalDecay(0.05) >= std::exp(-1.7 * 0.05));
}

TEST_CASE("fill patterns are exactly the ordered fillings for K = 3") {
  const int k = 3;
  const double w = 1.0 / k;
  const auto patterns = FillOrderPatterns(k);
  REQUIRE(patterns.size() == 4u);
  // Grid of segment values; a filling is ordered when each segment is full
  // before the next one is positive.
  const std::vector<double> levels{0.0, w / 2, w};
  for (double a : levels) {
    for (double b : levels) {
      for (double c : levels) {
        const std::vector<double> s{a, b, c};
        bool ordered = true;
        for (int j = 0; j + 1 < k; ++j) {
          if (s[j + 1] > 0.0 && s[j] < w) ordered = false;
        }
        bool matched = false;
        for (const auto& p : patterns) {
          bool fits = true;
          for (int j = 0; j < k; ++j) {
            fits = fits && s[j] >= p.SegmentLower(j, w) - 1e-12 &&
                   s[j] <= p.SegmentUpper(j, w) + 1e-12;
          }
          matched = matched || fits;
        }
        CHECK(matched == ordered);
      }
    }
  }
  CHECK(PatternForTotal(0.0, k) == 1);
  CHECK(PatternForTotal(0.5, k) == 2);
  CHECK(PatternForTotal(1.0, k) == 3);
}

TEST_CASE("fill-ordered search fills segments left to right") {
  // Two segments per group, objective prefers the second segment; the
  // ordered optimum must fill the first segment first.
  FillOrderProblem prob;
  for (int j = 0; j < 2; ++j) prob.lp.AddVariable(0.0, 0.5, j == 0 ? 0.1 : 1.0);
  prob.lp.AddLessEqual({1.0, 1.0}, 0.5);
  prob.groups.push_back({{0, 1}, 0.5});
  const auto res = SolveFillOrdered(prob);
  REQUIRE(res.found);
  CHECK(IsFillOrdered(prob, res.x));
  CHECK(res.value == doctest::Approx(0.05));
  CHECK(SolveLp(prob.lp).value == doctest::Approx(0.5));
}
