#include <doctest.h>

#include <cmath>

#include "gsg/errors.hpp"
#include "gsg/instance_io.hpp"
#include "gsg/model.hpp"

using namespace gsg;

namespace {

bool HasKind(const std::vector<Violation>& vs, ViolationKind k) {
  for (const auto& v : vs) {
    if (v.kind == k) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("softmax is uniform at zero precision and shift invariant") {
  const std::vector<double> u{3.0, -1.0, 0.5};
  for (double v : Softmax(u, 0.0)) CHECK(v == doctest::Approx(1.0 / 3));

  const auto a = Softmax(u, 2.0);
  const std::vector<double> shifted{1003.0, 999.0, 1000.5};
  const auto b = Softmax(shifted, 2.0);
  double z = 0.0;
  for (double v : u) z += std::exp(2.0 * v);
  for (int i = 0; i < 3; ++i) {
    CHECK(a[i] == doctest::Approx(std::exp(2.0 * u[i]) / z).epsilon(1e-12));
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("quantal response favours weakly covered targets") {
  const std::vector<TargetPayoffs> pay{{1, -1, 1, -1}, {1, -1, 1, -1}};
  const auto q = QuantalResponse(CoverageVector{0.8, 0.2}, pay, 1.5);
  // Ua = (1 - 2x): 1.5 * (-0.6 - 0.6)
  CHECK(q[1] / q[0] == doctest::Approx(std::exp(1.5 * 1.2)));
  CHECK(q[0] + q[1] == doctest::Approx(1.0));
}

TEST_CASE("validation reports every broken invariant") {
  GameInstance inst;
  inst.targets = {{1, -1, 1, -1}, {-1, -1, 1, 1}};
  inst.graph.informant_ids = {"u1", "u1"};
  inst.graph.attacker_ids = {"v1"};
  inst.graph.attack_prob = {1.5};
  inst.graph.edges = {{0, 3, 0.5}, {1, 0, 2.0}};
  inst.resources = -1;
  inst.recruit_budget = -2;
  inst.lambda = -1.0;
  const auto vs = ValidateInstance(inst);
  CHECK(HasKind(vs, ViolationKind::kResources));
  CHECK(HasKind(vs, ViolationKind::kRecruitBudget));
  CHECK(HasKind(vs, ViolationKind::kLambda));
  CHECK(HasKind(vs, ViolationKind::kPayoffSign));
  CHECK(HasKind(vs, ViolationKind::kAttackProbability));
  CHECK(HasKind(vs, ViolationKind::kIntensity));
  CHECK(HasKind(vs, ViolationKind::kDanglingEdge));
  CHECK(HasKind(vs, ViolationKind::kDuplicateId));
  CHECK_THROWS_AS(RequireValid(inst), ValidationError);

  GameInstance empty;
  CHECK(HasKind(ValidateInstance(empty), ViolationKind::kNoTargets));
}

TEST_CASE("generator is deterministic and respects its parameters") {
  GenerationParams p;
  p.num_attackers = 7;
  p.sum_attack_prob_cap = 2.0;
  const auto a = GenerateInstance(11, p);
  const auto b = GenerateInstance(11, p);
  CHECK(DumpInstance(a) == DumpInstance(b));
  CHECK(ValidateInstance(a).empty());
  CHECK(a.graph.NumAttackers() == 7);
  CHECK(a.graph.TotalAttackProb() <= 2.0 + 1e-12);
  for (const auto& t : a.targets) {
    CHECK(t.reward_def > 0.0);
    CHECK(t.penalty_def < 0.0);
    CHECK(t.reward_def <= p.payoff_scale);
    CHECK(t.penalty_def >= -p.payoff_scale);
  }
  for (const auto& e : a.graph.edges) CHECK(e.intensity <= p.max_intensity);
  CHECK(DumpInstance(GenerateInstance(12, p)) != DumpInstance(a));

  p.full_graph = true;
  p.fixed_attack_prob = 1.0;
  const auto full = GenerateInstance(3, p);
  CHECK(full.graph.edges.size() == static_cast<std::size_t>(p.num_informants * 7));
  for (double v : full.graph.attack_prob) CHECK(v == 1.0);

  p.num_attackers = 0;
  CHECK_THROWS_AS(GenerateInstance(1, p), ValidationError);
}

TEST_CASE("instance json round trips exactly") {
  GenerationParams p;
  p.lambda = 1.0 / 3.0;
  const auto inst = GenerateInstance(5, p);
  const auto text = DumpInstance(inst);
  const auto back = ParseInstance(text);
  CHECK(DumpInstance(back) == text);
  REQUIRE(back.targets.size() == inst.targets.size());
  for (std::size_t i = 0; i < inst.targets.size(); ++i) {
    CHECK(back.targets[i].reward_def == inst.targets[i].reward_def);
    CHECK(back.targets[i].penalty_att == inst.targets[i].penalty_att);
  }
  CHECK(back.lambda == inst.lambda);
  CHECK(back.graph.attack_prob == inst.graph.attack_prob);
  CHECK_THROWS_AS(ParseInstance("{not json"), ValidationError);
  CHECK_THROWS_AS(ReadInstanceFile("/nonexistent/instance.json"), Error);
}
