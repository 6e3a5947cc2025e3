#include "gsg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gsg/errors.hpp"

namespace gsg {

double SocialGraph::TotalAttackProb() const {
  return std::accumulate(attack_prob.begin(), attack_prob.end(), 0.0);
}

double GameInstance::MaxDefenderPayoff() const {
  double q = 0.0;
  for (const auto& t : targets) {
    q = std::max({q, std::abs(t.reward_def), std::abs(t.penalty_def)});
  }
  return q;
}

namespace {

void CheckIds(const std::vector<std::string>& ids, const char* what,
              std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      out.push_back({ViolationKind::kDuplicateId,
                     std::string("duplicate ") + what + " id '" + id + "'"});
    }
  }
}

}  // namespace

std::vector<Violation> ValidateInstance(const GameInstance& instance) {
  std::vector<Violation> out;
  auto add = [&out](ViolationKind kind, const std::string& msg) {
    out.push_back({kind, msg});
  };

  if (instance.targets.empty()) add(ViolationKind::kNoTargets, "no targets");
  if (instance.resources < 1) {
    add(ViolationKind::kResources,
        "resources must be >= 1, got " + std::to_string(instance.resources));
  }
  if (instance.recruit_budget < 0) {
    add(ViolationKind::kRecruitBudget, "recruit budget must be >= 0");
  }
  if (!(instance.lambda >= 0.0) || !std::isfinite(instance.lambda)) {
    add(ViolationKind::kLambda, "lambda must be finite and >= 0");
  }

  for (std::size_t i = 0; i < instance.targets.size(); ++i) {
    const auto& t = instance.targets[i];
    const std::string where = "target " + std::to_string(i) + ": ";
    if (!(t.reward_def > 0.0)) add(ViolationKind::kPayoffSign, where + "rd must be > 0");
    if (!(t.penalty_def < 0.0)) add(ViolationKind::kPayoffSign, where + "pd must be < 0");
    if (!(t.reward_att > 0.0)) add(ViolationKind::kPayoffSign, where + "ra must be > 0");
    if (!(t.penalty_att < 0.0)) add(ViolationKind::kPayoffSign, where + "pa must be < 0");
  }

  const auto& g = instance.graph;
  if (g.attack_prob.size() != g.attacker_ids.size()) {
    add(ViolationKind::kSizeMismatch, "attack_prob and attacker_ids differ in size");
  }
  for (std::size_t v = 0; v < g.attack_prob.size(); ++v) {
    const double p = g.attack_prob[v];
    if (!(p >= 0.0 && p <= 1.0)) {
      add(ViolationKind::kAttackProbability,
          "attacker " + std::to_string(v) + ": p outside [0,1]");
    }
  }
  CheckIds(g.informant_ids, "informant", out);
  CheckIds(g.attacker_ids, "attacker", out);

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    const std::string where = "edge " + std::to_string(e) + ": ";
    if (edge.informant < 0 || edge.informant >= g.NumInformants()) {
      add(ViolationKind::kDanglingEdge, where + "unknown informant");
    }
    if (edge.attacker < 0 || edge.attacker >= g.NumAttackers()) {
      add(ViolationKind::kDanglingEdge, where + "unknown attacker");
    }
    if (!(edge.intensity >= 0.0 && edge.intensity <= 1.0)) {
      add(ViolationKind::kIntensity, where + "intensity outside [0,1]");
    }
  }
  return out;
}

void RequireValid(const GameInstance& instance) {
  const auto violations = ValidateInstance(instance);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid instance:";
  for (const auto& v : violations) os << "\n  " << v.message;
  throw ValidationError(os.str());
}

std::vector<double> Softmax(std::span<const double> utilities, double lambda) {
  std::vector<double> q(utilities.size(), 0.0);
  if (utilities.empty()) return q;
  const double shift = *std::max_element(utilities.begin(), utilities.end());
  double total = 0.0;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    q[i] = std::exp(lambda * (utilities[i] - shift));
    total += q[i];
  }
  for (double& v : q) v /= total;
  return q;
}

std::vector<double> AttackerUtilities(const CoverageVector& belief,
                                      std::span<const TargetPayoffs> payoffs) {
  if (belief.size() != payoffs.size()) {
    throw ValidationError("coverage belief and payoffs differ in size");
  }
  std::vector<double> u(payoffs.size());
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    u[i] = belief[i] * payoffs[i].penalty_att +
           (1.0 - belief[i]) * payoffs[i].reward_att;
  }
  return u;
}

AttackDistribution QuantalResponse(const CoverageVector& belief,
                                   std::span<const TargetPayoffs> payoffs,
                                   double lambda) {
  const auto u = AttackerUtilities(belief, payoffs);
  return AttackDistribution(Softmax(u, lambda));
}

GameInstance GenerateInstance(std::uint64_t seed, const GenerationParams& params) {
  if (params.num_attackers <= 0) {
    throw ValidationError("cannot generate an instance with an empty attacker set");
  }
  if (params.num_targets <= 0 || params.num_informants < 0) {
    throw ValidationError("instance sizes must be positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GameInstance inst;
  inst.resources = params.resources;
  inst.recruit_budget = params.recruit_budget;
  inst.lambda = params.lambda;

  auto& g = inst.graph;
  const int nx = params.num_informants;
  const int ny = params.num_attackers;
  for (int u = 0; u < nx; ++u) g.informant_ids.push_back("u" + std::to_string(u + 1));
  for (int v = 0; v < ny; ++v) g.attacker_ids.push_back("v" + std::to_string(v + 1));

  std::vector<int> order(ny);
  for (int u = 0; u < nx; ++u) {
    std::iota(order.begin(), order.end(), 0);
    int degree = ny;
    if (!params.full_graph) {
      degree = std::uniform_int_distribution<int>(1, ny)(rng);
      // Partial Fisher-Yates: the first `degree` entries are a uniform subset.
      for (int j = 0; j < degree; ++j) {
        const int pick = std::uniform_int_distribution<int>(j, ny - 1)(rng);
        std::swap(order[j], order[pick]);
      }
      std::sort(order.begin(), order.begin() + degree);
    }
    for (int j = 0; j < degree; ++j) {
      g.edges.push_back({u, order[j], params.max_intensity * unit(rng)});
    }
  }

  g.attack_prob.resize(ny);
  if (params.fixed_attack_prob) {
    std::fill(g.attack_prob.begin(), g.attack_prob.end(), *params.fixed_attack_prob);
  } else if (params.sum_attack_prob_cap) {
    std::vector<double> t(ny);
    double norm = 0.0;
    for (double& tv : t) {
      tv = unit(rng);
      norm += tv;
    }
    for (int v = 0; v < ny; ++v) {
      g.attack_prob[v] = norm > 0.0
                             ? std::min(1.0, *params.sum_attack_prob_cap * t[v] / norm)
                             : 0.0;
    }
  } else {
    for (double& p : g.attack_prob) p = 0.4 + 0.6 * unit(rng);
  }

  // U(0,Q] and U[-Q,0): 1 - unit lies in (0, 1].
  const double q = params.payoff_scale;
  inst.targets.resize(params.num_targets);
  for (auto& t : inst.targets) {
    t.reward_def = q * (1.0 - unit(rng));
    t.penalty_def = -q * (1.0 - unit(rng));
    t.reward_att = q * (1.0 - unit(rng));
    t.penalty_att = -q * (1.0 - unit(rng));
  }
  return inst;
}

}  // namespace gsg
