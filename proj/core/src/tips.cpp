#include "gsg/tips.hpp"

#include <algorithm>
#include <numeric>

#include "gsg/errors.hpp"

namespace gsg {

InformantSet::InformantSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

InformantSet InformantSet::FromMask(std::uint64_t mask, int num_informants) {
  std::vector<int> m;
  for (int u = 0; u < num_informants; ++u) {
    if (mask >> u & 1u) m.push_back(u);
  }
  return InformantSet(std::move(m));
}

bool InformantSet::Contains(int u) const {
  return std::binary_search(members_.begin(), members_.end(), u);
}

InformantSet InformantSet::With(int u) const {
  auto m = members_;
  m.push_back(u);
  return InformantSet(std::move(m));
}

ReportModel BuildReportModel(const SocialGraph& graph, const InformantSet& recruited) {
  const int ny = graph.NumAttackers();
  ReportModel model;
  std::vector<double> miss(ny, 1.0);
  model.reachable.assign(ny, 0);
  for (const auto& e : graph.edges) {
    if (!recruited.Contains(e.informant)) continue;
    miss[e.attacker] *= 1.0 - e.intensity;
    model.reachable[e.attacker] = 1;
  }
  model.intensity.resize(ny);
  for (int v = 0; v < ny; ++v) {
    model.intensity[v] = model.reachable[v] ? 1.0 - miss[v] : 0.0;
    if (model.reachable[v]) model.reachable_ids.push_back(v);
  }
  return model;
}

double ReportIntensity(const SocialGraph& graph, const InformantSet& recruited,
                       int attacker) {
  double miss = 1.0;
  for (const auto& e : graph.edges) {
    if (e.attacker == attacker && recruited.Contains(e.informant)) {
      miss *= 1.0 - e.intensity;
    }
  }
  return 1.0 - miss;
}

double PosteriorAttackProb(double attack_prob, double intensity, ReportStatus status) {
  switch (status) {
    case ReportStatus::kReported:
      return 1.0;
    case ReportStatus::kUnreachable:
      return attack_prob;
    case ReportStatus::kUnreported: {
      const double silent = (1.0 - intensity) * attack_prob;
      const double denom = silent + 1.0 - attack_prob;
      return denom > 0.0 ? silent / denom : 0.0;
    }
  }
  return 0.0;
}

double PosteriorAttackProb(const SocialGraph& graph, const InformantSet& recruited,
                           int attacker, std::span<const int> reported) {
  const auto model = BuildReportModel(graph, recruited);
  ReportStatus status = ReportStatus::kUnreachable;
  if (std::find(reported.begin(), reported.end(), attacker) != reported.end()) {
    status = ReportStatus::kReported;
  } else if (model.reachable[attacker]) {
    status = ReportStatus::kUnreported;
  }
  return PosteriorAttackProb(graph.attack_prob[attacker], model.intensity[attacker],
                             status);
}

double ReportedSetProb(const SocialGraph& graph, const InformantSet& recruited,
                       std::span<const int> reported) {
  const auto model = BuildReportModel(graph, recruited);
  std::vector<char> in(graph.NumAttackers(), 0);
  for (int v : reported) {
    if (v < 0 || v >= graph.NumAttackers() || !model.reachable[v]) {
      throw ValidationError("reported attacker is not reachable by the recruited set");
    }
    in[v] = 1;
  }
  double prob = 1.0;
  for (int v : model.reachable_ids) {
    const double report = model.intensity[v] * graph.attack_prob[v];
    prob *= in[v] ? report : 1.0 - report;
  }
  return prob;
}

double UnreportedMass(const SocialGraph& graph, const ReportModel& model,
                      std::span<const char> is_reported) {
  double mass = 0.0;
  for (int v = 0; v < graph.NumAttackers(); ++v) {
    if (is_reported[v]) continue;
    const auto status =
        model.reachable[v] ? ReportStatus::kUnreported : ReportStatus::kUnreachable;
    mass += PosteriorAttackProb(graph.attack_prob[v], model.intensity[v], status);
  }
  return mass;
}

TargetValue ExpectedTargetValue(const TargetPayoffs& payoffs, int reported_count,
                                double attack_share, double unreported_mass) {
  const double attacks = reported_count + attack_share * unreported_mass;
  return {attacks * payoffs.reward_def, attacks * payoffs.penalty_def,
          attacks * payoffs.DefenderGap()};
}

std::vector<int> GreedyAllocate(std::span<const TargetPayoffs> payoffs,
                                std::span<const int> reported_counts,
                                const AttackDistribution& q, double unreported_mass,
                                int resources) {
  const int n = static_cast<int>(payoffs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (resources >= n) return order;
  if (resources <= 0) return {};
  std::vector<double> gain(n);
  for (int i = 0; i < n; ++i) {
    gain[i] = ExpectedGain(payoffs[i], reported_counts[i], q[i], unreported_mass);
  }
  std::nth_element(order.begin(), order.begin() + resources, order.end(),
                   [&](int a, int b) { return GainBeats(gain[a], a, gain[b], b); });
  order.resize(resources);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<int> GreedyAllocate(const GameInstance& instance,
                                const InformantSet& recruited,
                                const std::vector<std::vector<int>>& tips,
                                const AttackDistribution& q) {
  const auto& g = instance.graph;
  if (static_cast<int>(tips.size()) != instance.NumTargets()) {
    throw ValidationError("tip vector must have one entry per target");
  }
  const auto model = BuildReportModel(g, recruited);
  std::vector<char> reported(g.NumAttackers(), 0);
  std::vector<int> counts(instance.NumTargets(), 0);
  for (std::size_t i = 0; i < tips.size(); ++i) {
    for (int v : tips[i]) {
      if (v < 0 || v >= g.NumAttackers() || !model.reachable[v]) {
        throw ValidationError("tip names an attacker outside the reachable set");
      }
      if (reported[v]) throw ValidationError("tip lists are not disjoint");
      reported[v] = 1;
      ++counts[i];
    }
  }
  return GreedyAllocate(instance.targets, counts, q, UnreportedMass(g, model, reported),
                        instance.resources);
}

std::vector<int> SampleReportedSet(const SocialGraph& graph, const ReportModel& model,
                                   Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> out;
  for (int v : model.reachable_ids) {
    if (unit(rng) < model.intensity[v] * graph.attack_prob[v]) out.push_back(v);
  }
  return out;
}

}  // namespace gsg
