#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gsg/model.hpp"

namespace gsg {

using Rng = std::mt19937_64;

/// Recruited informants, as sorted unique indices into the graph.
class InformantSet {
 public:
  InformantSet() = default;
  explicit InformantSet(std::vector<int> members);
  static InformantSet FromMask(std::uint64_t mask, int num_informants);

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool Contains(int u) const;
  InformantSet With(int u) const;

  // Lexicographic on the sorted member list; the empty set is smallest.
  friend auto operator<=>(const InformantSet&, const InformantSet&) = default;

 private:
  std::vector<int> members_;
};

/// Per-attacker reporting data induced by a recruited set U.
struct ReportModel {
  std::vector<double> intensity;   // w~_v, zero when unreachable
  std::vector<char> reachable;     // v in V
  std::vector<int> reachable_ids;  // V, ascending
};

ReportModel BuildReportModel(const SocialGraph& graph, const InformantSet& recruited);

/// Probability that `attacker` is reported given that he attacks:
/// 1 - prod over recruited neighbours of (1 - w_uv).
double ReportIntensity(const SocialGraph& graph, const InformantSet& recruited,
                       int attacker);

enum class ReportStatus { kReported, kUnreported, kUnreachable };

/// Posterior probability that an attacker attacks given the reported set.
/// The 0/0 case (p = 1, w~ = 1, unreported) is taken as 0.
double PosteriorAttackProb(double attack_prob, double intensity, ReportStatus status);

double PosteriorAttackProb(const SocialGraph& graph, const InformantSet& recruited,
                           int attacker, std::span<const int> reported);

/// Probability that exactly `reported` (a subset of V) is the reported set.
/// Throws ValidationError if `reported` is not a subset of V.
double ReportedSetProb(const SocialGraph& graph, const InformantSet& recruited,
                       std::span<const int> reported);

/// Expected number of attacks from attackers outside `reported`,
/// i.e. the sum over Y \ V0 of the posterior attack probabilities.
double UnreportedMass(const SocialGraph& graph, const ReportModel& model,
                      std::span<const char> is_reported);

/// Expected defender utilities of one target given its reported count.
struct TargetValue {
  double covered;    // EU^c
  double uncovered;  // EU^u
  double gain;       // EG = EU^c - EU^u
};

TargetValue ExpectedTargetValue(const TargetPayoffs& payoffs, int reported_count,
                                double attack_share, double unreported_mass);

inline double ExpectedGain(const TargetPayoffs& payoffs, int reported_count,
                           double attack_share, double unreported_mass) {
  return (reported_count + attack_share * unreported_mass) * payoffs.DefenderGap();
}

/// Total order on targets by expected gain: strictly larger gain wins and
/// equal gains go to the lower index.
inline bool GainBeats(double gain_j, int j, double gain_i, int i) {
  return gain_j > gain_i || (gain_j == gain_i && j < i);
}

/// Covers the `resources` targets with the largest expected gain. Returns
/// covered target indices in ascending order. Linear in the target count.
std::vector<int> GreedyAllocate(std::span<const TargetPayoffs> payoffs,
                                std::span<const int> reported_counts,
                                const AttackDistribution& q, double unreported_mass,
                                int resources);

/// Tip vector form: `tips[i]` lists the attackers reported on target i.
/// Validates that the lists are disjoint subsets of V.
std::vector<int> GreedyAllocate(const GameInstance& instance,
                                const InformantSet& recruited,
                                const std::vector<std::vector<int>>& tips,
                                const AttackDistribution& q);

/// Draws a reported set: each v in V is included with probability w~_v p_v.
std::vector<int> SampleReportedSet(const SocialGraph& graph, const ReportModel& model,
                                   Rng& rng);

}  // namespace gsg
