#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsg {

// Tolerance used for probability normalization checks.
inline constexpr double kNormTolerance = 1e-9;

/// Defender and attacker payoffs for one target. The defender gets
/// `reward_def` when an attack on a covered target is caught and
/// `penalty_def` otherwise; the attacker gets `penalty_att` / `reward_att`.
struct TargetPayoffs {
  double reward_def = 1.0;   // > 0
  double penalty_def = -1.0; // < 0
  double reward_att = 1.0;   // > 0
  double penalty_att = -1.0; // < 0

  double DefenderGap() const { return reward_def - penalty_def; }
  double AttackerGap() const { return reward_att - penalty_att; }
};

// A vector of doubles tagged with its meaning, so that coverage and attack
// distributions cannot be swapped by accident.
template <class Tag>
class TaggedVector {
 public:
  TaggedVector() = default;
  explicit TaggedVector(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit TaggedVector(std::vector<double> values)
      : values_(std::move(values)) {}
  TaggedVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  std::span<const double> span() const { return values_; }

  double Sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

  friend bool operator==(const TaggedVector&, const TaggedVector&) = default;

 private:
  std::vector<double> values_;
};

struct CoverageTag {};
struct AttackTag {};

/// Marginal (or believed) coverage probability per target.
using CoverageVector = TaggedVector<CoverageTag>;
/// Attacker's probability of choosing each target, conditional on attacking.
using AttackDistribution = TaggedVector<AttackTag>;

struct Edge {
  int informant = -1;      // index into SocialGraph::informant_ids
  int attacker = -1;       // index into SocialGraph::attacker_ids
  double intensity = 0.0;  // probability the informant reports the attacker
};

/// Bipartite informant/attacker graph. Edges reference vertices by index;
/// an out-of-range index is representable so that validation can report it.
struct SocialGraph {
  std::vector<std::string> informant_ids;
  std::vector<std::string> attacker_ids;
  std::vector<double> attack_prob;  // p_v, parallel to attacker_ids
  std::vector<Edge> edges;

  int NumInformants() const { return static_cast<int>(informant_ids.size()); }
  int NumAttackers() const { return static_cast<int>(attacker_ids.size()); }
  double TotalAttackProb() const;
};

struct GameInstance {
  std::vector<TargetPayoffs> targets;
  SocialGraph graph;
  int resources = 1;       // r
  int recruit_budget = 0;  // k
  double lambda = 0.0;     // quantal response precision

  int NumTargets() const { return static_cast<int>(targets.size()); }
  // Largest absolute defender payoff over all targets.
  double MaxDefenderPayoff() const;
};

enum class ViolationKind {
  kNoTargets,
  kResources,
  kRecruitBudget,
  kLambda,
  kPayoffSign,
  kAttackProbability,
  kIntensity,
  kDanglingEdge,
  kDuplicateId,
  kSizeMismatch,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

// Returns every broken invariant of `instance`; empty when well formed.
std::vector<Violation> ValidateInstance(const GameInstance& instance);

// Throws ValidationError listing all violations, if any.
void RequireValid(const GameInstance& instance);

/// Softmax with precision `lambda` over `utilities`, shifted by the maximum
/// utility before exponentiation so large `lambda` cannot overflow.
std::vector<double> Softmax(std::span<const double> utilities, double lambda);

/// Attacker expected utility of each target under coverage belief `belief`.
std::vector<double> AttackerUtilities(const CoverageVector& belief,
                                      std::span<const TargetPayoffs> payoffs);

/// Quantal response of an attacker holding coverage belief `belief`.
AttackDistribution QuantalResponse(const CoverageVector& belief,
                                   std::span<const TargetPayoffs> payoffs,
                                   double lambda);

/// Parameters of the random instance generator.
struct GenerationParams {
  int num_informants = 6;
  int num_attackers = 8;
  int num_targets = 6;
  int resources = 3;
  int recruit_budget = 4;
  // When set, p_v = min(1, cap * t_v / |t|_1) with t ~ U[0,1]^|Y|, so the
  // expected number of attacks is at most `cap`. Otherwise p_v ~ U[0.4, 1].
  std::optional<double> sum_attack_prob_cap;
  // Overrides every p_v (used by single-attacker setups).
  std::optional<double> fixed_attack_prob;
  double payoff_scale = 2.0;   // Q; rewards in (0,Q], penalties in [-Q,0)
  double lambda = 2.0;
  double max_intensity = 0.2;  // w_uv ~ U[0, max_intensity]
  // Connect every informant to every attacker instead of sampling degrees.
  bool full_graph = false;
};

/// Draws a random instance. Deterministic for a fixed seed within one build.
/// Throws ValidationError when the attacker set would be empty.
GameInstance GenerateInstance(std::uint64_t seed, const GenerationParams& params);

}  // namespace gsg
