#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "gsg/model.hpp"
#include "gsg/tips.hpp"

namespace gsg {

/// What the defender plays and expects when evaluating a recruited set:
/// the routine patrol used when uninformed, the attacker's target
/// distribution, and the routine patrol's utility against one attack.
/// For level-0 attackers these come from the routine solution; for
/// level-kappa attackers pass q^kappa and the matching single-attack utility.
struct EvalContext {
  const GameInstance* instance = nullptr;
  CoverageVector routine;
  AttackDistribution attack;
  double single_attack_utility = 0.0;
};

// Context against level-0 attackers (routine patrol optimal against QR).
EvalContext MakeLevelZeroContext(const GameInstance& instance);

// Context for an arbitrary (x0, q) pair; the single-attack utility is
// sum_i q_i [x_i Rd_i + (1 - x_i) Pd_i].
EvalContext MakeContext(const GameInstance& instance, CoverageVector routine,
                        AttackDistribution attack);

enum class EvalMethod { kExact, kCTruncated, kSampled, kSisi, kMonteCarlo };

const char* ToString(EvalMethod method);

struct EvaluationResult {
  double value = 0.0;
  EvalMethod method = EvalMethod::kExact;
  std::optional<double> error_bound;     // truncation only
  std::optional<long> sample_count;      // sampled / Monte-Carlo
  std::optional<std::uint64_t> seed;     // sampled / Monte-Carlo
  std::optional<double> standard_error;  // sampled / Monte-Carlo
};

// Enumeration guard on |V| for exact evaluation.
inline constexpr int kMaxEnumeratedReachable = 20;

/// Joint factor P_{i,r} for tip type (t_i, V0): given `reported_on_target`
/// reports on `target` and `reported_elsewhere` = |V0| - t_i reports to be
/// spread over the other targets by q, returns
///   (|V0| - t_i)! * sum over placements with fewer than r other targets
///   beating `target` in expected gain of prod q_j^{a_j} / a_j!.
/// Ties in expected gain go to the lower target index.
double CoverProbability(std::span<const TargetPayoffs> payoffs,
                        const AttackDistribution& q, int target,
                        int reported_on_target, int reported_elsewhere,
                        double unreported_mass, int resources);

/// Expected defender utility given that exactly `num_reported` attackers
/// were reported and `unreported_mass` attacks are expected from the rest.
/// For num_reported == 0 this is the routine patrol's utility.
double ConditionalUtility(const EvalContext& ctx, int num_reported,
                          double unreported_mass);

/// Marginal coverage of each target given `num_reported` reports, under the
/// greedy tip response. Equals the routine patrol when nothing is reported.
std::vector<double> ConditionalCoverage(const EvalContext& ctx, int num_reported,
                                        double unreported_mass);

/// Marginal coverage of each target under the tip response of `recruited`,
/// averaged over every reported set. Same enumeration guard as EvalExact.
CoverageVector ExpectedCoverage(const EvalContext& ctx, const InformantSet& recruited);

/// Exact DefEU(U): enumerates every reported set V0 of V.
/// Throws SizeLimitError when |V| > kMaxEnumeratedReachable.
EvaluationResult EvalExact(const EvalContext& ctx, const InformantSet& recruited);

struct TruncationBoundParams {
  double attack_cap;     // C' with sum_v p_v <= C'
  double payoff_scale;   // Q with |Rd|, |Pd| <= Q
};

/// Exact evaluation restricted to |V0| < max_reported. The error bound is
/// attached when `bound` is given and sum p_v <= C' < max_reported.
EvaluationResult EvalTruncated(const EvalContext& ctx, const InformantSet& recruited,
                               int max_reported,
                               std::optional<TruncationBoundParams> bound = {});

/// Q e^{-2(C-C')^2/|Y|} (C + 1 / (1 - e^{-4(C-C')/|Y|})). Requires C > C'.
double TruncationErrorBound(int max_reported, double attack_cap, int num_attackers,
                            double payoff_scale);

/// Average of the exact conditional utility over `samples` drawn reported
/// sets. Reproducible for a fixed seed.
EvaluationResult EvalSampled(const EvalContext& ctx, const InformantSet& recruited,
                             long samples, std::uint64_t seed);

// True when every edge leaving a recruited informant has intensity 1.
bool IsStrongSharing(const SocialGraph& graph, const InformantSet& recruited);

/// Polynomial-time evaluation for strong information sharing (w = 1 on all
/// recruited edges): enumerates |V0| instead of V0. Throws ValidationError
/// when the recruited edges are not all of intensity 1.
EvaluationResult EvalSisi(const EvalContext& ctx, const InformantSet& recruited);

/// Simulates the two-stage game episode by episode and averages the
/// realized defender payoff.
EvaluationResult EvalMonteCarlo(const EvalContext& ctx, const InformantSet& recruited,
                                long episodes, std::uint64_t seed);

using SetEvaluator = std::function<double(const InformantSet&)>;

struct EvaluatorSpec {
  EvalMethod method = EvalMethod::kExact;
  int max_reported = 6;        // truncation C
  long samples = 100;          // sampled T / Monte-Carlo episodes
  std::uint64_t seed = 1;
};

// Binds an evaluation method to a context. `ctx` must outlive the result.
SetEvaluator MakeEvaluator(const EvalContext& ctx, const EvaluatorSpec& spec);

}  // namespace gsg
