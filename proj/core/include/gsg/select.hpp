#pragma once

#include <vector>

#include "gsg/evaluate.hpp"
#include "gsg/model.hpp"
#include "gsg/tips.hpp"

namespace gsg {

enum class SelectMethod { kExhaustive, kGsa, kGreedyBaseline };

const char* ToString(SelectMethod method);

struct SelectionResult {
  InformantSet chosen;
  double value = 0.0;        // evaluator(chosen)
  long evaluations_used = 0; // distinct sets evaluated
  SelectMethod method = SelectMethod::kExhaustive;
};

// Enumeration guard on |X| for exhaustive selection.
inline constexpr int kMaxExhaustiveInformants = 20;

/// Best U with |U| <= k over all subsets of X. Ties go to the
/// lexicographically smallest member list. Throws SizeLimitError when
/// |X| > kMaxExhaustiveInformants.
SelectionResult SelectExhaustive(const GameInstance& instance,
                                 const SetEvaluator& evaluator);

/// Recursive search that, from each partial set, branches on the two
/// informants with the largest evaluated value and keeps the best set of
/// size min(k, |X|). Evaluations are cached across branches.
SelectionResult SelectGsa(const GameInstance& instance, const SetEvaluator& evaluator);

/// Adds, k times, the informant that maximizes the probability of receiving
/// at least one tip, 1 - prod_v (1 - w~_v p_v). The value is reported with
/// `evaluator`.
SelectionResult SelectGreedyBaseline(const GameInstance& instance,
                                     const SetEvaluator& evaluator);

// Probability that the recruited set receives at least one tip.
double TipProbability(const SocialGraph& graph, const InformantSet& recruited);

struct TradeoffRow {
  int informants = 0;  // k
  int resources = 0;   // r
  double value = 0.0;
  InformantSet chosen;
};

struct TradeoffTable {
  std::vector<TradeoffRow> rows;
  int best = 0;  // index of the row with the largest value (first on ties)
};

/// Sweeps every (k, r) with k * cost_informant + r * cost_resource <= budget
/// and k <= |X|, selects U per pair with GSA (or ESA when `exhaustive`) on
/// the level-0 context of the instance with r resources, and tabulates the
/// value. r = 0 is valued directly: nothing can be covered, so
/// DefEU = sum_v p_v * sum_i q_i Pd_i with q the quantal response to zero
/// coverage, and U is left empty.
TradeoffTable BudgetTradeoff(const GameInstance& instance, double budget,
                             double cost_resource, double cost_informant,
                             const EvaluatorSpec& spec, bool exhaustive = false);

}  // namespace gsg
