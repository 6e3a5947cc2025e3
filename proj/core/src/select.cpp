#include "gsg/select.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "gsg/errors.hpp"

namespace gsg {

namespace {

// Larger value wins; equal values go to the lexicographically smaller set.
bool Improves(double value, const InformantSet& set, double best_value,
              const InformantSet& best_set, bool have_best) {
  if (!have_best || value > best_value) return true;
  return value == best_value && set < best_set;
}

int EffectiveBudget(const GameInstance& instance) {
  return std::clamp(instance.recruit_budget, 0, instance.graph.NumInformants());
}

}  // namespace

const char* ToString(SelectMethod method) {
  switch (method) {
    case SelectMethod::kExhaustive: return "esa";
    case SelectMethod::kGsa: return "gsa";
    case SelectMethod::kGreedyBaseline: return "greedyBaseline";
  }
  return "unknown";
}

SelectionResult SelectExhaustive(const GameInstance& instance,
                                 const SetEvaluator& evaluator) {
  RequireValid(instance);
  const int nx = instance.graph.NumInformants();
  if (nx > kMaxExhaustiveInformants) {
    throw SizeLimitError("exhaustive selection is limited to " +
                         std::to_string(kMaxExhaustiveInformants) + " informants");
  }
  const int k = EffectiveBudget(instance);
  SelectionResult res;
  res.method = SelectMethod::kExhaustive;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nx); ++mask) {
    if (std::popcount(mask) > k) continue;
    const auto set = InformantSet::FromMask(mask, nx);
    const double value = evaluator(set);
    ++res.evaluations_used;
    if (Improves(value, set, res.value, res.chosen, have)) {
      res.value = value;
      res.chosen = set;
      have = true;
    }
  }
  return res;
}

SelectionResult SelectGsa(const GameInstance& instance, const SetEvaluator& evaluator) {
  RequireValid(instance);
  const int nx = instance.graph.NumInformants();
  const int k = EffectiveBudget(instance);

  std::map<InformantSet, double> cache;
  auto eval = [&](const InformantSet& set) {
    auto it = cache.find(set);
    if (it == cache.end()) it = cache.emplace(set, evaluator(set)).first;
    return it->second;
  };

  SelectionResult res;
  res.method = SelectMethod::kGsa;
  bool have = false;
  auto search = [&](auto&& self, const InformantSet& partial) -> void {
    if (partial.size() >= k) {
      const double value = eval(partial);
      if (Improves(value, partial, res.value, res.chosen, have)) {
        res.value = value;
        res.chosen = partial;
        have = true;
      }
      return;
    }
    std::vector<std::pair<double, int>> ranked;
    for (int u = 0; u < nx; ++u) {
      if (!partial.Contains(u)) ranked.emplace_back(eval(partial.With(u)), u);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    for (std::size_t j = 0; j < std::min<std::size_t>(2, ranked.size()); ++j) {
      self(self, partial.With(ranked[j].second));
    }
  };
  search(search, InformantSet{});
  res.evaluations_used = static_cast<long>(cache.size());
  return res;
}

double TipProbability(const SocialGraph& graph, const InformantSet& recruited) {
  const auto model = BuildReportModel(graph, recruited);
  double none = 1.0;
  for (int v : model.reachable_ids) none *= 1.0 - model.intensity[v] * graph.attack_prob[v];
  return 1.0 - none;
}

SelectionResult SelectGreedyBaseline(const GameInstance& instance,
                                     const SetEvaluator& evaluator) {
  RequireValid(instance);
  const int nx = instance.graph.NumInformants();
  const int k = EffectiveBudget(instance);
  SelectionResult res;
  res.method = SelectMethod::kGreedyBaseline;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_prob = -1.0;
    for (int u = 0; u < nx; ++u) {
      if (res.chosen.Contains(u)) continue;
      const double prob = TipProbability(instance.graph, res.chosen.With(u));
      if (prob > best_prob) {
        best_prob = prob;
        best = u;
      }
    }
    res.chosen = res.chosen.With(best);
  }
  res.value = evaluator(res.chosen);
  res.evaluations_used = 1;
  return res;
}

TradeoffTable BudgetTradeoff(const GameInstance& instance, double budget,
                             double cost_resource, double cost_informant,
                             const EvaluatorSpec& spec, bool exhaustive) {
  if (!(cost_resource > 0.0) || !(cost_informant > 0.0)) {
    throw ValidationError("resource and informant costs must be positive");
  }
  if (!(budget >= 0.0)) throw ValidationError("budget must be non-negative");
  const int n = instance.NumTargets();
  const int nx = instance.graph.NumInformants();
  const int max_r = std::min(n, static_cast<int>(std::floor(budget / cost_resource)));

  TradeoffTable table;
  for (int r = 0; r <= max_r; ++r) {
    const double left = budget - r * cost_resource;
    const int max_k = std::min(nx, static_cast<int>(std::floor(left / cost_informant + 1e-12)));
    GameInstance copy = instance;
    copy.resources = r;
    if (r == 0) {
      const auto q = QuantalResponse(CoverageVector(n), copy.targets, copy.lambda);
      double per_attack = 0.0;
      for (int i = 0; i < n; ++i) per_attack += q[i] * copy.targets[i].penalty_def;
      const double value = copy.graph.TotalAttackProb() * per_attack;
      for (int k = 0; k <= max_k; ++k) table.rows.push_back({k, 0, value, {}});
      continue;
    }
    const auto ctx = MakeLevelZeroContext(copy);
    const auto evaluator = MakeEvaluator(ctx, spec);
    for (int k = 0; k <= max_k; ++k) {
      copy.recruit_budget = k;
      const auto sel =
          exhaustive ? SelectExhaustive(copy, evaluator) : SelectGsa(copy, evaluator);
      table.rows.push_back({k, r, sel.value, sel.chosen});
    }
  }
  for (std::size_t j = 1; j < table.rows.size(); ++j) {
    if (table.rows[j].value > table.rows[table.best].value) table.best = static_cast<int>(j);
  }
  return table;
}

}  // namespace gsg
