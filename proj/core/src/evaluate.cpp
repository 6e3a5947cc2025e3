#include "gsg/evaluate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "combinatorics.hpp"
#include "gsg/errors.hpp"
#include "gsg/routine.hpp"
#include "parallel.hpp"

namespace gsg {

namespace {

using detail::Binomial;
using detail::Factorial;

void CheckContext(const EvalContext& ctx) {
  if (ctx.instance == nullptr) throw ValidationError("evaluation context has no instance");
  RequireValid(*ctx.instance);
  const std::size_t n = ctx.instance->targets.size();
  if (ctx.routine.size() != n || ctx.attack.size() != n) {
    throw ValidationError("routine patrol or attack distribution has the wrong size");
  }
  if (std::abs(ctx.attack.Sum() - 1.0) > 1e-6) {
    throw ValidationError("attack distribution does not sum to 1");
  }
}

// Reporting data for enumeration over subsets of the reachable set V.
struct Enumeration {
  std::vector<double> report_prob;     // w~_v p_v, v in V
  std::vector<double> silent_posterior;  // posterior of v in V when unreported
  double unreachable_mass = 0.0;       // sum over Y \ V of p_v
};

Enumeration BuildEnumeration(const SocialGraph& graph, const ReportModel& model) {
  Enumeration e;
  for (int v = 0; v < graph.NumAttackers(); ++v) {
    if (!model.reachable[v]) e.unreachable_mass += graph.attack_prob[v];
  }
  for (int v : model.reachable_ids) {
    const double p = graph.attack_prob[v];
    e.report_prob.push_back(model.intensity[v] * p);
    e.silent_posterior.push_back(
        PosteriorAttackProb(p, model.intensity[v], ReportStatus::kUnreported));
  }
  return e;
}

struct SubsetInfo {
  double prob;
  int size;
  double unreported_mass;
};

SubsetInfo DescribeMask(const Enumeration& e, std::uint64_t mask) {
  SubsetInfo s{1.0, 0, e.unreachable_mass};
  for (std::size_t j = 0; j < e.report_prob.size(); ++j) {
    if (mask >> j & 1u) {
      s.prob *= e.report_prob[j];
      ++s.size;
    } else {
      s.prob *= 1.0 - e.report_prob[j];
      s.unreported_mass += e.silent_posterior[j];
    }
  }
  return s;
}

template <class Fn>
void ForEachTipCount(const EvalContext& ctx, int m, double S, Fn fn) {
  const auto& payoffs = ctx.instance->targets;
  const auto& q = ctx.attack;
  const int r = ctx.instance->resources;
  for (int i = 0; i < ctx.instance->NumTargets(); ++i) {
    for (int t = 0; t <= m; ++t) {
      const double weight = Binomial(m, t) * std::pow(q[i], t);
      if (weight == 0.0) continue;
      const double cover = CoverProbability(payoffs, q, i, t, m - t, S, r);
      fn(i, t, weight, cover);
    }
  }
}

}  // namespace

EvalContext MakeLevelZeroContext(const GameInstance& instance) {
  const auto routine = SolveRoutine(instance);
  EvalContext ctx;
  ctx.instance = &instance;
  ctx.routine = routine.x0;
  ctx.attack = routine.q0;
  ctx.single_attack_utility = routine.def_eu0;
  return ctx;
}

EvalContext MakeContext(const GameInstance& instance, CoverageVector routine,
                        AttackDistribution attack) {
  EvalContext ctx;
  ctx.instance = &instance;
  ctx.single_attack_utility = SingleAttackUtility(routine, attack, instance.targets);
  ctx.routine = std::move(routine);
  ctx.attack = std::move(attack);
  return ctx;
}

const char* ToString(EvalMethod method) {
  switch (method) {
    case EvalMethod::kExact: return "exact";
    case EvalMethod::kCTruncated: return "cTruncated";
    case EvalMethod::kSampled: return "sampled";
    case EvalMethod::kSisi: return "sisi";
    case EvalMethod::kMonteCarlo: return "monteCarlo";
  }
  return "unknown";
}

double CoverProbability(std::span<const TargetPayoffs> payoffs,
                        const AttackDistribution& q, int target,
                        int reported_on_target, int reported_elsewhere,
                        double unreported_mass, int resources) {
  const int n = static_cast<int>(payoffs.size());
  if (target < 0 || target >= n) throw ValidationError("target index out of range");
  if (reported_on_target < 0 || reported_elsewhere < 0) {
    throw ValidationError("report counts must be non-negative");
  }
  if (resources <= 0) return 0.0;
  const int total = reported_elsewhere;
  const int cap = std::min(resources, n);  // beaten-by counts that still cover
  const double gain_i =
      ExpectedGain(payoffs[target], reported_on_target, q[target], unreported_mass);

  // f[x][y]: weight of placing y reports on the targets seen so far with x
  // of them beating the target.
  std::vector<double> f(cap * (total + 1), 0.0), next(f.size());
  auto at = [&](std::vector<double>& v, int x, int y) -> double& {
    return v[x * (total + 1) + y];
  };
  at(f, 0, 0) = 1.0;
  std::vector<double> term(total + 1);
  std::vector<char> beats(total + 1);
  for (int j = 0; j < n; ++j) {
    if (j == target) continue;
    for (int a = 0; a <= total; ++a) {
      term[a] = std::pow(q[j], a) / Factorial(a);
      beats[a] = GainBeats(ExpectedGain(payoffs[j], a, q[j], unreported_mass), j, gain_i,
                           target);
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (int x = 0; x < cap; ++x) {
      for (int y = 0; y <= total; ++y) {
        const double base = at(f, x, y);
        if (base == 0.0) continue;
        for (int a = 0; a + y <= total; ++a) {
          const int nx = x + beats[a];
          if (nx >= cap) continue;
          at(next, nx, y + a) += base * term[a];
        }
      }
    }
    f.swap(next);
  }
  double sum = 0.0;
  for (int x = 0; x < cap; ++x) sum += at(f, x, total);
  return Factorial(total) * sum;
}

double ConditionalUtility(const EvalContext& ctx, int num_reported,
                          double unreported_mass) {
  if (num_reported == 0) return unreported_mass * ctx.single_attack_utility;
  const auto& payoffs = ctx.instance->targets;
  const auto& q = ctx.attack;
  double value = 0.0;
  ForEachTipCount(ctx, num_reported, unreported_mass,
                  [&](int i, int t, double weight, double cover) {
                    const auto v = ExpectedTargetValue(payoffs[i], t, q[i], unreported_mass);
                    const double miss = std::pow(1.0 - q[i], num_reported - t);
                    value += weight * (miss * v.uncovered + cover * v.gain);
                  });
  return value;
}

std::vector<double> ConditionalCoverage(const EvalContext& ctx, int num_reported,
                                        double unreported_mass) {
  if (num_reported == 0) return ctx.routine.values();
  std::vector<double> cov(ctx.instance->NumTargets(), 0.0);
  ForEachTipCount(ctx, num_reported, unreported_mass,
                  [&](int i, int, double weight, double cover) { cov[i] += weight * cover; });
  return cov;
}

namespace {

void GuardReachable(const ReportModel& model) {
  if (static_cast<int>(model.reachable_ids.size()) > kMaxEnumeratedReachable) {
    throw SizeLimitError("reachable attacker set has " +
                         std::to_string(model.reachable_ids.size()) +
                         " members; exact enumeration is limited to " +
                         std::to_string(kMaxEnumeratedReachable));
  }
}

}  // namespace

CoverageVector ExpectedCoverage(const EvalContext& ctx, const InformantSet& recruited) {
  CheckContext(ctx);
  const auto model = BuildReportModel(ctx.instance->graph, recruited);
  GuardReachable(model);
  const auto e = BuildEnumeration(ctx.instance->graph, model);
  const int n = ctx.instance->NumTargets();
  const std::int64_t count = std::int64_t{1} << e.report_prob.size();
  const auto parts = detail::ChunkedMap<std::vector<double>>(
      count, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> acc(n, 0.0);
        for (std::int64_t mask = begin; mask < end; ++mask) {
          const auto s = DescribeMask(e, mask);
          if (s.prob == 0.0) continue;
          const auto cov = ConditionalCoverage(ctx, s.size, s.unreported_mass);
          for (int i = 0; i < n; ++i) acc[i] += s.prob * cov[i];
        }
        return acc;
      });
  CoverageVector out(n);
  for (const auto& part : parts) {
    for (int i = 0; i < n; ++i) out[i] += part[i];
  }
  return out;
}

EvaluationResult EvalExact(const EvalContext& ctx, const InformantSet& recruited) {
  CheckContext(ctx);
  const auto model = BuildReportModel(ctx.instance->graph, recruited);
  GuardReachable(model);
  const auto e = BuildEnumeration(ctx.instance->graph, model);
  const std::int64_t count = std::int64_t{1} << e.report_prob.size();
  const auto parts =
      detail::ChunkedMap<double>(count, [&](std::int64_t begin, std::int64_t end) {
        double acc = 0.0;
        for (std::int64_t mask = begin; mask < end; ++mask) {
          const auto s = DescribeMask(e, mask);
          if (s.prob == 0.0) continue;
          acc += s.prob * ConditionalUtility(ctx, s.size, s.unreported_mass);
        }
        return acc;
      });
  EvaluationResult res;
  res.method = EvalMethod::kExact;
  for (double p : parts) res.value += p;
  return res;
}

double TruncationErrorBound(int max_reported, double attack_cap, int num_attackers,
                            double payoff_scale) {
  const double gap = max_reported - attack_cap;
  if (!(gap > 0.0)) throw ValidationError("truncation bound requires C > C'");
  if (num_attackers <= 0) throw ValidationError("truncation bound requires |Y| >= 1");
  const double y = num_attackers;
  return payoff_scale * std::exp(-2.0 * gap * gap / y) *
         (max_reported + 1.0 / (1.0 - std::exp(-4.0 * gap / y)));
}

EvaluationResult EvalTruncated(const EvalContext& ctx, const InformantSet& recruited,
                               int max_reported,
                               std::optional<TruncationBoundParams> bound) {
  if (max_reported < 1) throw ValidationError("truncation size C must be >= 1");
  CheckContext(ctx);
  const auto& graph = ctx.instance->graph;
  const auto model = BuildReportModel(graph, recruited);
  const auto e = BuildEnumeration(graph, model);
  const int nv = static_cast<int>(e.report_prob.size());
  if (nv > 62) throw SizeLimitError("reachable attacker set too large to index");

  EvaluationResult res;
  res.method = EvalMethod::kCTruncated;
  const int largest = std::min(max_reported - 1, nv);
  for (int size = 0; size <= largest; ++size) {
    // Gosper's hack over masks with `size` bits.
    std::uint64_t mask = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << nv;
    while (mask < limit) {
      const auto s = DescribeMask(e, mask);
      if (s.prob != 0.0) {
        res.value += s.prob * ConditionalUtility(ctx, s.size, s.unreported_mass);
      }
      if (mask == 0) break;
      const std::uint64_t c = mask & -mask;
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  if (bound && bound->attack_cap < max_reported &&
      graph.TotalAttackProb() <= bound->attack_cap + 1e-12) {
    res.error_bound = TruncationErrorBound(max_reported, bound->attack_cap,
                                           graph.NumAttackers(), bound->payoff_scale);
  }
  return res;
}

EvaluationResult EvalSampled(const EvalContext& ctx, const InformantSet& recruited,
                             long samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("sample count T must be >= 1");
  CheckContext(ctx);
  const auto& graph = ctx.instance->graph;
  const auto model = BuildReportModel(graph, recruited);
  const auto e = BuildEnumeration(graph, model);

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<std::vector<char>, double> memo;
  std::vector<char> drawn(e.report_prob.size());
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    for (std::size_t j = 0; j < drawn.size(); ++j) drawn[j] = unit(rng) < e.report_prob[j];
    auto it = memo.find(drawn);
    if (it == memo.end()) {
      int size = 0;
      double mass = e.unreachable_mass;
      for (std::size_t j = 0; j < drawn.size(); ++j) {
        if (drawn[j]) {
          ++size;
        } else {
          mass += e.silent_posterior[j];
        }
      }
      it = memo.emplace(drawn, ConditionalUtility(ctx, size, mass)).first;
    }
    sum += it->second;
    sum_sq += it->second * it->second;
  }
  EvaluationResult res;
  res.method = EvalMethod::kSampled;
  res.value = sum / samples;
  res.sample_count = samples;
  res.seed = seed;
  const double var = samples > 1
                         ? std::max(0.0, (sum_sq - sum * res.value) / (samples - 1))
                         : 0.0;
  res.standard_error = std::sqrt(var / samples);
  return res;
}

bool IsStrongSharing(const SocialGraph& graph, const InformantSet& recruited) {
  for (const auto& e : graph.edges) {
    if (recruited.Contains(e.informant) && e.intensity != 1.0) return false;
  }
  return true;
}

EvaluationResult EvalSisi(const EvalContext& ctx, const InformantSet& recruited) {
  CheckContext(ctx);
  const auto& graph = ctx.instance->graph;
  if (!IsStrongSharing(graph, recruited)) {
    throw ValidationError("strong sharing evaluation needs intensity 1 on every recruited edge");
  }
  const auto model = BuildReportModel(graph, recruited);
  double unreachable = 0.0;
  for (int v = 0; v < graph.NumAttackers(); ++v) {
    if (!model.reachable[v]) unreachable += graph.attack_prob[v];
  }
  // Coefficients of prod over V of (1 - p_v + p_v x).
  std::vector<double> poly{1.0};
  for (int v : model.reachable_ids) {
    const double p = graph.attack_prob[v];
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t t = 0; t < poly.size(); ++t) {
      next[t] += poly[t] * (1.0 - p);
      next[t + 1] += poly[t] * p;
    }
    poly.swap(next);
  }
  EvaluationResult res;
  res.method = EvalMethod::kSisi;
  for (std::size_t t = 0; t < poly.size(); ++t) {
    if (poly[t] == 0.0) continue;
    res.value += poly[t] * ConditionalUtility(ctx, static_cast<int>(t), unreachable);
  }
  return res;
}

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Covers each target i with probability x_i using one uniform draw
// (systematic sampling); at most ceil(sum x) targets are covered.
void SampleCoverage(const CoverageVector& x, double u, std::vector<char>& covered) {
  double start = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double end = start + x[i];
    covered[i] = std::ceil(end - u) - std::ceil(start - u) >= 1.0;
    start = end;
  }
}

}  // namespace

EvaluationResult EvalMonteCarlo(const EvalContext& ctx, const InformantSet& recruited,
                                long episodes, std::uint64_t seed) {
  if (episodes < 1) throw ValidationError("episode count must be >= 1");
  CheckContext(ctx);
  const auto& inst = *ctx.instance;
  const auto& graph = inst.graph;
  const auto model = BuildReportModel(graph, recruited);
  const int n = inst.NumTargets();
  const int ny = graph.NumAttackers();

  std::vector<double> silent(ny);
  double all_silent = 0.0;
  for (int v = 0; v < ny; ++v) {
    const auto status =
        model.reachable[v] ? ReportStatus::kUnreported : ReportStatus::kUnreachable;
    silent[v] = PosteriorAttackProb(graph.attack_prob[v], model.intensity[v], status);
    all_silent += silent[v];
  }

  const auto parts = detail::ChunkedMap<Moments>(
      episodes, [&](std::int64_t begin, std::int64_t end) {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(begin)};
        Rng rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::discrete_distribution<int> pick(ctx.attack.begin(), ctx.attack.end());
        std::vector<int> target(ny), counts(n);
        std::vector<char> covered(n);
        Moments m;
        for (std::int64_t ep = begin; ep < end; ++ep) {
          std::fill(counts.begin(), counts.end(), 0);
          int reported = 0;
          double mass = all_silent;
          for (int v = 0; v < ny; ++v) {
            target[v] = -1;
            if (!(unit(rng) < graph.attack_prob[v])) continue;
            target[v] = pick(rng);
            if (model.reachable[v] && unit(rng) < model.intensity[v]) {
              ++counts[target[v]];
              ++reported;
              mass -= silent[v];
            }
          }
          if (reported == 0) {
            SampleCoverage(ctx.routine, unit(rng), covered);
          } else {
            std::fill(covered.begin(), covered.end(), 0);
            for (int i : GreedyAllocate(inst.targets, counts, ctx.attack,
                                        std::max(mass, 0.0), inst.resources)) {
              covered[i] = 1;
            }
          }
          double payoff = 0.0;
          for (int v = 0; v < ny; ++v) {
            if (target[v] < 0) continue;
            const auto& t = inst.targets[target[v]];
            payoff += covered[target[v]] ? t.reward_def : t.penalty_def;
          }
          m.sum += payoff;
          m.sum_sq += payoff * payoff;
        }
        return m;
      });

  Moments total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  EvaluationResult res;
  res.method = EvalMethod::kMonteCarlo;
  res.value = total.sum / episodes;
  res.sample_count = episodes;
  res.seed = seed;
  const double var =
      episodes > 1 ? std::max(0.0, (total.sum_sq - total.sum * res.value) / (episodes - 1))
                   : 0.0;
  res.standard_error = std::sqrt(var / episodes);
  return res;
}

SetEvaluator MakeEvaluator(const EvalContext& ctx, const EvaluatorSpec& spec) {
  switch (spec.method) {
    case EvalMethod::kExact:
      return [&ctx](const InformantSet& u) { return EvalExact(ctx, u).value; };
    case EvalMethod::kCTruncated:
      return [&ctx, c = spec.max_reported](const InformantSet& u) {
        return EvalTruncated(ctx, u, c).value;
      };
    case EvalMethod::kSampled:
      return [&ctx, t = spec.samples, s = spec.seed](const InformantSet& u) {
        return EvalSampled(ctx, u, t, s).value;
      };
    case EvalMethod::kSisi:
      return [&ctx](const InformantSet& u) { return EvalSisi(ctx, u).value; };
    case EvalMethod::kMonteCarlo:
      return [&ctx, t = spec.samples, s = spec.seed](const InformantSet& u) {
        return EvalMonteCarlo(ctx, u, t, s).value;
      };
  }
  throw ValidationError("unknown evaluation method");
}

}  // namespace gsg
