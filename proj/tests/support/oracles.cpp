#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

double Gain(const gsg::TargetPayoffs& t, int count, double share, double mass) {
  return (count + share * mass) * (t.reward_def - t.penalty_def);
}

void Subsets(int n, int max_size, int start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_size) return;
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    Subsets(n, max_size, i + 1, cur, out);
    cur.pop_back();
  }
}

// Solves A x = b by Gaussian elimination with partial pivoting.
bool SolveSquare(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-11) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

}  // namespace

double AllocationValue(const std::vector<gsg::TargetPayoffs>& payoffs,
                       const std::vector<int>& counts, const std::vector<double>& q,
                       double mass, const std::vector<int>& covered) {
  double v = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    const bool c = std::find(covered.begin(), covered.end(), static_cast<int>(i)) != covered.end();
    const double attacks = counts[i] + q[i] * mass;
    v += attacks * (c ? payoffs[i].reward_def : payoffs[i].penalty_def);
  }
  return v;
}

Allocation BestAllocation(const std::vector<gsg::TargetPayoffs>& payoffs,
                          const std::vector<int>& counts, const std::vector<double>& q,
                          double mass, int resources) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  Subsets(static_cast<int>(payoffs.size()), resources, 0, cur, all);
  Allocation best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& s : all) {
    const double v = AllocationValue(payoffs, counts, q, mass, s);
    if (v > best.value) best = {s, v};
  }
  return best;
}

double BruteForceDefEU(const gsg::GameInstance& inst, const gsg::InformantSet& recruited,
                       const std::vector<double>& x0, const std::vector<double>& q) {
  const auto& g = inst.graph;
  const int ny = g.NumAttackers();
  const int n = inst.NumTargets();
  std::vector<double> wt(ny, 0.0);
  for (int v = 0; v < ny; ++v) {
    double miss = 1.0;
    for (const auto& e : g.edges) {
      if (e.attacker == v && recruited.Contains(e.informant)) miss *= 1.0 - e.intensity;
    }
    wt[v] = 1.0 - miss;
  }
  double routine = 0.0;
  for (int i = 0; i < n; ++i) {
    routine += q[i] * (x0[i] * inst.targets[i].reward_def +
                       (1.0 - x0[i]) * inst.targets[i].penalty_def);
  }

  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ny); ++mask) {
    double prob = 1.0;
    double mass = 0.0;
    std::vector<int> reported;
    for (int v = 0; v < ny; ++v) {
      const double p = g.attack_prob[v];
      if (mask >> v & 1u) {
        prob *= p * wt[v];
        reported.push_back(v);
      } else {
        prob *= 1.0 - p * wt[v];
        const double denom = 1.0 - p * wt[v];
        mass += denom > 0.0 ? p * (1.0 - wt[v]) / denom : 0.0;
      }
    }
    if (prob == 0.0) continue;
    if (reported.empty()) {
      total += prob * mass * routine;
      continue;
    }
    // Every labelled assignment of reported attackers to targets.
    const int m = static_cast<int>(reported.size());
    std::vector<int> assign(m, 0);
    double cond = 0.0;
    while (true) {
      double w = 1.0;
      std::vector<int> counts(n, 0);
      for (int a : assign) {
        w *= q[a];
        ++counts[a];
      }
      if (w > 0.0) {
        cond += w * BestAllocation(inst.targets, counts, q, mass, inst.resources).value;
      }
      int k = 0;
      while (k < m && ++assign[k] == n) assign[k++] = 0;
      if (k == m) break;
    }
    total += prob * cond;
  }
  return total;
}

double BruteForceCoverProbability(const std::vector<gsg::TargetPayoffs>& payoffs,
                                  const std::vector<double>& q, int target, int on_target,
                                  int elsewhere, double mass, int resources) {
  const int n = static_cast<int>(payoffs.size());
  std::vector<int> others;
  for (int j = 0; j < n; ++j) {
    if (j != target) others.push_back(j);
  }
  const double own = Gain(payoffs[target], on_target, q[target], mass);
  if (others.empty()) return elsewhere == 0 && resources > 0 ? 1.0 : 0.0;
  std::vector<int> assign(elsewhere, 0);
  double sum = 0.0;
  while (true) {
    std::vector<int> counts(n, 0);
    double w = 1.0;
    for (int a : assign) {
      w *= q[others[a]];
      ++counts[others[a]];
    }
    int ahead = 0;
    for (int j : others) {
      const double gj = Gain(payoffs[j], counts[j], q[j], mass);
      if (gj > own || (gj == own && j < target)) ++ahead;
    }
    if (ahead < resources) sum += w;
    int k = 0;
    while (k < elsewhere && ++assign[k] == static_cast<int>(others.size())) assign[k++] = 0;
    if (k == elsewhere) break;
  }
  return sum;
}

VertexResult VertexEnumeration(const gsg::LinearProgram& lp) {
  const int nv = lp.NumVariables();
  // Constraint rows a.x (<= or ==) b; bounds become rows too.
  struct Row {
    std::vector<double> a;
    double b;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) rows.push_back({lp.eq_rows[i], lp.eq_rhs[i]});
  const int num_eq = static_cast<int>(rows.size());
  for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) rows.push_back({lp.ub_rows[i], lp.ub_rhs[i]});
  for (int j = 0; j < nv; ++j) {
    std::vector<double> e(nv, 0.0);
    e[j] = 1.0;
    rows.push_back({e, lp.upper[j]});
    e[j] = -1.0;
    rows.push_back({e, -lp.lower[j]});
  }
  const int total = static_cast<int>(rows.size());
  VertexResult best;
  best.value = -std::numeric_limits<double>::infinity();
  // Choose nv active rows that include every equality.
  std::vector<int> pick;
  auto feasible = [&](const std::vector<double>& x) {
    for (int r = 0; r < total; ++r) {
      double s = 0.0;
      for (int j = 0; j < nv; ++j) s += rows[r].a[j] * x[j];
      if (r < num_eq ? std::abs(s - rows[r].b) > 1e-7 : s > rows[r].b + 1e-7) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == nv) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int r : pick) {
        a.push_back(rows[r].a);
        b.push_back(rows[r].b);
      }
      std::vector<double> x;
      if (!SolveSquare(a, b, x) || !feasible(x)) return;
      double v = 0.0;
      for (int j = 0; j < nv; ++j) v += lp.objective[j] * x[j];
      best.feasible = true;
      best.value = std::max(best.value, v);
      return;
    }
    for (int r = start; r < total; ++r) {
      if (total - r < nv - static_cast<int>(pick.size())) break;
      pick.push_back(r);
      self(self, r + 1);
      pick.pop_back();
    }
  };
  for (int r = 0; r < num_eq; ++r) pick.push_back(r);
  recurse(recurse, num_eq);
  return best;
}

double QriUtility(const std::vector<gsg::TargetPayoffs>& payoffs, double lambda, double w,
                  const std::vector<double>& x, const std::vector<double>& z) {
  const std::size_t n = payoffs.size();
  std::vector<double> y(n), ua(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (1.0 - w) * x[i] + w * z[i];
    ua[i] = y[i] * payoffs[i].penalty_att + (1.0 - y[i]) * payoffs[i].reward_att;
    top = std::max(top, ua[i]);
  }
  double norm = 0.0, num = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(lambda * (ua[i] - top));
    norm += e;
    num += e * (payoffs[i].penalty_def + y[i] * (payoffs[i].reward_def - payoffs[i].penalty_def));
  }
  return num / norm;
}

double GridQri(const std::vector<gsg::TargetPayoffs>& payoffs, double lambda, int resources,
               double w, double step) {
  const int steps = static_cast<int>(std::lround(1.0 / step));
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> x(2), z(2);
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      x = {a * step, b * step};
      if (x[0] + x[1] > resources + 1e-12) continue;
      for (int c = 0; c <= steps; ++c) {
        for (int d = 0; d <= steps; ++d) {
          z = {c * step, d * step};
          best = std::max(best, QriUtility(payoffs, lambda, w, x, z));
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
