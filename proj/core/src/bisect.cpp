#include "gsg/bisect.hpp"

#include "gsg/errors.hpp"

namespace gsg {

double BisectLevel(const std::function<bool(double)>& feasible_at, double lo,
                   double hi, double tol, int max_iter) {
  if (lo > hi) throw ValidationError("bisection bracket has lo > hi");
  if (lo == hi) return lo;
  if (!feasible_at(lo)) {
    throw ValidationError("bisection bracket invalid: predicate false at lower end");
  }
  if (feasible_at(hi)) return hi;
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace gsg
