#pragma once

#include <functional>

namespace gsg {

inline constexpr int kBisectionMaxIter = 200;
inline constexpr double kBisectionTol = 1e-6;

/// Finds the threshold of a predicate that holds below it and fails above.
/// Requires feasible_at(lo); throws ValidationError otherwise or when
/// lo > hi. If feasible_at(hi) also holds, returns hi (no threshold inside
/// the bracket). Otherwise returns the last feasible level, within `tol` of
/// the threshold.
double BisectLevel(const std::function<bool(double)>& feasible_at, double lo,
                   double hi, double tol = kBisectionTol,
                   int max_iter = kBisectionMaxIter);

}  // namespace gsg
