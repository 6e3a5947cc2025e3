#include "gsg/pwl.hpp"

#include <algorithm>
#include <cmath>

#include "gsg/errors.hpp"

namespace gsg {

PwlApprox PwlApprox::Build(double beta, int segments) {
  if (segments < 1) throw ValidationError("PWL approximation needs K >= 1");
  PwlApprox a;
  a.segments = segments;
  a.beta = beta;
  a.decay_slopes.resize(segments);
  a.weighted_slopes.resize(segments);
  const double k = segments;
  for (int j = 0; j < segments; ++j) {
    const double y0 = j / k;
    const double y1 = (j + 1) / k;
    const double d0 = std::exp(-beta * y0);
    const double d1 = std::exp(-beta * y1);
    a.decay_slopes[j] = (d1 - d0) * k;
    a.weighted_slopes[j] = (y1 * d1 - y0 * d0) * k;
  }
  return a;
}

namespace {

double EvalSecants(const std::vector<double>& slopes, double start, double y,
                   double width) {
  double v = start;
  for (std::size_t j = 0; j < slopes.size(); ++j) {
    const double lo = j * width;
    if (y <= lo) break;
    v += slopes[j] * std::min(y - lo, width);
  }
  return v;
}

}  // namespace

double PwlApprox::EvalDecay(double y) const {
  return EvalSecants(decay_slopes, 1.0, y, Width());
}

double PwlApprox::EvalWeighted(double y) const {
  return EvalSecants(weighted_slopes, 0.0, y, Width());
}

double FillPattern::SegmentLower(int j, double width) const {
  return j < full_segments ? width : 0.0;
}

double FillPattern::SegmentUpper(int j, double width) const {
  if (j < full_segments) return width;
  if (j == full_segments && has_partial) return width;
  return 0.0;
}

std::vector<FillPattern> FillOrderPatterns(int segments) {
  if (segments < 1) throw ValidationError("fill patterns need K >= 1");
  std::vector<FillPattern> out;
  out.push_back({0, 0, false});
  for (int m = 1; m <= segments; ++m) out.push_back({m, m - 1, true});
  return out;
}

int PatternForTotal(double total, int segments) {
  const double scaled = std::clamp(total, 0.0, 1.0) * segments;
  int m = static_cast<int>(std::ceil(scaled - 1e-12));
  return std::clamp(m, 1, segments);
}

}  // namespace gsg
