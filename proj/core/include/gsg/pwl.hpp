#pragma once

#include <vector>

namespace gsg {

/// Secant approximations on the breakpoints j/K, j = 0..K, of
///   decay(y)    = exp(-beta * y)
///   weighted(y) = y * exp(-beta * y).
/// Slope j covers [j/K, (j+1)/K].
struct PwlApprox {
  int segments = 0;
  double beta = 0.0;
  std::vector<double> decay_slopes;
  std::vector<double> weighted_slopes;

  static PwlApprox Build(double beta, int segments);

  double Width() const { return 1.0 / segments; }
  double Breakpoint(int j) const { return static_cast<double>(j) / segments; }
  double EvalDecay(double y) const;
  double EvalWeighted(double y) const;
};

/// One admissible fill structure of K segments of width 1/K. Pattern 0 is
/// the empty boundary (every segment zero); pattern m >= 1 has segments
/// 0..m-2 full, segment m-1 in [0, 1/K] and the rest zero.
struct FillPattern {
  int index = 0;
  int full_segments = 0;
  bool has_partial = false;

  // Bounds the pattern imposes on segment `j` (0-based).
  double SegmentLower(int j, double width) const;
  double SegmentUpper(int j, double width) const;
  // Range of the segment total y covered by the pattern.
  double TotalLower(double width) const { return full_segments * width; }
  double TotalUpper(double width) const {
    return (full_segments + (has_partial ? 1 : 0)) * width;
  }
};

// All K + 1 fill patterns of a K-segment target.
std::vector<FillPattern> FillOrderPatterns(int segments);

// Pattern index whose range contains `total` (lowest index on boundaries,
// never the empty pattern).
int PatternForTotal(double total, int segments);

}  // namespace gsg
