#pragma once

#include <array>
#include <cmath>

namespace gsg::detail {

// Exact table up to 15!; log-gamma above.
inline double Factorial(int k) {
  static constexpr std::array<double, 16> kTable = [] {
    std::array<double, 16> t{};
    t[0] = 1.0;
    for (int i = 1; i < 16; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (k < 0) return 0.0;
  if (k < 16) return kTable[k];
  return std::exp(std::lgamma(k + 1.0));
}

inline double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n < 16) return std::round(Factorial(n) / (Factorial(k) * Factorial(n - k)));
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace gsg::detail
