#pragma once

#include <stdexcept>
#include <string>

namespace gsg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration guard (2^|V|, C(|X|, k), ...) would be exceeded.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// An iterative method stopped before reaching its tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// A linear program reported infeasible or unbounded where a solution was
// required.
class LpError : public Error {
 public:
  using Error::Error;
};

}  // namespace gsg
