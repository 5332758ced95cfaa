#pragma once

#include <stdexcept>
#include <string>

namespace spiralrg {

/// Base for all library errors; `category()` is the machine-readable tag the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}
  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class PivotError : public Error {
 public:
  PivotError(int step, double pivot, const std::string& what)
      : Error("pivot_zero", what), step_(step), pivot_(pivot) {}
  int step() const noexcept { return step_; }
  double pivot() const noexcept { return pivot_; }

 private:
  int step_;
  double pivot_;
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error("division_by_zero", what) {}
};

class NonInvertible : public Error {
 public:
  explicit NonInvertible(const std::string& what) : Error("non_invertible", what) {}
};

class DegenerateBasis : public Error {
 public:
  explicit DegenerateBasis(const std::string& what) : Error("degenerate_basis", what) {}
};

class NoRealRoot : public Error {
 public:
  explicit NoRealRoot(const std::string& what) : Error("no_real_root", what) {}
};

class PrecisionInsufficient : public Error {
 public:
  explicit PrecisionInsufficient(const std::string& what) : Error("precision_insufficient", what) {}
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(double lo, double hi, const std::string& what)
      : Error("convergence_failure", what), lo_(lo), hi_(hi) {}
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace spiralrg
