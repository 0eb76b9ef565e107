#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gsqg {

/// Parameter outside its admissible domain (alpha, d, m, truncation, grid...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sampling grid too coarse for the requested truncation.
class AliasingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Radius function R = 1 + delta f not positive, or curves that cross.
class DegenerateBoundary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First sine coefficient of the speed term vanishes; speed cannot be eliminated.
class SingularElimination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration failed; carries the residual history for diagnosis.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double eps, std::vector<double> history)
      : std::runtime_error(what), eps_(eps), history_(std::move(history)) {}
  double eps() const noexcept { return eps_; }
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  double eps_;
  std::vector<double> history_;
};

}  // namespace gsqg
