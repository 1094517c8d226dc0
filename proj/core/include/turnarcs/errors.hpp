#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace turnarcs {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A model violated one of its parameter constraints. Carries every violated
// constraint, not just the first one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A structurally valid model produced an unusable object at run time, e.g. an
// indefinite Schoenberg matrix.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature did not reach its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double error_estimate);

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace turnarcs
