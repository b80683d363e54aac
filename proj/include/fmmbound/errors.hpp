#pragma once

#include <stdexcept>
#include <string>

namespace fmmbound {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Harmonic index with |m| > n or a negative degree.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Evaluation at a pole of the Laplace kernel or an irregular harmonic.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Expansion balls, centers, or targets that violate a validity region.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IterationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or report file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fmmbound
