#pragma once

#include <stdexcept>
#include <string>

namespace hypflow {

/// Invalid caller input (bad exponent, nonpositive time, ...). Maps to CLI exit code 1.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure in a case that should have succeeded: integrator blow-up,
/// quadrature non-convergence for a bounded integral. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypflow
