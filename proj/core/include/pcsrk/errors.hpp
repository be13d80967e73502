#pragma once

#include <stdexcept>
#include <string>

namespace pcsrk {

// Invalid parameters, malformed tableaux, inconsistent experiment configs.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside a problem's domain (e.g. log of a non-positive state).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature hit its node cap without meeting the tolerance.
// Carries the last estimate's max-norm gap so callers can report it.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double gap_) : std::runtime_error(msg), gap(gap_) {}
  double gap;
};

// Newton iteration failed: divergence, max iterations, or a defective
// spectrum when the block solver was forced.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pcsrk
