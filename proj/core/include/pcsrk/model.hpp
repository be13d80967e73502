#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pcsrk/types.hpp"

namespace pcsrk {

// Poisson system dy/dt = S(y) grad H(y) with skew-symmetric S. Evaluation
// functions are pure and safe to call concurrently. hess_h may be empty, in
// which case callers fall back to fd_hessian. invariants holds extra monitored
// quantities (e.g. a Casimir) as (name, function) pairs.
struct PoissonSystem {
  int dim = 0;
  std::string name;
  std::function<Mat(const Vec&)> s_matrix;
  std::function<Vec(const Vec&)> grad_h;
  std::function<double(const Vec&)> energy;
  std::function<Mat(const Vec&)> hess_h;  // optional
  std::vector<std::pair<std::string, std::function<double(const Vec&)>>> invariants;
};

// The 3-d Lotka-Volterra Poisson system:
//   S(y) = [[0, c y1 y2, b c y1 y3], [-c y1 y2, 0, -y2 y3], [-b c y1 y3, y2 y3, 0]]
//   H(y) = a b y1 + y2 - a y3 + nu ln y2 - mu ln y3
// States require y2 > 0 and y3 > 0; evaluation outside the domain throws
// DomainError. Registers the invariant "casimir",
//   C(y) = a b ln y1 - b ln y2 + ln y3,
// which is a Casimir of S iff a*b*c = -1; the constructor verifies
// |grad C^T S grad H| / ||grad H|| <= 1e-10 over 100 random positive states
// and throws ConfigError if the candidate fails.
PoissonSystem lotka_volterra(double a = -2.0, double b = -1.0, double c = -0.5, double nu = 1.0,
                             double mu = 2.0);

// Constant-structure quadratic system: H(y) = y^T A y / 2 + b^T y with constant
// skew S. Rejects non-skew S or non-symmetric A (tolerance 1e-14).
PoissonSystem constant_s_quadratic(const Mat& S, const Mat& A, const Vec& b);

// Symmetrized central difference of grad_h; the result is exactly symmetric.
Mat fd_hessian(const PoissonSystem& sys, const Vec& y, double step);

// Default finite-difference step: cbrt(eps) * max(1, ||y||_inf).
double fd_default_step(const Vec& y);

}  // namespace pcsrk
