#pragma once

#include <functional>

#include "pcsrk/types.hpp"

namespace pcsrk {

// Quadrature rule on [0,1] with positive weights summing to 1.
struct QuadratureRule {
  Vec nodes;
  Vec weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

// n-point Gauss-Legendre rule mapped to [0,1]; exact for degree <= 2n-1.
// 1 <= n <= 64. Rules are computed once and cached.
const QuadratureRule& gauss_legendre(int n);

// Adaptive vector quadrature over [0,1]: evaluate with n and 2n Gauss-Legendre
// points, accept when the max-norm difference is <= tol. Doubles from n0
// (default 8) up to the cap (default 64); throws QuadratureError with the last
// gap when the cap is reached. Returns the finer estimate.
Vec integrate_vec(const std::function<Vec(double)>& f, double tol, int n0 = 8, int cap = 64);

}  // namespace pcsrk
