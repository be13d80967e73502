#include "pcsrk/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "pcsrk/errors.hpp"

namespace pcsrk {
namespace {

// Legendre P_n and P_n' on [-1,1] by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {p0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

QuadratureRule build_rule(int n) {
  // Roots of P_n by Newton from the Chebyshev-like initial guess; weights
  // w = 2 / ((1-x^2) P_n'(x)^2), then affine map [-1,1] -> [0,1].
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, dp] = legendre(n, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 0.5 * w;
  }
  return r;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1 || n > 64) throw ConfigError("gauss_legendre: n must be in [1,64]");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

Vec integrate_vec(const std::function<Vec(double)>& f, double tol, int n0, int cap) {
  if (tol <= 0) throw ConfigError("integrate_vec: tol must be positive");
  auto apply = [&](int n) {
    const QuadratureRule& r = gauss_legendre(n);
    Vec acc = r.weights[0] * f(r.nodes[0]);
    for (int i = 1; i < r.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
    return acc;
  };
  if (2 * n0 > cap) throw ConfigError("integrate_vec: need n0 < cap");
  Vec prev = apply(n0);
  double gap = std::numeric_limits<double>::quiet_NaN();
  for (int n = 2 * n0; n <= cap; n *= 2) {
    Vec cur = apply(n);
    gap = (cur - prev).lpNorm<Eigen::Infinity>();
    if (gap <= tol) return cur;
    prev = cur;
  }
  throw QuadratureError("quadrature not converged at node cap", gap);
}

}  // namespace pcsrk
