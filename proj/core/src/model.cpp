#include "pcsrk/model.hpp"

#include <cmath>
#include <random>

#include "pcsrk/errors.hpp"

namespace pcsrk {

PoissonSystem lotka_volterra(double a, double b, double c, double nu, double mu) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(nu) &&
        std::isfinite(mu)))
    throw ConfigError("lotka_volterra: parameters must be finite");

  auto guard = [](const Vec& y) {
    if (y.size() != 3) throw ConfigError("lotka_volterra: state dimension must be 3");
    if (!(y[1] > 0.0) || !(y[2] > 0.0))
      throw DomainError("lotka_volterra: state requires y2 > 0 and y3 > 0");
  };

  PoissonSystem sys;
  sys.dim = 3;
  sys.name = "lotka-volterra";
  sys.s_matrix = [=](const Vec& y) {
    guard(y);
    Mat S(3, 3);
    S << 0.0, c * y[0] * y[1], b * c * y[0] * y[2],  //
        -c * y[0] * y[1], 0.0, -y[1] * y[2],         //
        -b * c * y[0] * y[2], y[1] * y[2], 0.0;
    return S;
  };
  sys.grad_h = [=](const Vec& y) {
    guard(y);
    Vec g(3);
    g << a * b, 1.0 + nu / y[1], -a - mu / y[2];
    return g;
  };
  sys.energy = [=](const Vec& y) {
    guard(y);
    return a * b * y[0] + y[1] - a * y[2] + nu * std::log(y[1]) - mu * std::log(y[2]);
  };
  sys.hess_h = [=](const Vec& y) {
    guard(y);
    Mat Hm = Mat::Zero(3, 3);
    Hm(1, 1) = -nu / (y[1] * y[1]);
    Hm(2, 2) = mu / (y[2] * y[2]);
    return Hm;
  };

  // Casimir candidate C(y) = ab ln y1 - b ln y2 + ln y3. grad C spans ker S
  // only when a*b*c = -1; verify before registering.
  auto casimir = [=](const Vec& y) {
    guard(y);
    if (!(y[0] > 0.0)) throw DomainError("casimir: state requires y1 > 0");
    return a * b * std::log(y[0]) - b * std::log(y[1]) + std::log(y[2]);
  };
  auto grad_c = [=](const Vec& y) {
    Vec g(3);
    g << a * b / y[0], -b / y[1], 1.0 / y[2];
    return g;
  };
  std::mt19937 rng(20240517u);
  std::uniform_real_distribution<double> unif(0.1, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec y(3);
    y << unif(rng), unif(rng), unif(rng);
    Vec gh = sys.grad_h(y);
    double val = std::abs(grad_c(y).dot(sys.s_matrix(y) * gh)) / gh.norm();
    worst = std::max(worst, val);
  }
  if (worst > 1e-10)
    throw ConfigError(
        "lotka_volterra: Casimir candidate rejected (grad C^T S grad H residual " +
        std::to_string(worst) + "); requires a*b*c = -1");
  sys.invariants.emplace_back("casimir", casimir);
  return sys;
}

PoissonSystem constant_s_quadratic(const Mat& S, const Mat& A, const Vec& b) {
  const auto d = S.rows();
  if (S.cols() != d || A.rows() != d || A.cols() != d || b.size() != d)
    throw ConfigError("constant_s_quadratic: dimension mismatch");
  double scale_s = std::max(1.0, S.cwiseAbs().maxCoeff());
  double scale_a = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((S + S.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale_s)
    throw ConfigError("constant_s_quadratic: S must be skew-symmetric");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale_a)
    throw ConfigError("constant_s_quadratic: A must be symmetric");

  PoissonSystem sys;
  sys.dim = static_cast<int>(d);
  sys.name = "quadratic";
  Mat Sc = S, Ac = A;
  Vec bc = b;
  sys.s_matrix = [Sc](const Vec&) { return Sc; };
  sys.grad_h = [Ac, bc](const Vec& y) { return Vec(Ac * y + bc); };
  sys.energy = [Ac, bc](const Vec& y) { return 0.5 * y.dot(Ac * y) + bc.dot(y); };
  sys.hess_h = [Ac](const Vec&) { return Ac; };
  return sys;
}

Mat fd_hessian(const PoissonSystem& sys, const Vec& y, double step) {
  if (!(step > 0)) throw ConfigError("fd_hessian: step must be positive");
  const int d = sys.dim;
  Mat F(d, d);
  for (int j = 0; j < d; ++j) {
    Vec yp = y, ym = y;
    yp[j] += step;
    ym[j] -= step;
    Vec gp = sys.grad_h(yp), gm = sys.grad_h(ym);
    if (!gp.allFinite() || !gm.allFinite())
      throw DomainError("fd_hessian: non-finite gradient evaluation");
    F.col(j) = (gp - gm) / (2.0 * step);
  }
  return 0.5 * (F + F.transpose());
}

double fd_default_step(const Vec& y) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) *
         std::max(1.0, y.lpNorm<Eigen::Infinity>());
}

}  // namespace pcsrk
