#include "pcsrk/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcsrk/errors.hpp"
#include "pcsrk/exact.hpp"
#include "pcsrk/family_build.hpp"

namespace pcsrk {
namespace {

using exact::Rat;

// --- small dense polynomial helpers (ascending coefficients) ---------------

using Poly = std::vector<double>;

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_pow(const Poly& a, int n) {
  Poly r{1.0};
  for (int i = 0; i < n; ++i) r = poly_mul(r, a);
  return r;
}

double poly_eval(const Poly& a, double x) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// int_0^1 x^shift p(x) dx
double poly_int01(const Poly& a, int shift = 0) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] / static_cast<double>(i + shift + 1);
  return acc;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// r(tau) = (tau, tau^2/2, ..., tau^s/s)
Vec r_vec(int s, double tau) {
  Vec r(s);
  double p = 1.0;
  for (int k = 1; k <= s; ++k) {
    p *= tau;
    r(k - 1) = p / k;
  }
  return r;
}

// v(zeta) = (1, zeta, ..., zeta^{s-1})
Vec v_vec(int s, double zeta) {
  Vec v(s);
  double p = 1.0;
  for (int k = 0; k < s; ++k) {
    v(k) = p;
    p *= zeta;
  }
  return v;
}

double kernel_a(const PcsrkTableau& t, double tau, int j, double zeta) {
  return r_vec(t.s, tau).dot(t.m_list[j - 1] * v_vec(t.s, zeta));
}

// Coefficients of the Lagrange basis polynomial attached to nodes[idx].
template <class T>
std::vector<T> lagrange_coeffs(const std::vector<T>& nodes, size_t idx) {
  std::vector<T> coeffs{T(1)};
  T denom(1);
  for (size_t m = 0; m < nodes.size(); ++m) {
    if (m == idx) continue;
    std::vector<T> next(coeffs.size() + 1, T(0));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= coeffs[i] * nodes[m];
    }
    coeffs = std::move(next);
    denom *= nodes[idx] - nodes[m];
  }
  for (auto& a : coeffs) a /= denom;
  return coeffs;
}

// Exact rational characteristic polynomial det(lambda I - E), ascending,
// monic, assembled from the binary-rational tableau entries.
std::vector<Rat> exact_char_poly(const PcsrkTableau& t) {
  const int s = t.s;
  std::vector<Rat> c(s);
  for (int i = 0; i < s; ++i) c[i] = exact::rat_of_double(t.c(i));
  std::vector<std::vector<Rat>> m(s, std::vector<Rat>(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m[i][j] = exact::rat_of_double(t.m_sum(i, j));

  std::vector<Rat> nodes(s + 1, Rat(0));
  for (int i = 0; i < s; ++i) nodes[i + 1] = c[i];

  std::vector<std::vector<Rat>> e(s, std::vector<Rat>(s, Rat(0)));
  for (int j = 0; j < s; ++j) {
    auto lj = lagrange_coeffs(nodes, static_cast<size_t>(j + 1));
    std::vector<Rat> mom(s, Rat(0));
    for (int k = 0; k < s; ++k)
      for (size_t i = 0; i < lj.size(); ++i) mom[k] += lj[i] / Rat(i + k + 1);
    for (int i = 0; i < s; ++i) {
      Rat pw = 1;
      std::vector<Rat> r(s);
      for (int a = 0; a < s; ++a) {
        pw *= c[i];
        r[a] = pw / Rat(a + 1);
      }
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) e[i][j] += r[a] * m[a][b] * mom[b];
    }
  }

  if (s == 1) return {-e[0][0], Rat(1)};
  if (s == 2) {
    Rat tr = e[0][0] + e[1][1];
    Rat det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    return {det, -tr, Rat(1)};
  }
  if (s == 3) {
    Rat tr = e[0][0] + e[1][1] + e[2][2];
    Rat m2 = e[0][0] * e[1][1] - e[0][1] * e[1][0] + e[0][0] * e[2][2] - e[0][2] * e[2][0] +
             e[1][1] * e[2][2] - e[1][2] * e[2][1];
    Rat det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
              e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
              e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
    return {-det, m2, -tr, Rat(1)};
  }
  throw ConfigError("char_poly: only degrees s <= 3 are supported");
}

std::vector<std::complex<double>> char_roots(const std::vector<Rat>& cp) {
  const int s = static_cast<int>(cp.size()) - 1;
  auto d = [](const Rat& r) { return r.convert_to<double>(); };
  if (s == 1) return {{-d(cp[0]), 0.0}};
  if (s == 2) {
    Rat tr = -cp[1], det = cp[0];
    Rat disc = tr * tr - Rat(4) * det;
    double trd = d(tr);
    if (disc > 0) {
      double sq = std::sqrt(d(disc));
      double r1 = trd >= 0 ? (trd + sq) / 2 : (trd - sq) / 2;
      double r2 = r1 != 0.0 ? d(det) / r1 : 0.0;
      return {{std::min(r1, r2), 0.0}, {std::max(r1, r2), 0.0}};
    }
    if (disc == 0) return {{trd / 2, 0.0}, {trd / 2, 0.0}};
    double im = std::sqrt(-d(disc)) / 2;
    return {{trd / 2, -im}, {trd / 2, im}};
  }
  // s == 3: depressed cubic x = lambda - tr/3, x^3 + p x + q = 0
  Rat tr = -cp[2], m2 = cp[1], det = -cp[0];
  Rat p = m2 - tr * tr / Rat(3);
  Rat q = Rat(-2) * tr * tr * tr / Rat(27) + tr * m2 / Rat(3) - det;
  Rat disc = Rat(-4) * p * p * p - Rat(27) * q * q;  // > 0 iff three distinct real roots
  double pd = d(p), qd = d(q), sh = d(tr) / 3;
  if (disc > 0) {
    const double pi = std::acos(-1.0);
    double m = 2.0 * std::sqrt(-pd / 3.0);
    double theta = std::acos(std::clamp(3.0 * qd / (pd * m), -1.0, 1.0)) / 3.0;
    std::vector<double> xs(3);
    for (int k = 0; k < 3; ++k) xs[k] = m * std::cos(theta - 2.0 * pi * k / 3.0) + sh;
    std::sort(xs.begin(), xs.end());
    return {{xs[0], 0.0}, {xs[1], 0.0}, {xs[2], 0.0}};
  }
  if (disc == 0) {
    if (p == 0) return {{sh, 0.0}, {sh, 0.0}, {sh, 0.0}};  // triple root
    double u = -3.0 * qd / (2.0 * pd);                     // double root u, simple -2u
    std::vector<double> xs{u + sh, u + sh, -2.0 * u + sh};
    std::sort(xs.begin(), xs.end());
    return {{xs[0], 0.0}, {xs[1], 0.0}, {xs[2], 0.0}};
  }
  // one real root + complex pair (Cardano, cancellation-free branch)
  double a = -qd / 2.0, b = std::sqrt(qd * qd / 4.0 + pd * pd * pd / 27.0);
  double u = std::cbrt(a >= 0 ? a + b : a - b);
  double v = u != 0.0 ? -pd / (3.0 * u) : 0.0;
  double x1 = u + v;
  double re = -x1 / 2.0 + sh;
  double im = std::sqrt(std::max(3.0 * x1 * x1 + 4.0 * pd, 0.0)) / 2.0;
  std::vector<std::complex<double>> roots{{x1 + sh, 0.0}, {re, -im}, {re, im}};
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

// Unit null vector of (E - lambda I) for real lambda.
Vec null_vector(const Mat& e, double lambda) {
  const int s = static_cast<int>(e.rows());
  Mat a = e - lambda * Mat::Identity(s, s);
  if (s == 1) return Vec::Ones(1);
  if (s == 2) {
    Vec cand1(2), cand2(2);
    cand1 << a(0, 1), -a(0, 0);
    cand2 << a(1, 1), -a(1, 0);
    Vec best = cand1.norm() >= cand2.norm() ? cand1 : cand2;
    if (best.norm() < 1e-300) return Vec::Unit(2, 0);
    return best / best.norm();
  }
  Eigen::Vector3d r0 = a.row(0), r1 = a.row(1), r2 = a.row(2);
  std::array<Eigen::Vector3d, 3> cands{r0.cross(r1), r0.cross(r2), r1.cross(r2)};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (cands[i].norm() > cands[best].norm()) best = i;
  if (cands[best].norm() < 1e-300) return Vec::Unit(3, 0);
  return cands[best] / cands[best].norm();
}

}  // namespace

// --- construction -----------------------------------------------------------

bool CsrkMatrix::energy_preserving() const {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
}

void FamilyParams::check() const {
  bool finite = std::isfinite(c1) && std::isfinite(alpha_tilde);
  for (double g : gamma) finite = finite && std::isfinite(g);
  if (!finite) throw ConfigError("FamilyParams: all parameters must be finite");
  if (!(c1 > 0.0 && c1 < 0.5))
    throw ConfigError("FamilyParams: c1 must satisfy 0 < c1 < 1/2");
  if (alpha_tilde == 0.0) throw ConfigError("FamilyParams: alpha_tilde must be nonzero");
}

FamilyParams optimal_family_params(double alpha_tilde) {
  const double s15 = std::sqrt(15.0);
  FamilyParams p;
  p.c1 = 0.5 - s15 / 10.0;
  p.gamma = {10.0 / 3.0 - 2.0 * s15 / 3.0, 23.0 / 2.0 - 2.0 * s15,
             -20.0 / 3.0 + 2.0 * s15 / 3.0, 40.0 / 9.0};
  p.alpha_tilde = alpha_tilde;
  p.check();
  return p;
}

CsrkMatrix csrk_alpha_family(double alpha_tilde) {
  if (!std::isfinite(alpha_tilde) || alpha_tilde == 0.0)
    throw ConfigError("csrk_alpha_family: alpha_tilde must be finite and nonzero");
  auto m = detail::csrk_alpha_m(alpha_tilde);
  CsrkMatrix r;
  r.s = 3;
  r.m.resize(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m(i, j) = m[i][j];
  return r;
}

PcsrkTableau classic_tableau(ClassicKind kind) {
  PcsrkTableau t;
  if (kind == ClassicKind::avf2) {
    t.s = 1;
    t.m_list = {Mat::Ones(1, 1)};
    t.c = Vec::Constant(1, 0.5);
    t.m_sum = t.m_list[0];
    t.name = "avf2";
    return t;
  }
  const double s3 = std::sqrt(3.0);
  Mat m1(2, 2), m2(2, 2);
  m1 << 2.0 + s3, -(3.0 + s3), -(3.0 + s3), 6.0;
  m2 << 2.0 - s3, s3 - 3.0, s3 - 3.0, 6.0;
  t.s = 2;
  t.m_list = {m1, m2};
  t.c = Vec(2);
  t.c << 0.5 - s3 / 6.0, 0.5 + s3 / 6.0;
  t.m_sum = t.m_list[0] + t.m_list[1];
  t.name = "avf4";
  return t;
}

PcsrkTableau fourth_order_family(const FamilyParams& p) {
  p.check();
  auto ms = detail::family_matrices<double>(p.c1, p.gamma, p.alpha_tilde);
  PcsrkTableau t;
  t.s = 3;
  t.m_list.resize(3);
  for (int k = 0; k < 3; ++k) {
    t.m_list[k].resize(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.m_list[k](i, j) = ms[k][i][j];
  }
  t.c = Vec(3);
  t.c << p.c1, 0.5, 1.0 - p.c1;
  t.m_sum = t.m_list[0] + t.m_list[1] + t.m_list[2];
  t.params = p;
  t.name = "family";
  return t;
}

// --- validation -------------------------------------------------------------

bool ValidationReport::all_applicable_passed() const {
  for (const auto& e : entries)
    if (e.applicable && !e.pass) return false;
  return true;
}

double ValidationReport::max_residual() const {
  double r = 0.0;
  for (const auto& e : entries)
    if (e.applicable) r = std::max(r, e.residual);
  return r;
}

const ValidationEntry* ValidationReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

ValidationReport validate(const PcsrkTableau& t) {
  constexpr double tol = 1e-12;
  const int s = t.s;
  ValidationReport rep;
  auto push = [&rep](std::string name, bool applicable, double residual, std::string note = "") {
    rep.entries.push_back(
        {std::move(name), applicable, applicable && residual <= tol, residual, std::move(note)});
  };
  auto na = [&rep](std::string name, std::string note) {
    rep.entries.push_back({std::move(name), false, false, 0.0, std::move(note)});
  };

  double sym = 0.0;
  for (const auto& m : t.m_list)
    sym = std::max(sym, (m - m.transpose()).cwiseAbs().maxCoeff());
  push("method1-1", true, sym, "each M_i symmetric");

  if (s == 3) {
    double at = t.params ? t.params->alpha_tilde : t.m_sum(2, 2) / 36.0;
    if (at != 0.0) {
      double alpha = (1.0 / at + 7.0) / 36.0;
      Mat h(3, 3);
      h << 1.0, 0.5, 1.0 / 3.0, 0.5, 1.0 / 3.0, 0.25, 1.0 / 3.0, 0.25, alpha;
      push("method1-2", true, (h * t.m_sum - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
           "order-4 identity for M1+M2+M3");
    } else {
      na("method1-2", "cannot infer alpha (M sum has zero corner)");
    }
    Mat pm(3, 3);
    pm << 1, 1, 1, 0, -1, -2, 0, 0, 1;
    push("method1-3", true,
         (pm * t.m_list[2] * pm.transpose() - t.m_list[0]).cwiseAbs().maxCoeff(),
         "reflection P M3 P^T = M1");
  } else {
    na("method1-2", "needs s=3");
    na("method1-3", "needs s=3");
  }

  double nodesym = 0.0;
  for (int i = 0; i < s; ++i) nodesym = std::max(nodesym, std::abs(t.c(s - 1 - i) + t.c(i) - 1.0));
  push("method1-4", true, nodesym, "c_{s+1-i} + c_i = 1");

  if (s == 3) {
    Vec h3(3);
    h3 << 1.0, 0.5, 1.0 / 3.0;
    Mat x = t.c(0) * t.m_list[0] + t.c(1) * t.m_list[1] + t.c(2) * t.m_list[2];
    Vec lhs = x * h3;
    Vec want(3);
    want << 0.0, 1.0, 0.0;
    push("method1-5", true, (lhs - want).cwiseAbs().maxCoeff(), "weighted C-type identity");

    Mat x2 = t.c(0) * t.c(0) * t.m_list[0] + t.c(1) * t.c(1) * t.m_list[1] +
             t.c(2) * t.c(2) * t.m_list[2];
    push("method1-6", true, std::abs(h3.dot(x2 * h3) - 1.0 / 3.0), "scalar quadratic identity");
  } else {
    na("method1-5", "needs s=3");
    na("method1-6", "needs s=3");
  }

  double ks = 0.0;
  const int grid = 20;
  for (int j = 1; j <= s; ++j)
    for (int a = 0; a <= grid; ++a)
      for (int b = 0; b <= grid; ++b) {
        double tau = static_cast<double>(a) / grid, zeta = static_cast<double>(b) / grid;
        double res = kernel_a(t, 1.0 - tau, s + 1 - j, 1.0 - zeta) + kernel_a(t, tau, j, zeta) -
                     kernel_a(t, 1.0, j, zeta);
        ks = std::max(ks, std::abs(res));
      }
  push("kernel-symmetry", true, ks, "A_{1-tau,s+1-j,1-zeta} + A_{tau,j,zeta} = B_{j,zeta}");

  return rep;
}

double kernel_symmetry_coefficient_residual(const PcsrkTableau& t) {
  const int s = t.s;
  double worst = 0.0;
  for (int j = 1; j <= s; ++j) {
    // coefficient of tau^p zeta^q, p in 0..s, q in 0..s-1
    Mat coef = Mat::Zero(s + 1, s);
    const Mat& mj = t.m_list[j - 1];
    const Mat& mr = t.m_list[s - j];  // M_{s+1-j}
    for (int k = 1; k <= s; ++k)
      for (int l = 1; l <= s; ++l) {
        coef(k, l - 1) += mj(k - 1, l - 1) / k;     // A_{tau,j,zeta}
        coef(0, l - 1) -= mj(k - 1, l - 1) / k;     // -B_{j,zeta}
        for (int p = 0; p <= k; ++p)                // A_{1-tau,s+1-j,1-zeta}
          for (int q = 0; q <= l - 1; ++q) {
            double sgn = ((p + q) % 2 == 0) ? 1.0 : -1.0;
            coef(p, q) += sgn * binom(k, p) * binom(l - 1, q) * mr(k - 1, l - 1) / k;
          }
      }
    worst = std::max(worst, coef.cwiseAbs().maxCoeff());
  }
  return worst;
}

double simplifying_residual(const PcsrkTableau& t, SimplifyingKind kind, int k, int l) {
  if (k < 1 || l < 0 || l > k - 1)
    throw ConfigError("simplifying_residual: need k >= 1 and 0 <= l <= k-1");
  const int s = t.s;
  const int grid = 20;

  // C(tau) = sum_j int_0^1 A_{tau,j,sigma} dsigma as a polynomial in tau.
  Vec u(s);
  for (int m = 1; m <= s; ++m) u(m - 1) = 1.0 / m;
  Vec mu = t.m_sum * u;
  Poly cpoly(s + 1, 0.0);
  for (int m = 1; m <= s; ++m) cpoly[m] = mu(m - 1) / m;

  Vec chat(s);
  for (int i = 0; i < s; ++i) chat(i) = poly_eval(cpoly, t.c(i));

  // B_{i,tau} coefficients (power tau^0..tau^{s-1}): row r(1)^T M_i.
  Vec r1 = r_vec(s, 1.0);
  std::vector<Poly> bpoly(s);
  for (int i = 0; i < s; ++i) {
    Vec row = t.m_list[i].transpose() * r1;
    bpoly[i].assign(row.data(), row.data() + s);
  }

  const Poly cpow = poly_pow(cpoly, k - 1 - l);
  const double inv_k = 1.0 / k;

  if (kind == SimplifyingKind::B) {
    double val = 0.0;
    for (int i = 0; i < s; ++i)
      val += std::pow(chat(i), l) * poly_int01(poly_mul(bpoly[i], cpow));
    return std::abs(val - inv_k);
  }

  if (kind == SimplifyingKind::C || kind == SimplifyingKind::Chat) {
    // z = sum_j M_j w_j with w_j[m] = chat_j^l int sigma^m C(sigma)^{k-1-l} dsigma
    Vec z = Vec::Zero(s);
    for (int j = 0; j < s; ++j) {
      Vec w(s);
      for (int m = 0; m < s; ++m) w(m) = std::pow(chat(j), l) * poly_int01(cpow, m);
      z += t.m_list[j] * w;
    }
    const Poly rhs = poly_pow(cpoly, k);
    double worst = 0.0;
    if (kind == SimplifyingKind::C) {
      for (int a = 0; a <= grid; ++a) {
        double tau = static_cast<double>(a) / grid;
        double lhs = r_vec(s, tau).dot(z);
        worst = std::max(worst, std::abs(lhs - poly_eval(rhs, tau) * inv_k));
      }
    } else {
      for (int i = 0; i < s; ++i) {
        double lhs = r_vec(s, t.c(i)).dot(z);
        worst = std::max(worst, std::abs(lhs - std::pow(chat(i), k) * inv_k));
      }
    }
    return worst;
  }

  // D / Dhat: q^T M_j v(sigma) = B_{j,sigma} (1 - chat_j^k)/k
  Vec q = Vec::Zero(s);
  for (int i = 0; i < s; ++i) {
    const Poly bc = poly_mul(bpoly[i], cpow);
    const double wi = std::pow(chat(i), l);
    if (kind == SimplifyingKind::D) {
      for (int m = 1; m <= s; ++m) q(m - 1) += wi * poly_int01(bc, m) / m;
    } else {
      q += wi * poly_int01(bc) * r_vec(s, t.c(i));
    }
  }
  double worst = 0.0;
  for (int j = 0; j < s; ++j) {
    Vec lhs_row = t.m_list[j].transpose() * q;  // coefficients in sigma
    Poly lhs(lhs_row.data(), lhs_row.data() + s);
    double scale = (1.0 - std::pow(chat(j), k)) * inv_k;
    for (int a = 0; a <= grid; ++a) {
      double sigma = static_cast<double>(a) / grid;
      worst =
          std::max(worst, std::abs(poly_eval(lhs, sigma) - poly_eval(bpoly[j], sigma) * scale));
    }
  }
  return worst;
}

// --- spectrum ---------------------------------------------------------------

Vec char_poly_coefficients(const PcsrkTableau& t) {
  auto cp = exact_char_poly(t);
  Vec out(cp.size());
  for (size_t i = 0; i < cp.size(); ++i) out(i) = cp[i].convert_to<double>();
  return out;
}

SpectralData e_matrix(const PcsrkTableau& t) {
  const int s = t.s;
  if (s < 1 || s > 3) throw ConfigError("e_matrix: only degrees s <= 3 are supported");

  SpectralData sd;
  // double-precision E for the solver
  std::vector<double> nodes(s + 1, 0.0);
  for (int i = 0; i < s; ++i) nodes[i + 1] = t.c(i);
  sd.e.resize(s, s);
  for (int j = 0; j < s; ++j) {
    auto lj = lagrange_coeffs(nodes, static_cast<size_t>(j + 1));
    Vec mom(s);
    for (int kk = 0; kk < s; ++kk) mom(kk) = poly_int01(lj, kk);
    Vec col = t.m_sum * mom;
    for (int i = 0; i < s; ++i) sd.e(i, j) = r_vec(s, t.c(i)).dot(col);
  }

  auto roots = char_roots(exact_char_poly(t));
  sd.eigenvalues.resize(s);
  for (int i = 0; i < s; ++i) sd.eigenvalues(i) = roots[i];

  bool all_real = true;
  for (const auto& z : roots) all_real = all_real && z.imag() == 0.0;

  sd.t = Mat::Identity(s, s);
  sd.t_inv = Mat::Identity(s, s);
  sd.real_distinct = false;
  sd.condition_estimate = 1.0;
  if (!all_real) return sd;

  Mat tm(s, s);
  for (int i = 0; i < s; ++i) tm.col(i) = null_vector(sd.e, roots[i].real());
  Eigen::JacobiSVD<Mat> svd(tm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues()(s - 1), smax = svd.singularValues()(0);
  sd.condition_estimate = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j)
      gap = std::min(gap, std::abs(roots[i].real() - roots[j].real()));
  double enorm = sd.e.cwiseAbs().rowwise().sum().maxCoeff();
  bool gaps_ok = s == 1 || gap > 1e-9 * enorm;

  if (gaps_ok && sd.condition_estimate <= 1e8) {
    sd.real_distinct = true;
    sd.t = tm;
    sd.t_inv = tm.inverse();
  }
  return sd;
}

bool is_parallelizable(double alpha_tilde) {
  const double threshold = std::cbrt(4.0) / 6.0 + 5.0 * std::cbrt(2.0) / 24.0 + 0.25;
  return -alpha_tilde / 300.0 > threshold;
}

Vec dense_weights(const Vec& c, double tau) {
  const int s = static_cast<int>(c.size());
  std::vector<double> nodes(s + 1, 0.0);
  for (int i = 0; i < s; ++i) nodes[i + 1] = c(i);
  Vec w(s + 1);
  for (int j = 0; j <= s; ++j) {
    double num = 1.0, den = 1.0;
    for (int m = 0; m <= s; ++m) {
      if (m == j) continue;
      num *= tau - nodes[m];
      den *= nodes[j] - nodes[m];
    }
    w(j) = num / den;
  }
  return w;
}

}  // namespace pcsrk
