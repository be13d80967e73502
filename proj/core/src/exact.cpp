#include "pcsrk/exact.hpp"

#include <cmath>
#include <sstream>

#include "pcsrk/errors.hpp"
#include "pcsrk/family_build.hpp"

namespace pcsrk::exact {
namespace {

long long join(long long d1, long long d2) {
  if (d1 == 0) return d2;
  if (d2 == 0) return d1;
  if (d1 == d2) return d1;
  throw ConfigError("QScalar: mixing incompatible quadratic fields sqrt(" + std::to_string(d1) +
                    ") and sqrt(" + std::to_string(d2) + ")");
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

QScalar::QScalar(Rat a, Rat b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 0) throw ConfigError("QScalar: discriminant must be >= 0");
  if (b_ == 0 || d_ == 0) {  // b*sqrt(0) == 0, so canonicalize to a plain rational
    b_ = 0;
    d_ = 0;
  }
}

QScalar QScalar::sqrt_of(long long d) { return QScalar(Rat(0), Rat(1), d); }

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QScalar operator+(const QScalar& x, const QScalar& y) {
  long long d = join(x.d_, y.d_);
  return QScalar(x.a_ + y.a_, x.b_ + y.b_, d);
}

QScalar operator-(const QScalar& x, const QScalar& y) {
  long long d = join(x.d_, y.d_);
  return QScalar(x.a_ - y.a_, x.b_ - y.b_, d);
}

QScalar operator*(const QScalar& x, const QScalar& y) {
  long long d = join(x.d_, y.d_);
  return QScalar(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
}

QScalar QScalar::inverse() const {
  Rat den = a_ * a_ - b_ * b_ * d_;
  if (den == 0) throw ConfigError("QScalar: division by zero");
  return QScalar(a_ / den, -b_ / den, d_);
}

QScalar operator/(const QScalar& x, const QScalar& y) { return x * y.inverse(); }

bool operator==(const QScalar& x, const QScalar& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.b_ == 0 || x.d_ == y.d_;
}

double QScalar::to_double() const {
  double v = a_.convert_to<double>();
  if (b_ != 0) v += b_.convert_to<double>() * std::sqrt(static_cast<double>(d_));
  return v;
}

std::string QScalar::str() const {
  if (is_rational()) return rat_str(a_);
  std::ostringstream os;
  if (a_ != 0) os << rat_str(a_) << (b_ > 0 ? " + " : " - ");
  else if (b_ < 0) os << "-";
  Rat ab = b_ < 0 ? Rat(-b_) : b_;
  if (ab != 1) os << rat_str(ab) << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

Rat rat_of_double(double x) {
  if (!std::isfinite(x)) throw ConfigError("rat_of_double: non-finite value");
  // decompose x = m * 2^e with integral m
  int e = 0;
  double m = std::frexp(x, &e);
  m = std::ldexp(m, 53);
  e -= 53;
  auto mi = boost::multiprecision::cpp_int(static_cast<long long>(m));
  Rat r(mi);
  if (e >= 0) {
    r *= Rat(boost::multiprecision::pow(boost::multiprecision::cpp_int(2), e));
  } else {
    r /= Rat(boost::multiprecision::pow(boost::multiprecision::cpp_int(2), -e));
  }
  return r;
}

QScalar q_of_double(double x) { return QScalar(rat_of_double(x)); }

const QScalar& QPoly::coeff(int i) const {
  static const QScalar zero;
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[i];
}

void QPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QScalar QPoly::eval(const QScalar& x) const {
  QScalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QScalar QPoly::integral01() const { return shifted_integral01(0); }

QScalar QPoly::shifted_integral01(int k) const {
  QScalar acc;
  for (int i = 0; i < static_cast<int>(c_.size()); ++i)
    acc += c_[i] / QScalar(i + k + 1);
  return acc;
}

QPoly operator+(const QPoly& p, const QPoly& q) {
  std::vector<QScalar> c(std::max(p.c_.size(), q.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = p.coeff(static_cast<int>(i)) + q.coeff(static_cast<int>(i));
  }
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& p, const QPoly& q) {
  if (p.c_.empty() || q.c_.empty()) return QPoly();
  std::vector<QScalar> c(p.c_.size() + q.c_.size() - 1);
  for (size_t i = 0; i < p.c_.size(); ++i)
    for (size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
  return QPoly(std::move(c));
}

QPoly operator*(const QScalar& s, const QPoly& p) {
  std::vector<QScalar> c = p.c_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

ExactFamilyParams optimal_params(const Rat& alpha_tilde) {
  const QScalar r15 = QScalar::sqrt_of(15);
  ExactFamilyParams p;
  p.c1 = QScalar(Rat(1, 2)) - r15 / QScalar(10);
  p.gamma = {QScalar(Rat(10, 3)) - QScalar(Rat(2, 3)) * r15,  //
             QScalar(Rat(23, 2)) - QScalar(2) * r15,          //
             QScalar(Rat(-20, 3)) + QScalar(Rat(2, 3)) * r15, //
             QScalar(Rat(40, 9))};
  p.alpha_tilde = QScalar(alpha_tilde);
  return p;
}

ExactFamilyParams params_from_rational(const Rat& c1, const std::array<Rat, 4>& gamma,
                                       const Rat& alpha_tilde) {
  ExactFamilyParams p;
  p.c1 = QScalar(c1);
  for (int i = 0; i < 4; ++i) p.gamma[i] = QScalar(gamma[i]);
  p.alpha_tilde = QScalar(alpha_tilde);
  return p;
}

std::vector<std::vector<QScalar>> ExactTableau::m_sum() const {
  std::vector<std::vector<QScalar>> r(s, std::vector<QScalar>(s));
  for (const auto& mk : m)
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) r[i][j] += mk[i][j];
  return r;
}

ExactTableau exact_family_tableau(const ExactFamilyParams& p) {
  if (p.alpha_tilde.is_zero()) throw ConfigError("family: alpha_tilde must be nonzero");
  if (p.c1.is_zero() || p.c1 == QScalar(Rat(1, 2)))
    throw ConfigError("family: c1 must avoid 0 and 1/2");
  auto ms = detail::family_matrices<QScalar>(p.c1, p.gamma, p.alpha_tilde);
  ExactTableau t;
  t.s = 3;
  t.m.resize(3, std::vector<std::vector<QScalar>>(3, std::vector<QScalar>(3)));
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.m[k][i][j] = ms[k][i][j];
  t.c = {p.c1, QScalar(Rat(1, 2)), QScalar(1) - p.c1};
  return t;
}

ExactTableau exact_avf2() {
  ExactTableau t;
  t.s = 1;
  t.m = {{{QScalar(1)}}};
  t.c = {QScalar(Rat(1, 2))};
  return t;
}

ExactTableau exact_avf4() {
  const QScalar r3 = QScalar::sqrt_of(3);
  ExactTableau t;
  t.s = 2;
  t.m.resize(2, std::vector<std::vector<QScalar>>(2, std::vector<QScalar>(2)));
  t.m[0][0][0] = QScalar(2) + r3;
  t.m[0][0][1] = t.m[0][1][0] = -(QScalar(3) + r3);
  t.m[0][1][1] = QScalar(6);
  t.m[1][0][0] = QScalar(2) - r3;
  t.m[1][0][1] = t.m[1][1][0] = r3 - QScalar(3);
  t.m[1][1][1] = QScalar(6);
  t.c = {QScalar(Rat(1, 2)) - r3 / QScalar(6), QScalar(Rat(1, 2)) + r3 / QScalar(6)};
  return t;
}

}  // namespace pcsrk::exact
