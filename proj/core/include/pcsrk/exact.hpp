#pragma once

#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcsrk::exact {

using Rat = boost::multiprecision::cpp_rational;

// Exact scalar in the quadratic field Q(sqrt(D)): value = a + b*sqrt(d) with
// rational a, b and a fixed non-square d >= 0 (d = 0 encodes plain rationals).
// Mixing two different non-zero discriminants is an error; every parameter set
// shipped here lives in a single such field (d = 15 for the optimal family
// parameters, d = 3 for AVF(4), d = 0 for rational parameters).
class QScalar {
 public:
  QScalar() = default;
  QScalar(int v) : a_(v) {}
  QScalar(long long v) : a_(v) {}
  QScalar(Rat v) : a_(std::move(v)) {}
  QScalar(Rat a, Rat b, long long d);
  static QScalar sqrt_of(long long d);

  const Rat& rational_part() const { return a_; }
  const Rat& surd_part() const { return b_; }
  long long discriminant() const { return d_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QScalar operator-() const;
  QScalar inverse() const;
  double to_double() const;
  std::string str() const;

  friend QScalar operator+(const QScalar& x, const QScalar& y);
  friend QScalar operator-(const QScalar& x, const QScalar& y);
  friend QScalar operator*(const QScalar& x, const QScalar& y);
  friend QScalar operator/(const QScalar& x, const QScalar& y);
  friend bool operator==(const QScalar& x, const QScalar& y);
  friend bool operator!=(const QScalar& x, const QScalar& y) { return !(x == y); }
  QScalar& operator+=(const QScalar& y) { return *this = *this + y; }
  QScalar& operator-=(const QScalar& y) { return *this = *this - y; }
  QScalar& operator*=(const QScalar& y) { return *this = *this * y; }
  QScalar& operator/=(const QScalar& y) { return *this = *this / y; }

 private:
  Rat a_ = 0;
  Rat b_ = 0;      // coefficient of sqrt(d_)
  long long d_ = 0;
};

// Exact rational value of a double (every finite double is a binary rational).
Rat rat_of_double(double x);
QScalar q_of_double(double x);

// Dense polynomial with QScalar coefficients, ascending powers.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(QScalar c0) : c_{std::move(c0)} { trim(); }
  explicit QPoly(std::vector<QScalar> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const QScalar& coeff(int i) const;
  QScalar eval(const QScalar& x) const;
  QScalar integral01() const;                 // int_0^1 p
  QScalar shifted_integral01(int k) const;    // int_0^1 sigma^k p(sigma) dsigma

  friend QPoly operator+(const QPoly& p, const QPoly& q);
  friend QPoly operator*(const QPoly& p, const QPoly& q);
  friend QPoly operator*(const QScalar& s, const QPoly& p);

 private:
  void trim();
  std::vector<QScalar> c_;
};

// Family parameters in exact form.
struct ExactFamilyParams {
  QScalar c1;
  std::array<QScalar, 4> gamma;
  QScalar alpha_tilde;
};

// The optimal parameter point: c1 = 1/2 - sqrt(15)/10,
// gamma = (10/3 - 2 sqrt(15)/3, 23/2 - 2 sqrt(15), -20/3 + 2 sqrt(15)/3, 40/9),
// with the caller's alpha_tilde.
ExactFamilyParams optimal_params(const Rat& alpha_tilde);

ExactFamilyParams params_from_rational(const Rat& c1, const std::array<Rat, 4>& gamma,
                                       const Rat& alpha_tilde);

// Exact PCSRK tableau: s matrices M_1..M_s (s x s) and nodes c_1..c_s.
struct ExactTableau {
  int s = 0;
  std::vector<std::vector<std::vector<QScalar>>> m;
  std::vector<QScalar> c;
  std::vector<std::vector<QScalar>> m_sum() const;
};

ExactTableau exact_family_tableau(const ExactFamilyParams& p);
ExactTableau exact_avf2();
ExactTableau exact_avf4();

}  // namespace pcsrk::exact
