#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pcsrk/exact.hpp"
#include "pcsrk/tableau.hpp"

using namespace pcsrk;
using exact::QPoly;
using exact::QScalar;
using exact::Rat;

TEST_CASE("QScalar arithmetic in a quadratic field") {
  QScalar r15 = QScalar::sqrt_of(15);
  CHECK((r15 * r15) == QScalar(15));
  CHECK(((QScalar(1) + r15) * (QScalar(1) - r15)) == QScalar(-14));

  QScalar x = QScalar(2) + r15;  // 2 + sqrt(15)
  CHECK((x * x.inverse()) == QScalar(1));
  CHECK((x / x) == QScalar(1));
  CHECK((-x + x).is_zero());
  CHECK_FALSE(x.is_rational());
  CHECK(QScalar(Rat(5, 72)).is_rational());

  // inverse of 2 + sqrt(15) is (sqrt(15) - 2)/11
  QScalar inv = x.inverse();
  CHECK(inv.rational_part() == Rat(-2, 11));
  CHECK(inv.surd_part() == Rat(1, 11));
  CHECK(x.to_double() == doctest::Approx(2.0 + std::sqrt(15.0)).epsilon(1e-15));
}

TEST_CASE("rat_of_double is digit-exact") {
  CHECK(exact::rat_of_double(0.375) == Rat(3, 8));
  CHECK(exact::rat_of_double(-2.0) == Rat(-2));
  CHECK(exact::rat_of_double(0.0) == Rat(0));
  // 0.1 is a binary rational with denominator 2^55
  CHECK(exact::rat_of_double(0.1) == Rat(Rat(3602879701896397) / Rat(36028797018963968)));
  for (double v : {0.1, 1.0 / 3.0, -0.7225, 1e-9, 123.456}) {
    CHECK(QScalar(exact::rat_of_double(v)).to_double() == v);
    CHECK(exact::q_of_double(v).to_double() == v);
  }
}

TEST_CASE("QPoly evaluation and exact integrals") {
  // p = 1 + 2 sigma + 3 sigma^2
  QPoly p(std::vector<QScalar>{QScalar(1), QScalar(2), QScalar(3)});
  CHECK(p.degree() == 2);
  CHECK(p.eval(QScalar(2)) == QScalar(17));
  CHECK(p.integral01() == QScalar(3));
  CHECK(p.shifted_integral01(1) == QScalar(Rat(23, 12)));

  QPoly q(std::vector<QScalar>{QScalar(1), QScalar(1)});  // 1 + sigma
  QPoly sq = q * q;
  CHECK(sq.degree() == 2);
  CHECK(sq.coeff(0) == QScalar(1));
  CHECK(sq.coeff(1) == QScalar(2));
  CHECK(sq.coeff(2) == QScalar(1));
  CHECK((p + q).eval(QScalar(1)) == QScalar(8));
  CHECK(QPoly().degree() == -1);
}

TEST_CASE("optimal parameters live in Q(sqrt(15))") {
  auto p = exact::optimal_params(Rat(-234));
  CHECK(p.alpha_tilde == QScalar(-234));
  CHECK(p.c1.to_double() == doctest::Approx(0.5 - std::sqrt(15.0) / 10.0).epsilon(1e-15));
  CHECK(p.c1.rational_part() == Rat(1, 2));
  CHECK(p.c1.surd_part() == Rat(-1, 10));
  CHECK(p.c1.discriminant() == 15);
  CHECK(p.gamma[0] == QScalar(Rat(10, 3), Rat(-2, 3), 15));
  CHECK(p.gamma[1] == QScalar(Rat(23, 2), Rat(-2), 15));
  CHECK(p.gamma[2] == QScalar(Rat(-20, 3), Rat(2, 3), 15));
  CHECK(p.gamma[3] == QScalar(Rat(40, 9)));
}

TEST_CASE("exact family tableau satisfies the order identity exactly") {
  auto p = exact::optimal_params(Rat(-234));
  auto tab = exact::exact_family_tableau(p);
  REQUIRE(tab.s == 3);
  REQUIRE(tab.c.size() == 3);
  CHECK(tab.c[1] == QScalar(Rat(1, 2)));
  CHECK((tab.c[0] + tab.c[2]) == QScalar(1));

  // V * (M1+M2+M3) = I with V = [[1,1/2,1/3],[1/2,1/3,1/4],[1/3,1/4,alpha]],
  // alpha = (1/alpha~ + 7)/36, checked in exact arithmetic
  QScalar alpha = (QScalar(-234).inverse() + QScalar(7)) / QScalar(36);
  std::vector<std::vector<QScalar>> V = {
      {QScalar(1), QScalar(Rat(1, 2)), QScalar(Rat(1, 3))},
      {QScalar(Rat(1, 2)), QScalar(Rat(1, 3)), QScalar(Rat(1, 4))},
      {QScalar(Rat(1, 3)), QScalar(Rat(1, 4)), alpha}};
  auto msum = tab.m_sum();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QScalar acc(0);
      for (int k = 0; k < 3; ++k) acc += V[i][k] * msum[k][j];
      CHECK(acc == QScalar(i == j ? 1 : 0));
    }

  // each M_i symmetric, exactly
  for (const auto& m : tab.m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j) CHECK(m[i][j] == m[j][i]);
}

TEST_CASE("exact classic tableaux") {
  auto a2 = exact::exact_avf2();
  REQUIRE(a2.s == 1);
  CHECK(a2.m[0][0][0] == QScalar(1));
  CHECK(a2.c[0] == QScalar(Rat(1, 2)));

  auto a4 = exact::exact_avf4();
  REQUIRE(a4.s == 2);
  QScalar r3 = QScalar::sqrt_of(3);
  CHECK(a4.m[0][0][0] == QScalar(2) + r3);
  CHECK(a4.m[0][0][1] == -(QScalar(3) + r3));
  CHECK(a4.m[0][1][1] == QScalar(6));
  CHECK(a4.m[1][0][0] == QScalar(2) - r3);
  CHECK(a4.m[1][0][1] == r3 - QScalar(3));
  CHECK(a4.m[1][1][1] == QScalar(6));
  CHECK(a4.c[0] + a4.c[1] == QScalar(1));
  // M1 + M2 = [[4,-6],[-6,12]]
  auto msum = a4.m_sum();
  CHECK(msum[0][0] == QScalar(4));
  CHECK(msum[0][1] == QScalar(-6));
  CHECK(msum[1][1] == QScalar(12));
}

TEST_CASE("exact and double tableaux agree entrywise") {
  auto ep = exact::optimal_params(Rat(-234));
  auto et = exact::exact_family_tableau(ep);
  PcsrkTableau dt = fourth_order_family(optimal_family_params(-234.0));
  REQUIRE(dt.s == et.s);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::fabs(dt.c(j) - et.c[j].to_double()) <= 1e-15);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(std::fabs(dt.m_list[j](a, b) - et.m[j][a][b].to_double()) <=
              1e-12 * std::max(1.0, std::fabs(dt.m_list[j](a, b))));
  }
}

TEST_CASE("params_from_rational keeps everything rational") {
  auto p = exact::params_from_rational(Rat(1, 4), {Rat(1), Rat(-2), Rat(1, 2), Rat(3)}, Rat(-10));
  CHECK(p.c1 == QScalar(Rat(1, 4)));
  CHECK(p.alpha_tilde == QScalar(-10));
  auto tab = exact::exact_family_tableau(p);
  for (const auto& m : tab.m)
    for (const auto& row : m)
      for (const auto& v : row) CHECK(v.is_rational());
}
