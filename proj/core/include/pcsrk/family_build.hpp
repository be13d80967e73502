#pragma once

// Generic construction of the fourth-order family matrices, shared by the
// double-precision tableau builder and the exact oracle. T needs int
// construction and field arithmetic.

#include <array>

namespace pcsrk::detail {

template <class T>
using M3 = std::array<std::array<T, 3>, 3>;

template <class T>
M3<T> m3_from_int(const std::array<std::array<int, 3>, 3>& a) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = T(a[i][j]);
  return r;
}

template <class T>
M3<T> m3_add(const M3<T>& x, const M3<T>& y) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = x[i][j] + y[i][j];
  return r;
}

template <class T>
M3<T> m3_sub(const M3<T>& x, const M3<T>& y) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = x[i][j] - y[i][j];
  return r;
}

template <class T>
M3<T> m3_scale(const T& s, const M3<T>& x) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = s * x[i][j];
  return r;
}

template <class T>
M3<T> m3_mul(const M3<T>& x, const M3<T>& y) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T acc = T(0);
      for (int k = 0; k < 3; ++k) acc += x[i][k] * y[k][j];
      r[i][j] = acc;
    }
  return r;
}

template <class T>
M3<T> m3_transpose(const M3<T>& x) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = x[j][i];
  return r;
}

// The symmetric order-4 CSRK matrix M(alpha~).
template <class T>
M3<T> csrk_alpha_m(const T& at) {
  M3<T> m;
  m[0][0] = at + T(4);
  m[0][1] = m[1][0] = T(-6) * at - T(6);
  m[0][2] = m[2][0] = T(6) * at;
  m[1][1] = T(36) * at + T(12);
  m[1][2] = m[2][1] = T(-36) * at;
  m[2][2] = T(36) * at;
  return m;
}

// M3 = base(c1) + sum gamma_i G_i; M1 = P M3 P^T; M2 = M(alpha~) - M1 - M3.
// Returns {M1, M2, M3}. Nodes are (c1, 1/2, 1-c1).
template <class T>
std::array<M3<T>, 3> family_matrices(const T& c1, const std::array<T, 4>& gamma, const T& at) {
  static const std::array<std::array<int, 3>, 3> g1 = {{{1, -3, 3}, {-3, 0, 0}, {3, 0, 0}}};
  static const std::array<std::array<int, 3>, 3> g2 = {{{1, -2, 0}, {-2, 4, 0}, {0, 0, 0}}};
  static const std::array<std::array<int, 3>, 3> g3 = {{{3, -5, 0}, {-5, 0, 6}, {0, 6, 0}}};
  static const std::array<std::array<int, 3>, 3> g4 = {{{2, -3, 0}, {-3, 0, 0}, {0, 0, 9}}};
  static const std::array<std::array<int, 3>, 3> pm = {{{1, 1, 1}, {0, -1, -2}, {0, 0, 1}}};

  const T w = T(2) * c1 - T(1);
  M3<T> m3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m3[i][j] = T(0);
  m3[0][0] = T(1) / (T(6) * w * w) + T(1) / w;
  m3[0][1] = m3[1][0] = T(0) - T(1) / w;

  const std::array<std::array<std::array<int, 3>, 3>, 4> gs = {g1, g2, g3, g4};
  for (int k = 0; k < 4; ++k) m3 = m3_add(m3, m3_scale(gamma[k], m3_from_int<T>(gs[k])));

  const M3<T> p = m3_from_int<T>(pm);
  const M3<T> m1 = m3_mul(m3_mul(p, m3), m3_transpose(p));
  const M3<T> m2 = m3_sub(m3_sub(csrk_alpha_m(at), m1), m3);
  return {m1, m2, m3};
}

}  // namespace pcsrk::detail
