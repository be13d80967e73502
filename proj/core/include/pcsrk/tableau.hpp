#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pcsrk/types.hpp"

namespace pcsrk {

// Degree-s CSRK method identified with its matrix M through
//   A_{tau,zeta} = [tau, tau^2/2, ..., tau^s/s] M [1, zeta, ..., zeta^{s-1}]^T,
// with B_zeta = A_{1,zeta}.
struct CsrkMatrix {
  int s = 0;
  Mat m;
  bool energy_preserving() const;  // ||M - M^T||_inf <= 1e-12
};

// Free parameters of the fourth-order three-stage partitioned family.
struct FamilyParams {
  double c1 = 0.0;
  std::array<double, 4> gamma{};
  double alpha_tilde = 0.0;

  double alpha() const { return (1.0 / alpha_tilde + 7.0) / 36.0; }
  void check() const;  // throws ConfigError unless 0 < c1 < 1/2, alpha_tilde != 0, all finite
};

// The distinguished parameter point c1 = 1/2 - sqrt(15)/10,
// gamma = (10/3 - 2 sqrt(15)/3, 23/2 - 2 sqrt(15), -20/3 + 2 sqrt(15)/3, 40/9),
// which clears every order-5 coefficient that the free parameters can reach.
FamilyParams optimal_family_params(double alpha_tilde);

// Partitioned CSRK tableau: kernel matrices M_1..M_s and nodes c_1..c_s, with
//   A_{tau,j,zeta} = [tau, ..., tau^s/s] M_j [1, ..., zeta^{s-1}]^T,
//   B_{j,zeta} = A_{1,j,zeta}.
struct PcsrkTableau {
  int s = 0;
  std::vector<Mat> m_list;
  Vec c;
  Mat m_sum;  // elementwise sum of m_list
  std::optional<FamilyParams> params;
  std::string name;
};

enum class ClassicKind { avf2, avf4 };

// The symmetric 3x3 matrix M(alpha~) of the fourth-order CSRK family:
// rows (a+4, -6a-6, 6a), (-6a-6, 36a+12, -36a), (6a, -36a, 36a) with a = alpha~.
CsrkMatrix csrk_alpha_family(double alpha_tilde);

// avf2: s=1, M=[1], c=(1/2) -- the averaged-vector-field midpoint extension.
// avf4: s=2 with the fourth-order pair
//   M1 = [[2+sqrt 3, -(3+sqrt 3)], [-(3+sqrt 3), 6]],
//   M2 = [[2-sqrt 3, sqrt 3 - 3], [sqrt 3 - 3, 6]], c = (1/2 -+ sqrt(3)/6).
PcsrkTableau classic_tableau(ClassicKind kind);

// s=3 family member: c = (c1, 1/2, 1-c1); M3 = base(c1) + sum_i gamma_i G_i;
// M1 = P M3 P^T; M2 = M(alpha~) - M1 - M3. Each M_i symmetric by construction.
PcsrkTableau fourth_order_family(const FamilyParams& p);

struct ValidationEntry {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double residual = 0.0;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool all_applicable_passed() const;
  double max_residual() const;  // over applicable entries
  const ValidationEntry* find(const std::string& name) const;
};

// Structural checks, one named entry each (residual threshold 1e-12):
//   method1-1  each M_i symmetric
//   method1-2  [[1,1/2,1/3],[1/2,1/3,1/4],[1/3,1/4,alpha]] (M1+M2+M3) = I
//   method1-3  P M3 P^T = M1
//   method1-4  c_{s+1-i} + c_i = 1
//   method1-5  (c1 M1 + c2 M2 + c3 M3)[1,1/2,1/3]^T = (0,1,0)^T
//   method1-6  [1,1/2,1/3](c1^2 M1 + c2^2 M2 + c3^2 M3)[1,1/2,1/3]^T = 1/3
//   kernel-symmetry  A_{1-tau,s+1-j,1-zeta} + A_{tau,j,zeta} = B_{j,zeta} on a grid
// Entries that need s=3 are marked not applicable for other degrees.
ValidationReport validate(const PcsrkTableau& t);

// Max |coefficient| of A_{1-tau,s+1-j,1-zeta} + A_{tau,j,zeta} - B_{j,zeta}
// expanded as a bivariate polynomial in (tau, zeta), over all j.
double kernel_symmetry_coefficient_residual(const PcsrkTableau& t);

enum class SimplifyingKind { B, C, Chat, D, Dhat };

// Residual of the simplifying assumption of type `kind` at index (k, l):
// the condition of order k with l of its k-1 stage-weight factors taken at the
// discrete nodes (C^{k-1-l} Chat^l) and the rest continuous. Requires
// k >= 1 and 0 <= l <= k-1. C-type residuals are the max over a (i, tau) grid;
// D-type over a (j, sigma) grid. All integrals are exact (polynomial).
double simplifying_residual(const PcsrkTableau& t, SimplifyingKind kind, int k, int l);

struct SpectralData {
  Mat e;
  Eigen::VectorXcd eigenvalues;
  Mat t;      // eigenvector columns (identity when spectrum is not real)
  Mat t_inv;
  bool real_distinct = false;
  double condition_estimate = 1.0;
};

// E_{ij} = r(c_i)^T (sum_k M_k) integral_0^1 v(sigma) l_j(sigma) dsigma where
// l_j is the Lagrange basis over the nodes {0, c_1, ..., c_s}. Entries are
// assembled by exact polynomial integration; eigenvalues come from the exact
// rational characteristic polynomial and closed-form roots (s <= 3).
// real_distinct requires all-real eigenvalues with pairwise gaps
// > 1e-9 ||E||_inf and an eigenvector condition estimate <= 1e8; a larger
// estimate signals a defective or near-defective spectrum.
SpectralData e_matrix(const PcsrkTableau& t);

// Monic characteristic polynomial of E, ascending coefficients (size s+1,
// leading 1), assembled in exact rational arithmetic from the tableau entries.
Vec char_poly_coefficients(const PcsrkTableau& t);

// True iff -alpha_tilde/300 > (1/6) 2^{2/3} + (5/24) 2^{1/3} + 1/4, the
// threshold above which the family's E has real distinct eigenvalues.
bool is_parallelizable(double alpha_tilde);

// Interpolation weights at tau for the degree-s polynomial through the nodes
// {0, c_1, ..., c_s}: P(tau) = w_0 P(0) + sum_j w_j P(c_j). Size s+1.
Vec dense_weights(const Vec& c, double tau);

}  // namespace pcsrk
