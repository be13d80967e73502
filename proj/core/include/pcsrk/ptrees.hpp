#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcsrk/exact.hpp"
#include "pcsrk/tableau.hpp"

namespace pcsrk {

enum class Colour : std::uint8_t { black, white };

// Rooted tree with black/white vertices and unordered children. Children are
// stored sorted by canonical key, so canonical_key() is equal exactly for
// isomorphic trees. Keys look like "b(b,w(b))": root colour, then the sorted
// child keys in parentheses (leaves print as a bare colour letter).
class BiColouredTree {
 public:
  BiColouredTree() = default;  // black leaf
  explicit BiColouredTree(Colour colour, std::vector<BiColouredTree> children = {});
  static BiColouredTree make_black(std::vector<BiColouredTree> children = {});
  static BiColouredTree make_white(std::vector<BiColouredTree> children = {});

  Colour colour() const { return colour_; }
  const std::vector<BiColouredTree>& children() const { return children_; }
  int order() const { return order_; }  // vertex count
  const std::string& canonical_key() const { return key_; }
  // Canonical key of the uncoloured shape: colours erased to 'x' and children
  // re-sorted, so it is equal exactly for trees of the same shape.
  std::string shape_key() const;

  friend bool operator==(const BiColouredTree& x, const BiColouredTree& y) {
    return x.key_ == y.key_;
  }
  friend bool operator!=(const BiColouredTree& x, const BiColouredTree& y) {
    return !(x == y);
  }

 private:
  Colour colour_ = Colour::black;
  std::vector<BiColouredTree> children_;
  int order_ = 1;
  std::string key_ = "b";
};

// All isomorphism classes of black-rooted bi-coloured trees with
// 1 <= order <= max_order, sorted by (order, canonical key). Counts per order
// are 1, 2, 7, 26, 107, 458. Requires 1 <= max_order <= 6 (ConfigError).
std::vector<BiColouredTree> enumerate_black_rooted(int max_order);

// Tree weight, exact in Q(sqrt(d)). Plain rational whenever the tableau is.
struct Weight {
  exact::QScalar value;
  bool is_rational() const { return value.is_rational(); }
  double to_double() const { return value.to_double(); }
  std::string str() const { return value.str(); }
};

// Coefficient of the exact flow: e(t) = (1/|t|) prod_k e(t_k), blind to
// colour; e = 1/n! on the order-n chain.
Weight exact_coefficient(const BiColouredTree& t);

// Elementary weight phi(t) of a PCSRK tableau. For a black vertex at
// abscissa tau with white-child multiset W and black-child multiset Bk,
//   g(t; tau) = sum_j [prod_{w in W} g(w; c_j)] r(tau)^T M_j u,
//   u_k = int_0^1 sigma^k prod_{b in Bk} g(b; sigma) dsigma,
// with r(tau) = (tau, tau^2/2, ..., tau^s/s), v(sigma) = (1, ..., sigma^{s-1});
// white subtrees are evaluated at the discrete node of their parent's stage.
// phi(t) = g(t; 1). Every integral is a polynomial integral, computed exactly.
Weight elementary_weight(const BiColouredTree& t, const exact::ExactTableau& tab);
// Double-precision route: the tableau entries (binary rationals) are lifted
// exactly and the same exact recursion is run, so the only error is the
// rounding of the final value.
double elementary_weight(const BiColouredTree& t, const PcsrkTableau& tab);

// Largest p <= max_order with phi(t) = e(t) for every black-rooted tree of
// order <= p. Exact equality on the exact route; |phi - e| <= tol on the
// double route. Requires max_order <= 6.
int certified_order(const exact::ExactTableau& tab, int max_order);
int certified_order(const PcsrkTableau& tab, int max_order, double tol = 1e-12);

// The order-5 coefficient tables leave the constant theta in their all-black
// summary rows undefined, and the two rows that pin it down disagree by a
// factor of 10. Both candidates are reported, solved from the oracle weight
// of the 2-3 split shape: `from_proposed_row` solves (120 theta + 5)/72 =
// phi, `from_difference_row` solves (60 theta + 1)/360 = phi - 1/15.
// `confirmed` names the candidate that also reproduces the remaining
// all-black entries (12 theta + 5)/144, (1 - 12 theta)/72 and
// (1 - 12 theta)/144 ("difference", "proposed", "both" or "neither").
struct ThetaCandidates {
  exact::QScalar from_proposed_row;
  exact::QScalar from_difference_row;
  std::string confirmed;
};

// The eight scalar quantities (A)..(H) controlling the order-5 weights of the
// family, evaluated verbatim from the parameters (w = 2 c1 - 1):
//   A = w^2 (g1 + g3 + g4)/120          B = c1^2/12 - c1/12 + 5/24
//   C = 5/72 - at/1800                  D = c1 (c1 - 1) at/180
//   E = w (2 g3 + 3 g4)/1440            F = c1 (c1 - 1) w (2 g3 + 3 g4)/144
//   G = c1 (c1 - 1) w^2 (g1 + g3 + g4)/24
//   H = w^2 (4 g2 + 12 g3 + 9 g4)/288
struct TableQuantities {
  std::array<exact::QScalar, 8> value;  // indexed A=0, B, C, D, E, F, G, H=7
  ThetaCandidates theta;
};

TableQuantities table_quantities(const exact::ExactFamilyParams& p);
// Double-parameter route. Parameters matching optimal_family_params(at) to
// 1e-12 are snapped to the algebraic point in Q(sqrt(15)) so the optimal
// values come out exact; anything else is lifted digit-exactly to rationals.
TableQuantities table_quantities(const FamilyParams& p);

// One tabulated entry (base + sum coef_q * quantity_q, quantities A..H).
struct FormulaRef {
  exact::Rat base;
  std::array<exact::Rat, 8> coef{};
};

// One column of the shipped order-5 coefficient tables (tables 1..9, one per
// uncoloured shape; `column` is the 1-based position). `avf` and `formula`
// are the oracle-confirmed entries; where the tabulated entry deviates from
// the oracle (two AVF(4) values, one swapped pair of formulas) the deviating
// value is kept in `tabulated_*` and explained in `note`. One colouring is
// absent from the tables altogether (`tabulated` false).
struct AppendixEntry {
  int table = 0;
  int column = 0;
  BiColouredTree tree;
  exact::Rat avf;
  bool has_formula = true;
  FormulaRef formula;
  bool tabulated = true;
  std::optional<exact::Rat> tabulated_avf;
  std::optional<FormulaRef> tabulated_formula;
  const char* note = nullptr;
};

// All 107 order-5 columns, grouped by table then column.
const std::vector<AppendixEntry>& appendix_entries();

// Comparison of the oracle against one table column at the given parameters.
struct AppendixRow {
  int table = 0;
  int column = 0;
  std::string tree_key;
  exact::QScalar e;            // exact-flow coefficient
  exact::QScalar phi;          // family oracle weight
  exact::QScalar formula;      // table formula, quantities substituted
  bool has_formula = true;
  bool formula_match = false;  // phi == formula, exactly
  exact::QScalar formula_diff;
  exact::QScalar avf_phi;      // AVF(4) oracle weight
  exact::Rat avf_value;        // tabulated AVF(4) entry (oracle-confirmed)
  bool avf_match = false;
  exact::QScalar avf_diff;
  bool cd_governed = false;  // formula involves (C) or (D)
  bool matches_exact = false;  // phi == e
  std::string note;
};

struct TableReport {
  std::vector<AppendixRow> rows;
  TableQuantities quantities;
  int formula_mismatches = 0;     // oracle vs confirmed formula
  int avf_mismatches = 0;         // oracle vs confirmed AVF(4) entry
  int tabulation_deviations = 0;  // rows whose tabulated entry differs (or is absent)
  std::string summary() const;    // plain-text block, one line per deviation
};

// Recomputes every order-5 weight for the family at `p` and for AVF(4), and
// compares both against the shipped tables; exact differences are part of the
// report, deviations of the tabulated entries are flagged, never patched over.
TableReport verify_appendix(const exact::ExactFamilyParams& p);
TableReport verify_appendix(const FamilyParams& p);

}  // namespace pcsrk
