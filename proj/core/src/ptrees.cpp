#include "pcsrk/ptrees.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <utility>

#include "pcsrk/errors.hpp"

namespace pcsrk {

using exact::QPoly;
using exact::QScalar;
using exact::Rat;

BiColouredTree::BiColouredTree(Colour colour, std::vector<BiColouredTree> children)
    : colour_(colour), children_(std::move(children)) {
  std::sort(children_.begin(), children_.end(),
            [](const BiColouredTree& x, const BiColouredTree& y) { return x.key_ < y.key_; });
  order_ = 1;
  key_ = colour_ == Colour::black ? "b" : "w";
  if (!children_.empty()) {
    key_ += '(';
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (i) key_ += ',';
      key_ += children_[i].key_;
      order_ += children_[i].order_;
    }
    key_ += ')';
  }
}

BiColouredTree BiColouredTree::make_black(std::vector<BiColouredTree> children) {
  return BiColouredTree(Colour::black, std::move(children));
}

BiColouredTree BiColouredTree::make_white(std::vector<BiColouredTree> children) {
  return BiColouredTree(Colour::white, std::move(children));
}

std::string BiColouredTree::shape_key() const {
  if (children_.empty()) return "x";
  std::vector<std::string> parts;
  parts.reserve(children_.size());
  for (const auto& child : children_) parts.push_back(child.shape_key());
  std::sort(parts.begin(), parts.end());
  std::string k = "x(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) k += ',';
    k += parts[i];
  }
  k += ')';
  return k;
}

namespace {

// Children are chosen as a non-decreasing index sequence into the pool of all
// smaller trees, so every multiset is produced exactly once.
void gen_with_children(const std::vector<BiColouredTree>& pool, int budget, std::size_t min_idx,
                       std::vector<BiColouredTree>& picked, Colour root,
                       std::vector<BiColouredTree>& out) {
  if (budget == 0) {
    out.emplace_back(root, picked);
    return;
  }
  for (std::size_t i = min_idx; i < pool.size(); ++i) {
    if (pool[i].order() > budget) continue;
    picked.push_back(pool[i]);
    gen_with_children(pool, budget - pool[i].order(), i, picked, root, out);
    picked.pop_back();
  }
}

}  // namespace

std::vector<BiColouredTree> enumerate_black_rooted(int max_order) {
  if (max_order < 1 || max_order > 6)
    throw ConfigError("enumerate_black_rooted: max_order must be in [1, 6]");
  std::vector<std::vector<BiColouredTree>> by_order(max_order + 1);
  std::vector<BiColouredTree> pool;  // all trees of order < n, both root colours
  for (int n = 1; n <= max_order; ++n) {
    std::vector<BiColouredTree> picked;
    gen_with_children(pool, n - 1, 0, picked, Colour::black, by_order[n]);
    gen_with_children(pool, n - 1, 0, picked, Colour::white, by_order[n]);
    std::sort(by_order[n].begin(), by_order[n].end(),
              [](const BiColouredTree& x, const BiColouredTree& y) {
                return x.canonical_key() < y.canonical_key();
              });
    pool.insert(pool.end(), by_order[n].begin(), by_order[n].end());
  }
  std::vector<BiColouredTree> out;
  for (int n = 1; n <= max_order; ++n)
    for (auto& t : by_order[n])
      if (t.colour() == Colour::black) out.push_back(std::move(t));
  return out;
}

Weight exact_coefficient(const BiColouredTree& t) {
  QScalar prod(1);
  for (const auto& child : t.children()) prod *= exact_coefficient(child).value;
  return {prod / QScalar(t.order())};
}

namespace {

// Weight oracle for one tableau. Subtree stage polynomials g(.; tau) are
// cached by canonical key with the root colour ignored (the recursion only
// looks at the colours of the children).
class Oracle {
 public:
  explicit Oracle(const exact::ExactTableau& tab) : tab_(tab) {}

  QScalar weight(const BiColouredTree& t) { return g(t).eval(QScalar(1)); }

 private:
  const QPoly& g(const BiColouredTree& t) {
    std::string key = t.canonical_key();
    key[0] = 'b';
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    QPoly black_prod{QScalar(1)};
    std::vector<const BiColouredTree*> whites;
    for (const auto& child : t.children()) {
      if (child.colour() == Colour::black)
        black_prod = black_prod * g(child);
      else
        whites.push_back(&child);
    }
    const int s = tab_.s;
    std::vector<QScalar> u(s);
    for (int k = 0; k < s; ++k) u[k] = black_prod.shifted_integral01(k);

    std::vector<QScalar> coef(s + 1);
    for (int j = 0; j < s; ++j) {
      QScalar fj(1);
      for (const auto* w : whites) fj *= g(*w).eval(tab_.c[j]);
      for (int p = 0; p < s; ++p) {
        QScalar acc(0);
        for (int q = 0; q < s; ++q) acc += tab_.m[j][p][q] * u[q];
        coef[p + 1] += fj * acc / QScalar(p + 1);
      }
    }
    return cache_.emplace(std::move(key), QPoly(std::move(coef))).first->second;
  }

  const exact::ExactTableau& tab_;
  std::map<std::string, QPoly> cache_;
};

exact::ExactTableau lift_tableau(const PcsrkTableau& tab) {
  exact::ExactTableau et;
  et.s = tab.s;
  et.m.resize(tab.s);
  for (int j = 0; j < tab.s; ++j) {
    et.m[j].assign(tab.s, std::vector<QScalar>(tab.s));
    for (int p = 0; p < tab.s; ++p)
      for (int q = 0; q < tab.s; ++q) et.m[j][p][q] = QScalar(exact::rat_of_double(tab.m_list[j](p, q)));
  }
  et.c.resize(tab.s);
  for (int i = 0; i < tab.s; ++i) et.c[i] = QScalar(exact::rat_of_double(tab.c[i]));
  return et;
}

}  // namespace

Weight elementary_weight(const BiColouredTree& t, const exact::ExactTableau& tab) {
  Oracle oracle(tab);
  return {oracle.weight(t)};
}

double elementary_weight(const BiColouredTree& t, const PcsrkTableau& tab) {
  const exact::ExactTableau lifted = lift_tableau(tab);
  Oracle oracle(lifted);
  return oracle.weight(t).to_double();
}

int certified_order(const exact::ExactTableau& tab, int max_order) {
  const auto trees = enumerate_black_rooted(max_order);
  Oracle oracle(tab);
  int certified = 0;
  for (int p = 1; p <= max_order; ++p) {
    for (const auto& t : trees) {
      if (t.order() != p) continue;
      if (oracle.weight(t) != exact_coefficient(t).value) return certified;
    }
    certified = p;
  }
  return certified;
}

int certified_order(const PcsrkTableau& tab, int max_order, double tol) {
  const auto trees = enumerate_black_rooted(max_order);
  exact::ExactTableau lifted = lift_tableau(tab);
  Oracle oracle(lifted);
  int certified = 0;
  for (int p = 1; p <= max_order; ++p) {
    for (const auto& t : trees) {
      if (t.order() != p) continue;
      const double diff = (oracle.weight(t) - exact_coefficient(t).value).to_double();
      if (std::abs(diff) > tol) return certified;
    }
    certified = p;
  }
  return certified;
}

namespace {

BiColouredTree black_leaf() { return BiColouredTree::make_black(); }

// The four all-black order-5 shapes whose tabulated entries involve theta:
// the 2-3 split, the leaf-plus-chain, the deep twin-leaf, and the chain.
struct ThetaShapes {
  BiColouredTree split23 = BiColouredTree::make_black(
      {black_leaf(), BiColouredTree::make_black({black_leaf(), black_leaf()})});
  BiColouredTree leaf_chain = BiColouredTree::make_black(
      {black_leaf(), BiColouredTree::make_black({BiColouredTree::make_black({black_leaf()})})});
  BiColouredTree deep_twin = BiColouredTree::make_black(
      {BiColouredTree::make_black({BiColouredTree::make_black({black_leaf(), black_leaf()})})});
  BiColouredTree chain5 = BiColouredTree::make_black({BiColouredTree::make_black(
      {BiColouredTree::make_black({BiColouredTree::make_black({black_leaf()})})})});
};

ThetaCandidates resolve_theta(Oracle& oracle) {
  const ThetaShapes shapes;
  const QScalar phi_c = oracle.weight(shapes.split23);
  const QScalar phi_d = oracle.weight(shapes.leaf_chain);
  const QScalar phi_h = oracle.weight(shapes.deep_twin);
  const QScalar phi_i = oracle.weight(shapes.chain5);

  ThetaCandidates th;
  th.from_proposed_row = (QScalar(72) * phi_c - QScalar(5)) / QScalar(120);
  th.from_difference_row = (QScalar(360) * phi_c - QScalar(25)) / QScalar(60);
  auto confirms = [&](const QScalar& theta) {
    return phi_d == (QScalar(12) * theta + QScalar(5)) / QScalar(144) &&
           phi_h == (QScalar(1) - QScalar(12) * theta) / QScalar(72) &&
           phi_i == (QScalar(1) - QScalar(12) * theta) / QScalar(144);
  };
  const bool prop_ok = confirms(th.from_proposed_row);
  const bool diff_ok = confirms(th.from_difference_row);
  if (prop_ok && diff_ok)
    th.confirmed = "both";
  else if (diff_ok)
    th.confirmed = "difference";
  else if (prop_ok)
    th.confirmed = "proposed";
  else
    th.confirmed = "neither";
  return th;
}

exact::ExactFamilyParams lift_params(const FamilyParams& p) {
  p.check();
  const FamilyParams opt = optimal_family_params(p.alpha_tilde);
  bool snap = std::abs(p.c1 - opt.c1) <= 1e-12;
  for (int i = 0; i < 4; ++i) snap = snap && std::abs(p.gamma[i] - opt.gamma[i]) <= 1e-12;
  if (snap) return exact::optimal_params(exact::rat_of_double(p.alpha_tilde));
  return exact::params_from_rational(
      exact::rat_of_double(p.c1),
      {exact::rat_of_double(p.gamma[0]), exact::rat_of_double(p.gamma[1]),
       exact::rat_of_double(p.gamma[2]), exact::rat_of_double(p.gamma[3])},
      exact::rat_of_double(p.alpha_tilde));
}

}  // namespace

TableQuantities table_quantities(const exact::ExactFamilyParams& p) {
  const QScalar& c1 = p.c1;
  const QScalar& at = p.alpha_tilde;
  const QScalar& g1 = p.gamma[0];
  const QScalar& g2 = p.gamma[1];
  const QScalar& g3 = p.gamma[2];
  const QScalar& g4 = p.gamma[3];
  const QScalar w = QScalar(2) * c1 - QScalar(1);
  const QScalar cc = c1 * (c1 - QScalar(1));

  TableQuantities out;
  out.value[0] = w * w * (g1 + g3 + g4) / QScalar(120);
  out.value[1] = c1 * c1 / QScalar(12) - c1 / QScalar(12) + QScalar(Rat(5, 24));
  out.value[2] = QScalar(Rat(5, 72)) - at / QScalar(1800);
  out.value[3] = cc * at / QScalar(180);
  out.value[4] = w * (QScalar(2) * g3 + QScalar(3) * g4) / QScalar(1440);
  out.value[5] = cc * w * (QScalar(2) * g3 + QScalar(3) * g4) / QScalar(144);
  out.value[6] = cc * w * w * (g1 + g3 + g4) / QScalar(24);
  out.value[7] = w * w * (QScalar(4) * g2 + QScalar(12) * g3 + QScalar(9) * g4) / QScalar(288);

  const exact::ExactTableau tab = exact::exact_family_tableau(p);
  Oracle oracle(tab);
  out.theta = resolve_theta(oracle);
  return out;
}

TableQuantities table_quantities(const FamilyParams& p) { return table_quantities(lift_params(p)); }

TableReport verify_appendix(const exact::ExactFamilyParams& p) {
  TableReport rep;
  rep.quantities = table_quantities(p);
  const exact::ExactTableau fam = exact::exact_family_tableau(p);
  const exact::ExactTableau avf = exact::exact_avf4();
  Oracle fam_oracle(fam);
  Oracle avf_oracle(avf);

  for (const AppendixEntry& en : appendix_entries()) {
    AppendixRow row;
    row.table = en.table;
    row.column = en.column;
    row.tree_key = en.tree.canonical_key();
    row.e = exact_coefficient(en.tree).value;
    row.phi = fam_oracle.weight(en.tree);
    row.avf_phi = avf_oracle.weight(en.tree);
    row.avf_value = en.avf;
    row.avf_diff = row.avf_phi - QScalar(en.avf);
    row.avf_match = row.avf_diff.is_zero();
    if (!row.avf_match) ++rep.avf_mismatches;
    row.has_formula = en.has_formula;
    if (en.has_formula) {
      QScalar val{en.formula.base};
      for (int i = 0; i < 8; ++i)
        if (en.formula.coef[i] != 0) val += QScalar(en.formula.coef[i]) * rep.quantities.value[i];
      row.formula = val;
      row.formula_diff = row.phi - val;
      row.formula_match = row.formula_diff.is_zero();
      row.cd_governed = en.formula.coef[2] != 0 || en.formula.coef[3] != 0;
      if (!row.formula_match) ++rep.formula_mismatches;
    }
    row.matches_exact = (row.phi - row.e).is_zero();
    if (en.note) row.note = en.note;
    if (!en.tabulated || en.tabulated_avf.has_value() || en.tabulated_formula.has_value())
      ++rep.tabulation_deviations;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

TableReport verify_appendix(const FamilyParams& p) { return verify_appendix(lift_params(p)); }

std::string TableReport::summary() const {
  std::ostringstream os;
  os << rows.size() << " table columns checked: " << formula_mismatches
     << " formula mismatch(es), " << avf_mismatches << " AVF(4) mismatch(es), "
     << tabulation_deviations << " tabulated entr(ies) deviating from the oracle\n";
  os << "theta candidates: " << quantities.theta.from_proposed_row.str()
     << " (proposed row), " << quantities.theta.from_difference_row.str()
     << " (difference row); confirmed: " << quantities.theta.confirmed << "\n";
  for (const auto& r : rows) {
    const bool formula_bad = r.has_formula && !r.formula_match;
    if (!formula_bad && r.avf_match && r.note.empty()) continue;
    os << "  table " << r.table << " column " << r.column << " [" << r.tree_key << "]";
    if (formula_bad) os << " formula off by " << r.formula_diff.str();
    if (!r.avf_match) os << " AVF(4) off by " << r.avf_diff.str();
    if (!r.note.empty()) os << " -- " << r.note;
    os << "\n";
  }
  return os.str();
}

}  // namespace pcsrk
