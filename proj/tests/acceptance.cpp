// Acceptance gate: each criterion is one self-contained check with pinned
// tolerances, printing a single PASS/FAIL line. Run with --criterion N
// (1..10), or no arguments for the full gate. Exit 0 iff every requested
// criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pcsrk/harness.hpp"
#include "pcsrk/ptrees.hpp"

using namespace pcsrk;
using exact::Rat;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

bool emit(int n, bool pass, const std::string& detail) {
  std::printf("[criterion %d] %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  return pass;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

DriftTable reference_drift() {
  ExperimentConfig cfg;
  cfg.h = 0.05;
  cfg.t_end = 10.0;
  return drift(cfg);
}

// --- criterion 1: energy preservation on the Lotka-Volterra orbit ----------

bool criterion1() {
  const double t0 = now_seconds();
  DriftTable table = reference_drift();
  const double elapsed = now_seconds() - t0;
  bool pass = !table.aborted && table.max_abs_dh < 1e-11 && elapsed < 10.0;
  return emit(1, pass,
              "family(-234), lv, h=0.05, t=[0,10]: max|dH| = " + fmt(table.max_abs_dh) +
                  " (< 1e-11), runtime " + fmt(elapsed) + " s (< 10)");
}

// --- criterion 2: the casimir must visibly drift ----------------------------

bool criterion2() {
  DriftTable table = reference_drift();
  const double dc = table.aborted ? 0.0 : table.max_abs_dinv.at(0);
  bool pass = !table.aborted && dc > 0.005;
  return emit(2, pass,
              "same run: max|d casimir| = " + fmt(dc) + " (required > 0.005)");
}

// --- criterion 3: fourth-order convergence and pinned reference errors ------

struct LadderCase {
  MethodSpec::Kind kind;
  double lo, hi;        // slope band
  double e625, e3125;   // pinned errors at h = 0.0625 and 0.03125
};

bool criterion3() {
  const double t0 = now_seconds();
  const LadderCase cases[] = {
      {MethodSpec::Kind::family, 3.85, 4.15, 0.0005391735621606368, 3.294929505801119e-5},
      {MethodSpec::Kind::avf2, 1.90, 2.10, 0.016783848157749297, 0.004137716809511271},
      {MethodSpec::Kind::avf4, 3.85, 4.15, 2.7908705190459515e-5, 1.7410912957927447e-6},
  };
  bool pass = true;
  std::string detail;
  for (const LadderCase& c : cases) {
    ExperimentConfig cfg;
    cfg.method.kind = c.kind;
    cfg.t_end = 1.0;
    ConvergenceTable table = converge(cfg);
    // coarse rungs may legitimately fail (annotated and excluded from the
    // fit); the two pinned rungs must resolve
    double err625 = 0.0, err3125 = 0.0;
    for (const auto& row : table.rows) {
      if (row.failed) continue;
      if (std::fabs(row.h - 0.0625) < 1e-12) err625 = row.error;
      if (std::fabs(row.h - 0.03125) < 1e-12) err3125 = row.error;
    }
    const bool slope_ok = table.slope >= c.lo && table.slope <= c.hi;
    auto within2 = [](double v, double ref) { return v > 0.5 * ref && v < 2.0 * ref; };
    const bool errs_ok = within2(err625, c.e625) && within2(err3125, c.e3125);
    pass = pass && slope_ok && errs_ok;
    if (!detail.empty()) detail += "; ";
    detail += table.method_label + " slope " + fmt(table.slope);
    if (!errs_ok) detail += " [pinned errors missed]";
  }
  const double elapsed = now_seconds() - t0;
  pass = pass && elapsed < 120.0;
  return emit(3, pass, detail + "; runtime " + fmt(elapsed) + " s (< 120)");
}

// --- criterion 4: 200 random members validate and certify order four --------

bool criterion4() {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dc1(25, 475);    // c1 = k/1000
  std::uniform_int_distribution<int> dg(-500, 500);   // gamma = m/100
  std::uniform_int_distribution<int> dat(-300, 300);  // alpha~ = n/10, n != 0
  int bad_validate = 0, bad_order = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = dc1(rng);
    int g[4], n = 0;
    for (int& v : g) v = dg(rng);
    while (n == 0) n = dat(rng);

    FamilyParams p;
    p.c1 = k / 1000.0;
    p.gamma = {g[0] / 100.0, g[1] / 100.0, g[2] / 100.0, g[3] / 100.0};
    p.alpha_tilde = n / 10.0;
    ValidationReport rep = validate(fourth_order_family(p));
    worst = std::max(worst, rep.max_residual());
    if (!rep.all_applicable_passed() || rep.max_residual() > 1e-12) ++bad_validate;

    auto ep = exact::params_from_rational(
        Rat(k, 1000), {Rat(g[0], 100), Rat(g[1], 100), Rat(g[2], 100), Rat(g[3], 100)},
        Rat(n, 10));
    if (certified_order(exact::exact_family_tableau(ep), 4) != 4) ++bad_order;
  }
  bool pass = bad_validate == 0 && bad_order == 0;
  return emit(4, pass,
              "200 random members: worst validation residual " + fmt(worst) +
                  " (<= 1e-12), exact order-4 certificates failed on " +
                  std::to_string(bad_order));
}

// --- criterion 5: coefficient-table quantities and non-(C)/(D) rows ---------

bool criterion5() {
  auto tq = table_quantities(exact::optimal_params(Rat(-234)));
  const Rat expect[6] = {Rat(1, 180), Rat(1, 5), Rat(-1, 360),
                         Rat(1, 360), Rat(-1, 360), Rat(1, 80)};
  const int idx[6] = {0, 1, 4, 5, 6, 7};  // A, B, E, F, G, H
  bool quantities_ok = true;
  for (int i = 0; i < 6; ++i)
    quantities_ok = quantities_ok && tq.value[idx[i]] == exact::QScalar(expect[i]);

  TableReport rep = verify_appendix(exact::optimal_params(Rat(-234)));
  int non_cd = 0, non_cd_exact = 0;
  for (const auto& row : rep.rows) {
    if (row.cd_governed) continue;
    ++non_cd;
    if (row.matches_exact) ++non_cd_exact;
  }
  bool pass = quantities_ok && non_cd > 0 && non_cd_exact == non_cd;
  return emit(5, pass,
              "six parameter-independent quantities exact: " +
                  std::string(quantities_ok ? "yes" : "NO") + "; order-5 rows free of (C),(D): " +
                  std::to_string(non_cd_exact) + "/" + std::to_string(non_cd) +
                  " match the exact flow");
}

// --- criterion 6: the alpha~ = 5 member reaches order five ------------------

bool criterion6() {
  const int certified =
      certified_order(exact::exact_family_tableau(exact::optimal_params(Rat(5))), 5);

  ExperimentConfig cfg;
  cfg.method.params = optimal_family_params(5.0);
  cfg.ladder = {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  cfg.t_end = 1.0;
  cfg.solver.solver_mode = SolverMode::full;  // spectrum is complex at alpha~ = 5
  ConvergenceTable table = converge(cfg);

  bool pass = certified >= 5 && table.slope >= 5.5;
  return emit(6, pass,
              "family(+5): exact certified order " + std::to_string(certified) +
                  " (>= 5), lv slope " + fmt(table.slope) + " (>= 5.5)");
}

// --- criterion 7: realness threshold of the stage matrix --------------------

bool criterion7() {
  const bool flip_lo = e_matrix(fourth_order_family(optimal_family_params(-233.0))).real_distinct;
  const bool flip_hi = e_matrix(fourth_order_family(optimal_family_params(-233.25))).real_distinct;
  bool pass = !flip_lo && flip_hi && is_parallelizable(-234.0) && !is_parallelizable(-200.0);
  return emit(7, pass,
              std::string("real-distinct at -233.25: ") + (flip_hi ? "yes" : "NO") +
                  ", at -233.0: " + (flip_lo ? "YES" : "no") +
                  "; parallelizable(-234) && !parallelizable(-200): " +
                  (is_parallelizable(-234.0) && !is_parallelizable(-200.0) ? "yes" : "NO"));
}

// --- criterion 8: the spectrum does not depend on c1 ------------------------

bool criterion8() {
  const double c1s[] = {0.1, 0.2, 0.3, 0.45};
  std::vector<std::vector<double>> spectra;
  for (double c1 : c1s) {
    FamilyParams p = optimal_family_params(-234.0);
    p.c1 = c1;
    SpectralData sd = e_matrix(fourth_order_family(p));
    if (!sd.real_distinct) return emit(8, false, "spectrum not real-distinct at c1 = " + fmt(c1));
    std::vector<double> eig;
    for (int i = 0; i < sd.eigenvalues.size(); ++i) eig.push_back(sd.eigenvalues(i).real());
    std::sort(eig.begin(), eig.end());
    spectra.push_back(eig);
  }
  double worst = 0.0;
  for (size_t a = 1; a < spectra.size(); ++a)
    for (size_t i = 0; i < spectra[a].size(); ++i)
      worst = std::max(worst, std::fabs(spectra[a][i] - spectra[0][i]));
  bool pass = worst <= 1e-11;
  return emit(8, pass,
              "sorted eigenvalues across c1 in {0.1,0.2,0.3,0.45}: max spread " + fmt(worst) +
                  " (<= 1e-11)");
}

// --- criterion 9: block and full solvers agree ------------------------------

bool criterion9() {
  PcsrkTableau fam = fourth_order_family(optimal_family_params(-234.0));

  auto gap = [&](const PoissonSystem& sys, const Vec& y0, double h) {
    StepConfig cfg;
    cfg.h = h;
    cfg.solver_mode = SolverMode::block;
    StepResult rb = step(sys, fam, y0, cfg);
    cfg.solver_mode = SolverMode::full;
    StepResult rf = step(sys, fam, y0, cfg);
    return (rb.y1 - rf.y1).cwiseAbs().maxCoeff() /
           std::max(1.0, rf.y1.cwiseAbs().maxCoeff());
  };

  ExperimentConfig lv;
  const double glv = gap(make_problem(lv), default_initial_state(lv), 0.05);
  const double gsyn = gap(synthetic_poisson(300, 2024), synthetic_initial_state(300, 2024), 0.05);
  bool pass = glv <= 1e-10 && gsyn <= 1e-10;
  return emit(9, pass,
              "block vs full relative gap: lv " + fmt(glv) + ", synthetic d=300 " + fmt(gsyn) +
                  " (both <= 1e-10)");
}

// --- criterion 10: symmetry, constant-S collapse, exact AVF column ----------

bool criterion10() {
  PcsrkTableau fam = fourth_order_family(optimal_family_params(-234.0));

  ExperimentConfig lvcfg;
  PoissonSystem lv = make_problem(lvcfg);
  Vec y0 = default_initial_state(lvcfg);
  StepConfig cfg;
  cfg.h = 0.05;
  StepResult fwd = step(lv, fam, y0, cfg);
  cfg.h = -0.05;
  StepResult back = step(lv, fam, fwd.y1, cfg);
  const double sym = (back.y1 - y0).cwiseAbs().maxCoeff();
  const double sym_bound = 1e-10 * std::max(1.0, y0.cwiseAbs().maxCoeff());

  // constant S: the split into M_1..M_3 is irrelevant, only the sum acts
  Mat S(2, 2), A(2, 2);
  S << 0.0, 1.0, -1.0, 0.0;
  A << 2.0, 0.3, 0.3, 1.0;
  Vec b(2);
  b << 0.5, -0.2;
  PoissonSystem quad = constant_s_quadratic(S, A, b);
  Vec q0(2);
  q0 << 0.4, -1.1;
  PcsrkTableau core;
  core.s = 3;
  core.c = fam.c;
  core.m_list = {csrk_alpha_family(-234.0).m, Mat::Zero(3, 3), Mat::Zero(3, 3)};
  core.m_sum = core.m_list[0];
  core.name = "csrk-core";
  StepConfig qc;
  qc.h = 0.1;
  qc.solver_mode = SolverMode::full;
  const double collapse =
      (step(quad, fam, q0, qc).y1 - step(quad, core, q0, qc).y1).cwiseAbs().maxCoeff();

  // the AVF(4) column of the order-5 tables, as exact rationals
  auto avf4 = exact::exact_avf4();
  int avf_ok = 0;
  std::set<Rat> seen;
  for (const auto& e : appendix_entries()) {
    if (elementary_weight(e.tree, avf4).value == exact::QScalar(e.avf)) ++avf_ok;
    seen.insert(e.avf);
  }
  const bool spot = seen.count(Rat(7, 144)) && seen.count(Rat(5, 72)) && seen.count(Rat(1, 36));

  bool pass = sym <= sym_bound && collapse <= 1e-12 && avf_ok == 107 && spot;
  return emit(10, pass,
              "symmetry gap " + fmt(sym) + " (<= " + fmt(sym_bound) + "), collapse gap " +
                  fmt(collapse) + " (<= 1e-12), AVF column exact on " + std::to_string(avf_ok) +
                  "/107 rows");
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which = std::atoi(argv[++i]);
      if (which < 1 || which > 10) {
        std::fprintf(stderr, "criterion must be 1..10\n");
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  bool (*checks[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                        criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all = true;
  try {
    if (which > 0) {
      all = checks[which - 1]();
    } else {
      for (auto* fn : checks) all = fn() && all;
    }
  } catch (const std::exception& e) {
    std::printf("[criterion %s] FAIL  unexpected exception: %s\n",
                which > 0 ? std::to_string(which).c_str() : "?", e.what());
    return 1;
  }
  return all ? 0 : 1;
}
