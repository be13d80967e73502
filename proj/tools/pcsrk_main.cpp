// pcsrk: energy-preserving partitioned continuous-stage Runge-Kutta methods
// for Poisson systems. Subcommands drive single runs, convergence and drift
// studies, tree-based order verification, tableau inspection, and a solver
// benchmark. Exit codes: 0 success, 2 solver failure, 3 config error.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcsrk/errors.hpp"
#include "pcsrk/harness.hpp"
#include "pcsrk/ptrees.hpp"

namespace fs = std::filesystem;
using namespace pcsrk;

namespace {

struct CliOpts {
  std::string out = ".";
  double quad_tol = 1e-12;
  double newton_tol = 1e-13;
  int quad_max_nodes = 64;
  int threads = 1;

  std::string method = "family";
  double alpha_tilde = -234.0;
  std::optional<double> c1;
  std::vector<double> gamma;

  std::string problem = "lv";
  double h = 0.05;
  std::optional<double> t_end;
  std::string solver = "auto";
  int max_newton_iters = 500;

  int dim = 300;
  unsigned seed = 2024;
  int bench_steps = 3;

  int max_order = 6;
  std::string format = "text";
  bool json_out = false;
};

MethodSpec build_method(const CliOpts& o) {
  MethodSpec m;
  if (o.method == "avf2")
    m.kind = MethodSpec::Kind::avf2;
  else if (o.method == "avf4")
    m.kind = MethodSpec::Kind::avf4;
  else
    m.kind = MethodSpec::Kind::family;
  m.params = optimal_family_params(o.alpha_tilde);
  if (o.c1) m.params.c1 = *o.c1;
  if (!o.gamma.empty()) {
    for (int i = 0; i < 4; ++i) m.params.gamma[i] = o.gamma[i];
  }
  return m;
}

SolverMode parse_mode(const std::string& s) {
  if (s == "full") return SolverMode::full;
  if (s == "block") return SolverMode::block;
  return SolverMode::auto_mode;
}

ExperimentConfig build_experiment(const CliOpts& o, double default_t_end) {
  ExperimentConfig cfg;
  cfg.problem = o.problem;
  cfg.method = build_method(o);
  cfg.h = o.h;
  cfg.t_end = o.t_end.value_or(default_t_end);
  cfg.solver.newton_tol = o.newton_tol;
  cfg.solver.quad_tol = o.quad_tol;
  cfg.solver.quad_max_nodes = o.quad_max_nodes;
  cfg.solver.threads = o.threads;
  cfg.solver.max_newton_iters = o.max_newton_iters;
  cfg.solver.solver_mode = parse_mode(o.solver);
  cfg.seed = o.seed;
  cfg.synthetic_dim = o.dim;
  cfg.bench_steps = o.bench_steps;
  cfg.out_dir = o.out;
  return cfg;
}

// --out names either a directory or, when its extension matches, the output
// file itself (e.g. --out traj.csv).
std::string resolve_out(const std::string& out, const std::string& stem, const std::string& ext) {
  fs::path p = out.empty() ? fs::path(".") : fs::path(out);
  if (p.has_extension() && p.extension() == "." + ext) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p.string();
  }
  fs::create_directories(p);
  return (p / (stem + "." + ext)).string();
}

std::string sibling(const std::string& primary, const std::string& ext) {
  return fs::path(primary).replace_extension("." + ext).string();
}

int run_integrate(const CliOpts& o) {
  const ExperimentConfig cfg = build_experiment(o, 10.0);
  cfg.check();
  const PoissonSystem sys = make_problem(cfg);
  const Vec y0 = default_initial_state(cfg);
  const PcsrkTableau tab = cfg.method.build();
  const Trajectory traj = integrate(sys, tab, y0, cfg.h, cfg.t_end, cfg.solver);

  const std::string path = resolve_out(o.out, "traj", "csv");
  write_text_file(path, trajectory_csv(traj));
  double max_dh = 0.0;
  for (double e : traj.energy) max_dh = std::max(max_dh, std::fabs(e - traj.energy[0]));
  std::printf("integrate: %s on %s, %zu steps of h = %g, t_end = %g\n",
              cfg.method.label().c_str(), sys.name.c_str(), traj.reports.size(), cfg.h, cfg.t_end);
  std::printf("  max |H - H0| = %s\n", fmt17(max_dh).c_str());
  std::printf("  trajectory written to %s\n", path.c_str());
  if (traj.aborted) {
    std::fprintf(stderr, "integrate: aborted after %zu steps: %s\n", traj.reports.size(),
                 traj.abort_reason.c_str());
    return 2;
  }
  return 0;
}

int run_converge(const CliOpts& o) {
  const ExperimentConfig cfg = build_experiment(o, 1.0);
  const ConvergenceTable table = converge(cfg);
  const std::string path = resolve_out(o.out, "converge", "csv");
  write_text_file(path, table.csv());
  write_text_file(sibling(path, "txt"), table.summary());
  std::fputs(table.summary().c_str(), stdout);
  std::printf("written to %s\n", path.c_str());
  return 0;
}

int run_drift(const CliOpts& o) {
  const ExperimentConfig cfg = build_experiment(o, 10.0);
  const DriftTable table = drift(cfg);
  const std::string path = resolve_out(o.out, "drift", "csv");
  write_text_file(path, table.csv());
  write_text_file(sibling(path, "txt"), table.summary());
  std::fputs(table.summary().c_str(), stdout);
  std::printf("written to %s\n", path.c_str());
  return table.aborted ? 2 : 0;
}

int run_bench(const CliOpts& o) {
  const ExperimentConfig cfg = build_experiment(o, 1.0);
  const BenchTable table = bench(cfg);
  const std::string path = resolve_out(o.out, "bench", "csv");
  write_text_file(path, table.csv());
  write_text_file(sibling(path, "txt"), table.summary());
  std::fputs(table.summary().c_str(), stdout);
  std::printf("written to %s\n", path.c_str());
  return 0;
}

std::string quote_csv(const std::string& s) { return "\"" + s + "\""; }

int run_verify_trees(const CliOpts& o) {
  const MethodSpec method = build_method(o);
  const PcsrkTableau tab = method.build();
  const std::vector<BiColouredTree> trees = enumerate_black_rooted(o.max_order);
  const double tol = 1e-12;
  const int certified = certified_order(tab, o.max_order, tol);

  struct Row {
    int order;
    std::string key;
    double phi, e;
    std::string e_exact;
    bool match;
  };
  std::vector<Row> rows;
  rows.reserve(trees.size());
  for (const auto& t : trees) {
    Row r;
    r.order = t.order();
    r.key = t.canonical_key();
    r.phi = elementary_weight(t, tab);
    const Weight ew = exact_coefficient(t);
    r.e = ew.to_double();
    r.e_exact = ew.str();
    r.match = std::fabs(r.phi - r.e) <= tol;
    rows.push_back(std::move(r));
  }

  std::string content;
  std::string ext;
  if (o.format == "csv") {
    ext = "csv";
    std::ostringstream out;
    out << "order,key,phi,e,e_exact,match\n";
    for (const auto& r : rows)
      out << r.order << ',' << quote_csv(r.key) << ',' << fmt17(r.phi) << ',' << fmt17(r.e) << ','
          << r.e_exact << ',' << (r.match ? 1 : 0) << '\n';
    content = out.str();
  } else if (o.format == "json") {
    ext = "json";
    nlohmann::json doc;
    doc["method"] = method.label();
    doc["max_order"] = o.max_order;
    doc["tolerance"] = tol;
    doc["certified_order"] = certified;
    doc["trees"] = nlohmann::json::array();
    for (const auto& r : rows)
      doc["trees"].push_back({{"order", r.order},
                              {"key", r.key},
                              {"phi", r.phi},
                              {"e", r.e},
                              {"e_exact", r.e_exact},
                              {"match", r.match}});
    content = doc.dump(2) + "\n";
  } else {
    ext = "txt";
    std::ostringstream out;
    out << "verify-trees: method " << method.label() << ", black-rooted trees up to order "
        << o.max_order << "\n";
    char line[160];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof(line), "  %d  %-26s phi = %s  e = %-10s %s\n", r.order,
                    r.key.c_str(), fmt17(r.phi).c_str(), r.e_exact.c_str(),
                    r.match ? "ok" : "DIFFERS");
      out << line;
    }
    out << rows.size() << " trees; certified order within max order " << o.max_order << ": "
        << certified << " (tolerance " << tol << ")\n";
    content = out.str();
  }

  const std::string path = resolve_out(o.out, "verify_trees", ext);
  write_text_file(path, content);
  std::fputs(content.c_str(), stdout);
  std::fprintf(stderr, "written to %s\n", path.c_str());
  return 0;
}

std::string mat_to_text(const Mat& m) {
  std::ostringstream out;
  for (int i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (int j = 0; j < m.cols(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.17g", m(i, j));
      out << buf;
    }
    out << " ]\n";
  }
  return out.str();
}

int run_inspect(const CliOpts& o) {
  const MethodSpec method = build_method(o);
  const PcsrkTableau tab = method.build();
  const ValidationReport report = validate(tab);
  const SpectralData spec = e_matrix(tab);
  const Vec cp = char_poly_coefficients(tab);
  const bool family = method.kind == MethodSpec::Kind::family;

  if (o.json_out) {
    nlohmann::json doc;
    doc["method"] = method.label();
    doc["s"] = tab.s;
    doc["c"] = std::vector<double>(tab.c.data(), tab.c.data() + tab.c.size());
    for (int k = 0; k < tab.s; ++k) {
      nlohmann::json m = nlohmann::json::array();
      for (int i = 0; i < tab.s; ++i)
        m.push_back(std::vector<double>(tab.m_list[k].row(i).begin(), tab.m_list[k].row(i).end()));
      doc["m"].push_back(m);
    }
    doc["validation"] = nlohmann::json::array();
    for (const auto& e : report.entries)
      doc["validation"].push_back({{"name", e.name},
                                   {"applicable", e.applicable},
                                   {"pass", e.pass},
                                   {"residual", e.residual}});
    doc["char_poly"] = std::vector<double>(cp.data(), cp.data() + cp.size());
    doc["eigenvalues"] = nlohmann::json::array();
    for (int i = 0; i < spec.eigenvalues.size(); ++i)
      doc["eigenvalues"].push_back(
          {{"re", spec.eigenvalues(i).real()}, {"im", spec.eigenvalues(i).imag()}});
    doc["real_distinct"] = spec.real_distinct;
    doc["condition_estimate"] = spec.condition_estimate;
    if (family) doc["parallelizable"] = is_parallelizable(o.alpha_tilde);
    std::printf("%s\n", doc.dump(2).c_str());
    return 0;
  }

  std::printf("tableau: %s  (s = %d)\n", method.label().c_str(), tab.s);
  std::printf("c =");
  for (int i = 0; i < tab.s; ++i) std::printf(" %.17g", tab.c(i));
  std::printf("\n");
  for (int k = 0; k < tab.s; ++k) {
    std::printf("M_%d =\n%s", k + 1, mat_to_text(tab.m_list[k]).c_str());
  }
  std::printf("M_sum =\n%s", mat_to_text(tab.m_sum).c_str());
  std::printf("validation (threshold 1e-12):\n");
  for (const auto& e : report.entries) {
    if (!e.applicable)
      std::printf("  %-18s n/a\n", e.name.c_str());
    else
      std::printf("  %-18s %-4s residual = %.3e%s%s\n", e.name.c_str(), e.pass ? "pass" : "FAIL",
                  e.residual, e.note.empty() ? "" : "  ", e.note.c_str());
  }
  std::printf("characteristic polynomial (ascending):");
  for (int i = 0; i < cp.size(); ++i) std::printf(" %.17g", cp(i));
  std::printf("\neigenvalues:");
  for (int i = 0; i < spec.eigenvalues.size(); ++i)
    std::printf(" (%.17g, %.17g)", spec.eigenvalues(i).real(), spec.eigenvalues(i).imag());
  std::printf("\nreal distinct spectrum: %s (condition estimate %.3e)\n",
              spec.real_distinct ? "yes" : "no", spec.condition_estimate);
  if (family)
    std::printf("parallelizable family point: %s\n", is_parallelizable(o.alpha_tilde) ? "yes" : "no");
  std::printf("block solver available: %s\n", spec.real_distinct ? "yes" : "no");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliOpts o;
  CLI::App app{"energy-preserving partitioned continuous-stage Runge-Kutta methods"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h/--h for the step size
  app.set_config("--config", "", "key=value config file; command-line flags override it");
  app.add_option("--out", o.out,
                 "output directory, or explicit output file when the extension matches")
      ->capture_default_str();
  app.add_option("--quad-tol", o.quad_tol, "adaptive quadrature tolerance")->capture_default_str();
  app.add_option("--quad-max-nodes", o.quad_max_nodes, "quadrature node cap (8..64)")
      ->capture_default_str();
  app.add_option("--newton-tol", o.newton_tol, "newton update tolerance")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads for the block solver")
      ->capture_default_str();

  auto add_method = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--method", o.method, "avf2 | avf4 | family")
        ->check(CLI::IsMember({"avf2", "avf4", "family"}))
        ->capture_default_str();
    sub->add_option("--alpha-tilde", o.alpha_tilde, "family parameter alpha~ (nonzero)")
        ->capture_default_str();
    sub->add_option("--c1", o.c1,
                    "family node c1 in (0,1/2); default: distinguished point for alpha~");
    sub->add_option("--gamma", o.gamma, "family parameters g1,g2,g3,g4")
        ->delimiter(',')
        ->expected(4);
  };
  auto add_run = [&](CLI::App* sub, bool with_problem) {
    if (with_problem)
      sub->add_option("--problem", o.problem, "lv | quadratic | synthetic")
          ->check(CLI::IsMember({"lv", "quadratic", "synthetic"}))
          ->capture_default_str();
    sub->add_option("--h", o.h, "step size")->capture_default_str();
    sub->add_option("--t-end", o.t_end, "horizon (default: 10 for integrate/drift, 1 for converge)");
    sub->add_option("--solver", o.solver, "auto | full | block")
        ->check(CLI::IsMember({"auto", "full", "block"}))
        ->capture_default_str();
    sub->add_option("--max-newton-iters", o.max_newton_iters, "newton sweep cap per step")
        ->capture_default_str();
    sub->add_option("--dim", o.dim, "synthetic problem dimension")->capture_default_str();
    sub->add_option("--seed", o.seed, "synthetic problem seed")->capture_default_str();
  };

  CLI::App* s_int = app.add_subcommand("integrate", "fixed-step run; writes the trajectory CSV");
  add_method(s_int);
  add_run(s_int, true);
  CLI::App* s_conv = app.add_subcommand("converge", "step-size ladder error study");
  add_method(s_conv);
  add_run(s_conv, true);
  CLI::App* s_drift = app.add_subcommand("drift", "energy/invariant drift along one trajectory");
  add_method(s_drift);
  add_run(s_drift, true);
  CLI::App* s_bench = app.add_subcommand("bench", "solver wall-time comparison (informational)");
  add_method(s_bench);
  add_run(s_bench, false);
  s_bench->add_option("--steps", o.bench_steps, "timed steps per case")->capture_default_str();
  CLI::App* s_trees =
      app.add_subcommand("verify-trees", "elementary weights vs exact coefficients per tree");
  add_method(s_trees);
  s_trees->add_option("--max-order", o.max_order, "largest tree order (1..6)")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  s_trees->add_option("--format", o.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  CLI::App* s_insp = app.add_subcommand("inspect-tableau", "matrices, residuals, spectrum");
  add_method(s_insp);
  s_insp->add_flag("--json", o.json_out, "emit JSON instead of text");

  for (CLI::App* sub : {s_int, s_conv, s_drift, s_bench, s_trees, s_insp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (s_int->parsed()) return run_integrate(o);
    if (s_conv->parsed()) return run_converge(o);
    if (s_drift->parsed()) return run_drift(o);
    if (s_bench->parsed()) return run_bench(o);
    if (s_trees->parsed()) return run_verify_trees(o);
    if (s_insp->parsed()) return run_inspect(o);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  }
  return 0;
}
