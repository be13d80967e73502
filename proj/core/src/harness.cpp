#include "pcsrk/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "pcsrk/errors.hpp"

namespace pcsrk {

namespace {

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n') ch = ';';
    if (ch == ' ') ch = '_';
  }
  return s;
}

bool integral_steps(double t_end, double h) {
  const double ratio = t_end / h;
  const long long n = std::llround(ratio);
  return n >= 0 && std::abs(static_cast<double>(n) * h - t_end) <= 1e-9 * std::max(1.0, std::abs(t_end));
}

// Least-squares slope of ln(err) vs ln(h).
double ls_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
  const int n = static_cast<int>(hs.size());
  if (n < 2) return std::nan("");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += std::log(hs[i]);
    my += std::log(errs[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::log(hs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errs[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

PcsrkTableau MethodSpec::build() const {
  switch (kind) {
    case Kind::avf2:
      return classic_tableau(ClassicKind::avf2);
    case Kind::avf4:
      return classic_tableau(ClassicKind::avf4);
    default:
      return fourth_order_family(params);
  }
}

std::string MethodSpec::label() const {
  switch (kind) {
    case Kind::avf2:
      return "avf2";
    case Kind::avf4:
      return "avf4";
    default: {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "family(c1=%g,alpha_tilde=%g)", params.c1,
                    params.alpha_tilde);
      return buf;
    }
  }
}

std::vector<double> ExperimentConfig::default_ladder() {
  std::vector<double> hs;
  double h = 0.25;
  for (int k = 0; k <= 7; ++k, h *= 0.5) hs.push_back(h);
  return hs;
}

StepConfig ExperimentConfig::default_solver() {
  StepConfig c;
  c.max_newton_iters = 500;
  return c;
}

void ExperimentConfig::check() const {
  if (ladder.empty()) throw ConfigError("ExperimentConfig: ladder must be non-empty");
  for (size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || !std::isfinite(ladder[i]))
      throw ConfigError("ExperimentConfig: ladder entries must be positive and finite");
    if (i > 0 && !(ladder[i] < ladder[i - 1]))
      throw ConfigError("ExperimentConfig: ladder must be strictly decreasing");
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("ExperimentConfig: h must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw ConfigError("ExperimentConfig: t_end must be nonnegative");
  if (t_end > 0.0) {
    for (double hk : ladder)
      if (!integral_steps(t_end, hk))
        throw ConfigError("ExperimentConfig: t_end must be an integral number of steps for every ladder entry");
    if (!integral_steps(t_end, h))
      throw ConfigError("ExperimentConfig: t_end must be an integral number of steps of h");
  }
  if (!(reference_factor >= 1.0))
    throw ConfigError("ExperimentConfig: reference_factor must be >= 1");
  if (synthetic_dim < 1) throw ConfigError("ExperimentConfig: synthetic_dim must be >= 1");
  if (bench_steps < 1) throw ConfigError("ExperimentConfig: bench_steps must be >= 1");
  solver.check();
}

PoissonSystem synthetic_poisson(int dim, unsigned seed) {
  if (dim < 1) throw ConfigError("synthetic_poisson: dim must be >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Mat k(dim, dim), r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) k(i, j) = u(rng);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = u(rng);
  Mat s = (k - k.transpose()) * (0.5 * scale);
  Mat a = (r + r.transpose()) * (0.5 * scale) + Mat::Identity(dim, dim);
  Vec b(dim), q(dim);
  for (int i = 0; i < dim; ++i) b(i) = 0.1 * u(rng);
  for (int i = 0; i < dim; ++i) q(i) = 0.05 * (1.5 + u(rng) / 2.0);

  PoissonSystem sys;
  sys.dim = dim;
  sys.name = "synthetic(d=" + std::to_string(dim) + ",seed=" + std::to_string(seed) + ")";
  sys.s_matrix = [s](const Vec&) { return s; };
  sys.grad_h = [a, b, q](const Vec& y) -> Vec {
    return a * y + b + (q.array() * y.array().cube()).matrix();
  };
  sys.energy = [a, b, q](const Vec& y) {
    return 0.5 * y.dot(a * y) + b.dot(y) + 0.25 * (q.array() * y.array().square().square()).sum();
  };
  sys.hess_h = [a, q](const Vec& y) -> Mat {
    Mat hh = a;
    hh.diagonal() += (3.0 * q.array() * y.array().square()).matrix();
    return hh;
  };
  return sys;
}

Vec synthetic_initial_state(int dim, unsigned seed) {
  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec y0(dim);
  for (int i = 0; i < dim; ++i) y0(i) = 0.3 * u(rng);
  return y0;
}

PoissonSystem make_problem(const ExperimentConfig& cfg) {
  if (cfg.problem == "lv") return lotka_volterra();
  if (cfg.problem == "quadratic") {
    Mat s = Mat::Zero(4, 4);
    s(0, 1) = 1.0;
    s(1, 0) = -1.0;
    s(1, 2) = 2.0;
    s(2, 1) = -2.0;
    s(2, 3) = -0.5;
    s(3, 2) = 0.5;
    Mat a(4, 4);
    a << 2.0, 0.3, 0.0, 0.1, 0.3, 1.5, -0.2, 0.0, 0.0, -0.2, 1.0, 0.4, 0.1, 0.0, 0.4, 2.5;
    Vec b(4);
    b << 0.1, -0.3, 0.2, 0.05;
    return constant_s_quadratic(s, a, b);
  }
  if (cfg.problem == "synthetic") return synthetic_poisson(cfg.synthetic_dim, cfg.seed);
  throw ConfigError("unknown problem: " + cfg.problem);
}

Vec default_initial_state(const ExperimentConfig& cfg) {
  if (cfg.y0.size() > 0) return cfg.y0;
  if (cfg.problem == "lv") {
    Vec y0(3);
    y0 << 1.0, 1.9, 0.5;
    return y0;
  }
  if (cfg.problem == "quadratic") {
    Vec y0(4);
    y0 << 0.4, -0.2, 0.7, 0.1;
    return y0;
  }
  if (cfg.problem == "synthetic") return synthetic_initial_state(cfg.synthetic_dim, cfg.seed);
  throw ConfigError("unknown problem: " + cfg.problem);
}

ConvergenceTable converge(const ExperimentConfig& cfg) {
  cfg.check();
  const PoissonSystem sys = make_problem(cfg);
  const Vec y0 = default_initial_state(cfg);
  const PcsrkTableau tab = cfg.method.build();

  ConvergenceTable table;
  table.method_label = cfg.method.label();
  table.reference_h = cfg.ladder.back() / cfg.reference_factor;

  const Trajectory ref = integrate(sys, tab, y0, table.reference_h, cfg.t_end, cfg.solver);
  if (ref.aborted)
    throw SolverError("converge: reference solution failed: " + ref.abort_reason);
  const Vec ref_end = ref.states.back();

  double prev_h = 0.0, prev_err = 0.0;
  bool have_prev = false;
  for (double hk : cfg.ladder) {
    ConvergenceRow row;
    row.h = hk;
    const Trajectory traj = integrate(sys, tab, y0, hk, cfg.t_end, cfg.solver);
    if (traj.aborted) {
      row.failed = true;
      row.error = std::nan("");
      row.local_slope = std::nan("");
      row.note = sanitize(traj.abort_reason);
    } else {
      row.error = (traj.states.back() - ref_end).norm();
      if (have_prev && row.error > 0.0 && prev_err > 0.0)
        row.local_slope = std::log(prev_err / row.error) / std::log(prev_h / hk);
      else
        row.local_slope = std::nan("");
      prev_h = hk;
      prev_err = row.error;
      have_prev = true;
    }
    table.rows.push_back(std::move(row));
  }

  std::vector<double> hs, errs;
  for (const auto& row : table.rows)
    if (!row.failed && row.error > 0.0 && std::isfinite(row.error)) {
      hs.push_back(row.h);
      errs.push_back(row.error);
    }
  const int keep = std::min<int>(5, static_cast<int>(hs.size()));
  hs.erase(hs.begin(), hs.end() - keep);
  errs.erase(errs.begin(), errs.end() - keep);
  table.fit_points = keep;
  table.slope = ls_slope(hs, errs);
  return table;
}

std::string ConvergenceTable::csv() const {
  std::ostringstream out;
  out << "h,error,local_slope,note\n";
  for (const auto& row : rows)
    out << fmt17(row.h) << ',' << fmt17(row.error) << ',' << fmt17(row.local_slope) << ','
        << row.note << '\n';
  return out.str();
}

std::string ConvergenceTable::summary() const {
  std::ostringstream out;
  out << "convergence study: method " << method_label << ", reference h = " << fmt17(reference_h)
      << "\n";
  for (const auto& row : rows) {
    if (row.failed)
      out << "  h = " << fmt17(row.h) << "  FAILED (" << row.note << ")\n";
    else
      out << "  h = " << fmt17(row.h) << "  error = " << fmt17(row.error)
          << "  local slope = " << fmt17(row.local_slope) << "\n";
  }
  out << "least-squares slope over the smallest " << fit_points
      << " resolved rungs: " << fmt17(slope) << "\n";
  return out.str();
}

DriftTable drift(const ExperimentConfig& cfg) {
  cfg.check();
  const PoissonSystem sys = make_problem(cfg);
  const Vec y0 = default_initial_state(cfg);
  const PcsrkTableau tab = cfg.method.build();

  const Trajectory traj = integrate(sys, tab, y0, cfg.h, cfg.t_end, cfg.solver);
  DriftTable table;
  table.method_label = cfg.method.label();
  table.times = traj.times;
  table.invariant_names = traj.invariant_names;
  table.dinv.assign(traj.invariant_names.size(), {});
  table.max_abs_dinv.assign(traj.invariant_names.size(), 0.0);
  table.aborted = traj.aborted;
  table.abort_reason = traj.abort_reason;
  for (size_t n = 0; n < traj.energy.size(); ++n) {
    const double dh = traj.energy[n] - traj.energy[0];
    table.dh.push_back(dh);
    table.max_abs_dh = std::max(table.max_abs_dh, std::fabs(dh));
    for (size_t q = 0; q < traj.invariant_names.size(); ++q) {
      const double dc = traj.invariant_values[q][n] - traj.invariant_values[q][0];
      table.dinv[q].push_back(dc);
      table.max_abs_dinv[q] = std::max(table.max_abs_dinv[q], std::fabs(dc));
    }
  }
  return table;
}

std::string DriftTable::csv() const {
  std::ostringstream out;
  out << "t,dH";
  for (const auto& name : invariant_names) out << ",d_" << sanitize(name);
  out << '\n';
  for (size_t n = 0; n < times.size(); ++n) {
    out << fmt17(times[n]) << ',' << fmt17(dh[n]);
    for (const auto& series : dinv) out << ',' << fmt17(series[n]);
    out << '\n';
  }
  return out.str();
}

std::string DriftTable::summary() const {
  std::ostringstream out;
  out << "drift study: method " << method_label << ", " << (times.size() - 1) << " steps to t = "
      << fmt17(times.back()) << "\n";
  out << "  max |dH| = " << fmt17(max_abs_dh) << "\n";
  for (size_t q = 0; q < invariant_names.size(); ++q)
    out << "  max |d " << invariant_names[q] << "| = " << fmt17(max_abs_dinv[q]) << "\n";
  if (aborted) out << "  ABORTED: " << abort_reason << "\n";
  return out.str();
}

BenchTable bench(const ExperimentConfig& cfg) {
  cfg.check();
  const PoissonSystem sys = synthetic_poisson(cfg.synthetic_dim, cfg.seed);
  const Vec y0 = synthetic_initial_state(cfg.synthetic_dim, cfg.seed);
  const PcsrkTableau fam = fourth_order_family(cfg.method.params);
  const PcsrkTableau avf4 = classic_tableau(ClassicKind::avf4);

  BenchTable table;
  table.dim = cfg.synthetic_dim;
  table.hardware_threads = std::thread::hardware_concurrency();
  struct Case {
    const char* label;
    const PcsrkTableau* tab;
    SolverMode mode;
    int threads;
  };
  const Case cases[] = {
      {"family/block/1t", &fam, SolverMode::block, 1},
      {"family/block/st", &fam, SolverMode::block, fam.s},
      {"family/full", &fam, SolverMode::full, 1},
      {"avf4/full", &avf4, SolverMode::full, 1},
  };
  for (const Case& c : cases) {
    StepConfig sc = cfg.solver;
    sc.h = cfg.h;
    sc.solver_mode = c.mode;
    sc.threads = c.threads;
    StepResult warm = step(sys, *c.tab, y0, sc);  // warmup, untimed
    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 0; n < cfg.bench_steps; ++n) warm = step(sys, *c.tab, y0, sc);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    BenchEntry e;
    e.label = c.label;
    e.mode = c.mode;
    e.threads = c.threads;
    e.seconds_per_step = total / cfg.bench_steps;
    e.iterations = warm.report.iterations;
    table.entries.push_back(std::move(e));
  }
  return table;
}

std::string BenchTable::csv() const {
  std::ostringstream out;
  out << "label,mode,threads,seconds_per_step,newton_iters\n";
  for (const auto& e : entries)
    out << e.label << ',' << (e.mode == SolverMode::block ? "block" : "full") << ',' << e.threads
        << ',' << fmt17(e.seconds_per_step) << ',' << e.iterations << '\n';
  return out.str();
}

std::string BenchTable::summary() const {
  std::ostringstream out;
  out << "solver benchmark, synthetic problem d = " << dim << ", " << hardware_threads
      << " hardware threads (informational)\n";
  for (const auto& e : entries)
    out << "  " << e.label << ": " << fmt17(e.seconds_per_step) << " s/step ("
        << e.iterations << " newton iters)\n";
  auto find = [&](const std::string& label) -> const BenchEntry* {
    for (const auto& e : entries)
      if (e.label == label) return &e;
    return nullptr;
  };
  const BenchEntry* b1 = find("family/block/1t");
  const BenchEntry* bs = find("family/block/st");
  const BenchEntry* ff = find("family/full");
  const BenchEntry* a4 = find("avf4/full");
  if (b1 && ff)
    out << "  ratio block(1t)/full = " << fmt17(b1->seconds_per_step / ff->seconds_per_step)
        << "\n";
  if (bs && b1)
    out << "  ratio block(st)/block(1t) = "
        << fmt17(bs->seconds_per_step / b1->seconds_per_step) << "\n";
  if (bs && a4)
    out << "  ratio family-block(st)/avf4-full = "
        << fmt17(bs->seconds_per_step / a4->seconds_per_step) << "\n";
  return out.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  const int d = traj.states.empty() ? 0 : static_cast<int>(traj.states[0].size());
  out << "step,t";
  for (int i = 1; i <= d; ++i) out << ",y_" << i;
  out << ",H";
  for (const auto& name : traj.invariant_names) out << ',' << sanitize(name);
  out << ",newton_iters,residual\n";
  for (size_t n = 0; n < traj.states.size(); ++n) {
    out << n << ',' << fmt17(traj.times[n]);
    for (int i = 0; i < d; ++i) out << ',' << fmt17(traj.states[n](i));
    out << ',' << fmt17(traj.energy[n]);
    for (const auto& series : traj.invariant_values) out << ',' << fmt17(series[n]);
    if (n == 0)
      out << ",0," << fmt17(0.0) << '\n';
    else
      out << ',' << traj.reports[n - 1].iterations << ','
          << fmt17(traj.reports[n - 1].final_residual_norm) << '\n';
  }
  return out.str();
}

}  // namespace pcsrk
