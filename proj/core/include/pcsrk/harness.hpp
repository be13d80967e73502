#pragma once

#include <string>
#include <vector>

#include "pcsrk/model.hpp"
#include "pcsrk/stepper.hpp"
#include "pcsrk/tableau.hpp"
#include "pcsrk/types.hpp"

namespace pcsrk {

// Method selector shared by the experiment drivers and the CLI.
struct MethodSpec {
  enum class Kind { avf2, avf4, family };
  Kind kind = Kind::family;
  FamilyParams params = optimal_family_params(-234.0);  // used when kind == family

  PcsrkTableau build() const;
  std::string label() const;
};

// Experiment driver configuration. The step-size ladder (strictly decreasing)
// drives converge(); h drives drift() and bench(); t_end/h must be integral
// for every ladder entry and for h. The reference solution of a convergence
// study uses the same method at step (smallest ladder h) / reference_factor.
// solver.max_newton_iters defaults to 500 here (vs 50 for a bare StepConfig)
// so coarse ladder rungs fail only on true divergence. The seed determines
// the synthetic benchmark problem; every driver is deterministic given the
// config.
struct ExperimentConfig {
  std::string problem = "lv";  // lv | quadratic | synthetic
  MethodSpec method;
  std::vector<double> ladder = default_ladder();
  double h = 0.05;
  double t_end = 1.0;
  double reference_factor = 64.0;
  StepConfig solver = default_solver();
  Vec y0;  // empty -> problem default
  unsigned seed = 2024;
  int synthetic_dim = 300;
  int bench_steps = 3;
  std::string out_dir = ".";

  static std::vector<double> default_ladder();  // 0.25 * 2^-k, k = 0..7
  static StepConfig default_solver();
  void check() const;  // throws ConfigError
};

// Named problem instances. "lv" is the 3-d Lotka-Volterra system with its
// default parameters, "quadratic" a fixed 4-d constant-S quadratic system,
// "synthetic" the seeded benchmark problem below.
PoissonSystem make_problem(const ExperimentConfig& cfg);
Vec default_initial_state(const ExperimentConfig& cfg);

// Dense nonlinear benchmark problem of dimension d: constant random skew S,
// random symmetric A, H(y) = y^T A y / 2 + b^T y + sum_i q_i y_i^4 / 4 with
// q_i > 0, analytic Hessian. Deterministic given the seed.
PoissonSystem synthetic_poisson(int dim, unsigned seed);
Vec synthetic_initial_state(int dim, unsigned seed);

struct ConvergenceRow {
  double h = 0.0;
  double error = 0.0;        // NaN when the run failed
  double local_slope = 0.0;  // two-point slope vs the previous resolved row; NaN when undefined
  bool failed = false;
  std::string note;  // failure annotation
};

struct ConvergenceTable {
  std::string method_label;
  double reference_h = 0.0;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  // least-squares fit over the smallest fit_points resolved h
  int fit_points = 0;
  std::string csv() const;  // header h,error,local_slope,note; 17 significant digits
  std::string summary() const;
};

// Error at t_end (Euclidean norm against the tiny-step self-reference) for
// each ladder entry; failed rungs are annotated and excluded from the
// least-squares slope, which is fitted over the smallest 5 resolved rungs.
ConvergenceTable converge(const ExperimentConfig& cfg);

struct DriftTable {
  std::string method_label;
  std::vector<double> times;
  std::vector<double> dh;  // H(y_n) - H(y_0)
  std::vector<std::string> invariant_names;
  std::vector<std::vector<double>> dinv;  // [invariant][step]
  double max_abs_dh = 0.0;
  std::vector<double> max_abs_dinv;
  bool aborted = false;
  std::string abort_reason;
  std::string csv() const;  // header t,dH,d_<name>...
  std::string summary() const;
};

// Time series of the energy and invariant deviations along one fixed-step
// trajectory (step h, horizon t_end), with their maxima.
DriftTable drift(const ExperimentConfig& cfg);

struct BenchEntry {
  std::string label;
  SolverMode mode = SolverMode::full;
  int threads = 1;
  double seconds_per_step = 0.0;
  int iterations = 0;  // Newton sweeps in the timed step
};

struct BenchTable {
  int dim = 0;
  unsigned hardware_threads = 0;  // std::thread::hardware_concurrency() at run time
  std::vector<BenchEntry> entries;
  std::string csv() const;
  std::string summary() const;  // includes wall-time ratios; informational only
};

// Per-step wall time on the synthetic problem for the configured family in
// block mode (1 and s threads) and full mode, and for avf4 in full mode.
// Measurements are informational; no threshold is implied.
BenchTable bench(const ExperimentConfig& cfg);

// CSV with columns step,t,y_1..y_d,H,<each invariant>,newton_iters,residual.
std::string trajectory_csv(const Trajectory& traj);

// 17-significant-digit scientific formatting used by every CSV writer.
std::string fmt17(double x);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pcsrk
