#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcsrk/model.hpp"
#include "pcsrk/tableau.hpp"
#include "pcsrk/types.hpp"

namespace pcsrk {

enum class SolverMode { auto_mode, full, block };
enum class JacobianRefresh { per_step, frozen };

// One-step solver configuration. newton_tol bounds the max-norm of the Newton
// update relative to max(1, ||y0||_inf). h may be negative (adjoint steps);
// h = 0 degenerates to y1 = y0 in zero iterations. jacobian_refresh = frozen
// reuses one Jacobian factorization across an integrate() run, refreshing it
// only when a step fails to converge. warm_start seeds each step's stages by
// extrapolating the previous step's stage polynomial (off by default;
// failures retry from a cold start).
// threads bounds the concurrency of the s independent block solves.
struct StepConfig {
  double h = 0.0;
  double newton_tol = 1e-13;
  int max_newton_iters = 50;
  SolverMode solver_mode = SolverMode::auto_mode;
  double quad_tol = 1e-12;
  int quad_max_nodes = 64;
  JacobianRefresh jacobian_refresh = JacobianRefresh::per_step;
  bool warm_start = false;
  int threads = 1;

  void check() const;  // throws ConfigError on non-finite h or non-positive tolerances/limits
};

// Stage polynomial of one step: values Y_{c_1}..Y_{c_s} plus the base point
// y0 attached to the node 0, so nodes = (0, c_1, ..., c_s) has size s+1.
struct StageState {
  std::vector<Vec> stage_values;
  Vec base;
  Vec nodes;
};

// Per-step diagnostics. final_residual_norm is the max-norm of the last
// Newton update (the convergence quantity); factorization_count counts the
// matrix factorizations performed this step (1 full LU, or s block LUs; 0
// when frozen factorizations were reused).
struct StepReport {
  int iterations = 0;
  double final_residual_norm = 0.0;
  SolverMode solver_mode_used = SolverMode::full;
  int factorization_count = 0;
  double wall_time = 0.0;  // seconds
};

// Lagrange evaluation of the stage polynomial over {0, c_1, ..., c_s}:
// Y_tau = y0 l_0(tau) + sum_i Y_{c_i} l_i(tau). tau = 0 returns y0 exactly.
Vec dense_eval(const StageState& st, double tau);

// Stacked nonlinear residual, i-th block (i = 1..s)
//   Phi_i = Y_{c_i} - y0 - h sum_j int_0^1 A_{c_i,j,sigma} S(Y_{c_j}) grad H(Y_sigma) dsigma,
// with the sigma-integral evaluated adaptively (quad_tol); the three stage
// integrals share one node set so grad H(Y_sigma) is computed once per node.
Vec residual(const PoissonSystem& sys, const PcsrkTableau& t, const StageState& st,
             const StepConfig& cfg);

// Simplified Newton iteration for the stage equations: starting from all
// stages = y0, each sweep solves (I - h E (x) J0) rho = -Phi with
// J0 = S(y0) hess H(y0) frozen for the step (hess_h when provided, otherwise
// fd_hessian; the grad-S term is omitted). Mode full factors the dense sN x sN
// matrix once per step; mode block transforms by T^{-1} (x) I, solves the s
// independent d x d systems (I - h lambda_i J0) -- concurrently when
// threads > 1 -- and maps back by T (x) I. Mode auto selects block iff the
// spectrum is real and distinct; forcing block without one throws SolverError.
// Converges when ||rho||_inf <= newton_tol * max(1, ||y0||_inf); throws
// SolverError("newton diverged") when ||Phi||_inf grows on two consecutive
// iterations while above 1e3 x its initial value, and "max iterations" past
// max_newton_iters.
std::pair<StageState, StepReport> newton_solve(const PoissonSystem& sys, const PcsrkTableau& t,
                                               const Vec& y0, const StepConfig& cfg);

struct StepResult {
  Vec y1;
  StageState stages;
  StepReport report;
};

// One full step: solve the stage equations, then
//   y1 = y0 + h sum_j int_0^1 B_{j,tau} S(Y_{c_j}) grad H(Y_tau) dtau
// with the same quadrature machinery, B evaluated at the converged stages.
StepResult step(const PoissonSystem& sys, const PcsrkTableau& t, const Vec& y0,
                const StepConfig& cfg);

// Fixed-step trajectory with per-step energy/invariant records. All vectors
// hold n+1 entries (state 0 = y0) except reports (one per completed step).
// A failed step sets aborted and retains the partial trajectory.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<double> energy;
  std::vector<std::string> invariant_names;
  std::vector<std::vector<double>> invariant_values;  // [invariant][step]
  std::vector<StepReport> reports;
  bool aborted = false;
  std::string abort_reason;
};

// March from y0 to t_end in fixed steps of h (cfg.h is ignored in favour of
// h). t_end/h must be a nonnegative integral step count; t_end = 0 yields the
// single-state trajectory [y0].
Trajectory integrate(const PoissonSystem& sys, const PcsrkTableau& t, const Vec& y0, double h,
                     double t_end, const StepConfig& cfg);

}  // namespace pcsrk
