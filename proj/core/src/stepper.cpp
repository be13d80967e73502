#include "pcsrk/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pcsrk/errors.hpp"
#include "pcsrk/quad.hpp"

namespace pcsrk {

namespace {

// Run body(i) for i in [0, n) across at most `threads` std::threads.
template <class F>
void parallel_for(int n, int threads, F&& body) {
  const int nt = std::min(threads, n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += nt) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

Vec stage_nodes(const PcsrkTableau& tab) {
  Vec nodes(tab.s + 1);
  nodes(0) = 0.0;
  for (int i = 0; i < tab.s; ++i) nodes(i + 1) = tab.c(i);
  return nodes;
}

// r(tau) = (tau, tau^2/2, ..., tau^s/s).
Vec r_vector(int s, double tau) {
  Vec r(s);
  double p = 1.0;
  for (int k = 0; k < s; ++k) {
    p *= tau;
    r(k) = p / (k + 1);
  }
  return r;
}

Mat hessian_at(const PoissonSystem& sys, const Vec& y) {
  if (sys.hess_h) return sys.hess_h(y);
  return fd_hessian(sys, y, fd_default_step(y));
}

// G = int_0^1 v(sigma) grad H(Y_sigma)^T dsigma, an s x d matrix; one
// adaptive pass, so grad H is evaluated once per quadrature node.
Mat stage_gram(const PoissonSystem& sys, const PcsrkTableau& tab, const StageState& st,
               const StepConfig& cfg) {
  const int s = tab.s;
  const int d = sys.dim;
  auto f = [&](double sigma) {
    const Vec g = sys.grad_h(dense_eval(st, sigma));
    Vec out(s * d);
    double p = 1.0;
    for (int k = 0; k < s; ++k) {
      out.segment(k * d, d) = p * g;
      p *= sigma;
    }
    return out;
  };
  const Vec flat = integrate_vec(f, cfg.quad_tol, 8, cfg.quad_max_nodes);
  Mat g(s, d);
  for (int k = 0; k < s; ++k) g.row(k) = flat.segment(k * d, d).transpose();
  return g;
}

struct StepCache {
  bool spec_ready = false;
  SpectralData spec;
  bool factors_ready = false;
  SolverMode factored_mode = SolverMode::full;
  double factored_h = 0.0;
  Eigen::PartialPivLU<Mat> full_lu;
  std::vector<Eigen::PartialPivLU<Mat>> block_lus;
};

std::pair<StageState, StepReport> newton_impl(const PoissonSystem& sys, const PcsrkTableau& tab,
                                              const Vec& y0, const StepConfig& cfg,
                                              const std::vector<Vec>* init, StepCache* cache) {
  const auto t_start = std::chrono::steady_clock::now();
  cfg.check();
  if (tab.s <= 0 || sys.dim <= 0) throw ConfigError("newton_solve: empty tableau or system");
  const int s = tab.s;
  const int d = sys.dim;
  const double h = cfg.h;
  const double scale = std::max(1.0, y0.lpNorm<Eigen::Infinity>());

  StepReport rep;

  StepCache local;
  StepCache& cc = cache ? *cache : local;
  if (!cc.spec_ready) {
    cc.spec = e_matrix(tab);
    cc.spec_ready = true;
  }
  const SpectralData& spec = cc.spec;

  SolverMode mode = cfg.solver_mode;
  if (mode == SolverMode::auto_mode)
    mode = spec.real_distinct ? SolverMode::block : SolverMode::full;
  if (mode == SolverMode::block && !spec.real_distinct)
    throw SolverError("block solver requires a real distinct spectrum (alpha_tilde below the parallelizability threshold?)");
  rep.solver_mode_used = mode;

  const bool reuse = cfg.jacobian_refresh == JacobianRefresh::frozen && cc.factors_ready &&
                     cc.factored_mode == mode && cc.factored_h == h;
  if (!reuse) {
    const Mat j0 = sys.s_matrix(y0) * hessian_at(sys, y0);
    if (mode == SolverMode::full) {
      Mat k = Mat::Identity(s * d, s * d);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) k.block(i * d, j * d, d, d) -= h * spec.e(i, j) * j0;
      cc.full_lu.compute(k);
      rep.factorization_count = 1;
    } else {
      cc.block_lus.assign(s, Eigen::PartialPivLU<Mat>());
      parallel_for(s, cfg.threads, [&](int i) {
        const double lam = spec.eigenvalues(i).real();
        cc.block_lus[i].compute(Mat::Identity(d, d) - h * lam * j0);
      });
      rep.factorization_count = s;
    }
    cc.factors_ready = true;
    cc.factored_mode = mode;
    cc.factored_h = h;
  }

  StageState st;
  st.base = y0;
  st.nodes = stage_nodes(tab);
  if (init && static_cast<int>(init->size()) == s) {
    st.stage_values = *init;
  } else {
    st.stage_values.assign(s, y0);
  }

  double res0 = 0.0, res_prev = 0.0;
  int grew = 0;
  bool converged = false;
  for (int l = 1; l <= cfg.max_newton_iters; ++l) {
    const Vec phi = residual(sys, tab, st, cfg);
    const double res_norm = phi.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res_norm)) throw SolverError("newton diverged (non-finite residual)");
    if (l == 1) {
      res0 = res_norm;
      if (res_norm == 0.0) {  // h = 0 with a cold start lands here
        converged = true;
        rep.iterations = 0;
        rep.final_residual_norm = 0.0;
        break;
      }
    } else {
      grew = (res_norm > res_prev && res_norm > 1e3 * res0) ? grew + 1 : 0;
      if (grew >= 2) throw SolverError("newton diverged");
    }
    res_prev = res_norm;

    Vec rho(s * d);
    if (mode == SolverMode::full) {
      rho = cc.full_lu.solve(-phi);
    } else {
      std::vector<Vec> w(s);
      for (int i = 0; i < s; ++i) {
        Vec wi = Vec::Zero(d);
        for (int k = 0; k < s; ++k) wi -= spec.t_inv(i, k) * phi.segment(k * d, d);
        w[i] = std::move(wi);
      }
      std::vector<Vec> z(s);
      parallel_for(s, cfg.threads, [&](int i) { z[i] = cc.block_lus[i].solve(w[i]); });
      for (int i = 0; i < s; ++i) {
        Vec ri = Vec::Zero(d);
        for (int k = 0; k < s; ++k) ri += spec.t(i, k) * z[k];
        rho.segment(i * d, d) = ri;
      }
    }

    for (int i = 0; i < s; ++i) st.stage_values[i] += rho.segment(i * d, d);
    rep.iterations = l;
    const double upd = rho.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(upd)) throw SolverError("newton diverged (non-finite update)");
    if (upd <= cfg.newton_tol * scale) {
      converged = true;
      rep.final_residual_norm = upd;
      break;
    }
  }
  if (!converged)
    throw SolverError("newton: max iterations (" + std::to_string(cfg.max_newton_iters) +
                      ") without convergence");

  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return {std::move(st), rep};
}

StepResult step_impl(const PoissonSystem& sys, const PcsrkTableau& tab, const Vec& y0,
                     const StepConfig& cfg, const std::vector<Vec>* init, StepCache* cache) {
  const auto t_start = std::chrono::steady_clock::now();
  auto [st, rep] = newton_impl(sys, tab, y0, cfg, init, cache);

  const int s = tab.s;
  const Mat g = stage_gram(sys, tab, st, cfg);
  const Vec r1 = r_vector(s, 1.0);
  Vec y1 = y0;
  for (int j = 0; j < s; ++j) {
    const Vec u = g.transpose() * (tab.m_list[j].transpose() * r1);
    y1 += cfg.h * (sys.s_matrix(st.stage_values[j]) * u);
  }

  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return {std::move(y1), std::move(st), rep};
}

}  // namespace

void StepConfig::check() const {
  if (!std::isfinite(h)) throw ConfigError("StepConfig: h must be finite");
  if (!(newton_tol > 0.0) || !(quad_tol > 0.0))
    throw ConfigError("StepConfig: tolerances must be positive");
  if (max_newton_iters < 1) throw ConfigError("StepConfig: max_newton_iters must be >= 1");
  if (quad_max_nodes < 8 || quad_max_nodes > 64)
    throw ConfigError("StepConfig: quad_max_nodes must lie in [8, 64]");
  if (threads < 1) throw ConfigError("StepConfig: threads must be >= 1");
}

Vec dense_eval(const StageState& st, double tau) {
  const int s = static_cast<int>(st.stage_values.size());
  const Vec c = st.nodes.tail(s);
  const Vec w = dense_weights(c, tau);
  Vec out = w(0) * st.base;
  for (int i = 0; i < s; ++i) out += w(i + 1) * st.stage_values[i];
  return out;
}

Vec residual(const PoissonSystem& sys, const PcsrkTableau& tab, const StageState& st,
             const StepConfig& cfg) {
  const int s = tab.s;
  const int d = sys.dim;
  if (static_cast<int>(st.stage_values.size()) != s)
    throw ConfigError("residual: stage count does not match the tableau");
  const Mat g = stage_gram(sys, tab, st, cfg);

  std::vector<Mat> s_j(s);
  for (int j = 0; j < s; ++j) s_j[j] = sys.s_matrix(st.stage_values[j]);

  Vec phi(s * d);
  for (int i = 0; i < s; ++i) {
    const Vec ri = r_vector(s, tab.c(i));
    Vec acc = st.stage_values[i] - st.base;
    for (int j = 0; j < s; ++j) {
      const Vec u = g.transpose() * (tab.m_list[j].transpose() * ri);
      acc -= cfg.h * (s_j[j] * u);
    }
    phi.segment(i * d, d) = acc;
  }
  return phi;
}

std::pair<StageState, StepReport> newton_solve(const PoissonSystem& sys, const PcsrkTableau& tab,
                                               const Vec& y0, const StepConfig& cfg) {
  return newton_impl(sys, tab, y0, cfg, nullptr, nullptr);
}

StepResult step(const PoissonSystem& sys, const PcsrkTableau& tab, const Vec& y0,
                const StepConfig& cfg) {
  return step_impl(sys, tab, y0, cfg, nullptr, nullptr);
}

Trajectory integrate(const PoissonSystem& sys, const PcsrkTableau& tab, const Vec& y0, double h,
                     double t_end, const StepConfig& cfg) {
  StepConfig scfg = cfg;
  scfg.h = h;
  scfg.check();
  if (h == 0.0) throw ConfigError("integrate: step size must be nonzero");
  const double ratio = t_end / h;
  const long long n = std::llround(ratio);
  if (n < 0 || std::abs(static_cast<double>(n) * h - t_end) > 1e-9 * std::max(1.0, std::abs(t_end)))
    throw ConfigError("integrate: t_end/h must be a nonnegative integer step count");

  Trajectory traj;
  traj.invariant_names.reserve(sys.invariants.size());
  for (const auto& inv : sys.invariants) traj.invariant_names.push_back(inv.first);
  traj.invariant_values.assign(sys.invariants.size(), {});

  auto record = [&](double t, const Vec& y) {
    traj.times.push_back(t);
    traj.states.push_back(y);
    traj.energy.push_back(sys.energy(y));
    for (size_t q = 0; q < sys.invariants.size(); ++q)
      traj.invariant_values[q].push_back(sys.invariants[q].second(y));
  };
  record(0.0, y0);

  StepCache cache;
  Vec y = y0;
  std::vector<Vec> warm;
  bool have_warm = false;
  for (long long k = 1; k <= n; ++k) {
    const std::vector<Vec>* init = (scfg.warm_start && have_warm) ? &warm : nullptr;
    StepResult res;
    bool ok = false;
    std::string err;
    // Fallback chain: as configured -> drop the warm seed -> refresh frozen factors.
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      if (attempt == 1 && !init) continue;
      if (attempt == 2) {
        if (scfg.jacobian_refresh != JacobianRefresh::frozen) break;
        cache.factors_ready = false;
      }
      try {
        res = step_impl(sys, tab, y, scfg, attempt == 0 ? init : nullptr, &cache);
        ok = true;
      } catch (const std::runtime_error& e) {
        err = e.what();
      }
    }
    if (!ok) {
      traj.aborted = true;
      traj.abort_reason = err;
      break;
    }
    y = res.y1;
    record(static_cast<double>(k) * h, y);
    traj.reports.push_back(res.report);
    if (scfg.warm_start) {
      const Vec c = res.stages.nodes.tail(tab.s);
      warm.assign(tab.s, Vec());
      for (int i = 0; i < tab.s; ++i) {
        const Vec w = dense_weights(c, 1.0 + c(i));
        Vec guess = w(0) * res.stages.base;
        for (int j = 0; j < tab.s; ++j) guess += w(j + 1) * res.stages.stage_values[j];
        warm[i] = std::move(guess);
      }
      have_warm = true;
    }
  }
  return traj;
}

}  // namespace pcsrk
