#include "sqgcrit/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/error.hpp"
#include "sqgcrit/spectral.hpp"

namespace sqgcrit {

Diagnostics diagnose(const SpectralField& state) {
  return {state.l2_norm(), besov_norm(state, {2.0, 2.0, 1.0}), lp_norm(gradient(state), kInfinity)};
}

void Trajectory::push(double t, SpectralField state) {
  if (!times.empty() && !(t > times.back())) throw DomainError("trajectory times must increase strictly");
  times.push_back(t);
  diagnostics.push_back(diagnose(state));
  states.push_back(std::move(state));
}

double chemin_lerner_norm(const Trajectory& traj, double s) { return chemin_lerner_norm(traj.states, s); }

double linf_l2_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw DomainError("trajectories have different numbers of stored times");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * std::max(1.0, a.times[k])) {
      throw DomainError("trajectories are stored at different times");
    }
    d = std::max(d, (a.states[k] - b.states[k]).l2_norm());
  }
  return d;
}

void SolverConfig::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("solver.T", "final time must be positive");
  if (!(dt > 0.0)) throw ConfigError("solver.dt", "time step must be positive");
  if (dt > horizon) throw ConfigError("solver.dt", "time step exceeds the final time");
  if (!(window >= dt)) throw ConfigError("solver.window", "window must be at least dt");
  if (window > horizon * (1.0 + 1e-12)) throw ConfigError("solver.window", "window exceeds the final time");
  if (!(picard_tol > 0.0)) throw ConfigError("solver.picard_tol", "tolerance must be positive");
  if (picard_max_iter < 1) throw ConfigError("solver.picard_max_iter", "must be at least 1");
  if (store_stride < 1) throw ConfigError("solver.store_stride", "must be at least 1");
  if (!(grad_ceiling > 0.0)) throw ConfigError("solver.grad_ceiling", "must be positive");
}

int SolverConfig::steps() const {
  return std::max(1, static_cast<int>(std::ceil(horizon / dt - 1e-9)));
}

namespace {

class Recorder {
 public:
  Recorder(const SpectralField& theta0, double mu, const SolverConfig& cfg, int steps)
      : cfg_(cfg), steps_(steps), dt_(cfg.horizon / steps) {
    traj_.domain = theta0.domain();
    traj_.mu = mu;
    record(0, theta0);
  }

  // Every step is screened for blow-up; only strided steps are stored.
  void step_done(int step, const SpectralField& state) {
    const double t = step * dt_;
    if (!state.is_finite()) throw BlowUpError("non-finite state at t=" + std::to_string(t), t);
    if (step % cfg_.store_stride == 0 || step == steps_) {
      record(step, state);
    } else {
      const double g = lp_norm(gradient(state), kInfinity);
      if (!(g <= cfg_.grad_ceiling)) throw BlowUpError(blowup_message(t, g), t);
    }
  }

  Trajectory take() { return std::move(traj_); }
  Trajectory& trajectory() { return traj_; }
  double dt() const { return dt_; }

 private:
  static std::string blowup_message(double t, double g) {
    return "gradient sup-norm " + std::to_string(g) + " exceeds ceiling at t=" + std::to_string(t);
  }

  void record(int step, const SpectralField& state) {
    const double t = step == steps_ ? cfg_.horizon : step * dt_;
    traj_.push(t, state);
    const double g = traj_.diagnostics.back().grad_linf;
    if (!(g <= cfg_.grad_ceiling)) throw BlowUpError(blowup_message(t, g), t);
  }

  const SolverConfig& cfg_;
  int steps_;
  double dt_;
  Trajectory traj_;
};

void require_inputs(const SpectralField& theta0, double mu, const SolverConfig& cfg) {
  cfg.validate();
  if (mu < 0.0) throw DomainError("mu must be non-negative");
  if (!theta0.is_finite()) throw DomainError("initial data is not finite");
}

}  // namespace

Trajectory picard_solve(const SpectralField& theta0, double mu, const SolverConfig& cfg) {
  require_inputs(theta0, mu, cfg);
  const NonlinearityConfig nl{cfg.dealias, mu};
  const int steps = cfg.steps();
  Recorder rec(theta0, mu, cfg, steps);
  const double h = rec.dt();
  int window_steps = std::max(1, static_cast<int>(std::lround(cfg.window / h)));

  SpectralField current = theta0;
  int k = 0;
  while (k < steps) {
    const int K = std::min(window_steps, steps - k);
    std::vector<SpectralField> iterate(static_cast<std::size_t>(K) + 1, current);
    std::vector<SpectralField> rhs(static_cast<std::size_t>(K) + 1);
    rhs[0] = nonlinearity(current, current, nl);

    bool converged = false;
    int it = 0;
    double previous_change = std::numeric_limits<double>::infinity();
    for (it = 1; it <= cfg.picard_max_iter; ++it) {
      for (int m = 1; m <= K; ++m) rhs[m] = nonlinearity(iterate[m], iterate[m], nl);
      double change = 0.0, scale = 0.0;
      SpectralField integral = SpectralField::zero(current.domain());
      for (int m = 1; m <= K; ++m) {
        integral.axpy(0.5 * h, rhs[m - 1]).axpy(0.5 * h, rhs[m]);
        SpectralField next = current - integral;
        change = std::max(change, (next - iterate[m]).l2_norm());
        scale = std::max(scale, next.l2_norm());
        iterate[m] = std::move(next);
      }
      if (!std::isfinite(change)) break;
      if (change <= cfg.picard_tol * scale) {
        converged = true;
        break;
      }
      // A contraction shrinks the update every sweep.
      if (it > 2 && change > previous_change) break;
      previous_change = change;
    }

    if (!converged) {
      if (window_steps == 1) {
        const double t = k * h;
        throw ConvergenceError("Picard iteration did not converge on a single step at t=" + std::to_string(t) +
                                   " (mu=" + std::to_string(mu) + ")",
                               t);
      }
      window_steps = std::max(1, window_steps / 2);
      continue;
    }

    rec.trajectory().picard_iterations.push_back(it);
    for (int m = 1; m <= K; ++m) rec.step_done(k + m, iterate[m]);
    current = std::move(iterate[K]);
    k += K;
  }
  return rec.take();
}

Trajectory rk4_solve(const SpectralField& theta0, double mu, const SolverConfig& cfg) {
  require_inputs(theta0, mu, cfg);
  const NonlinearityConfig nl{cfg.dealias, mu};
  const int steps = cfg.steps();
  Recorder rec(theta0, mu, cfg, steps);
  const double h = rec.dt();

  auto rate = [&](const SpectralField& s) { return -1.0 * nonlinearity(s, s, nl); };
  SpectralField state = theta0;
  for (int k = 1; k <= steps; ++k) {
    const SpectralField k1 = rate(state);
    const SpectralField k2 = rate(SpectralField(state).axpy(0.5 * h, k1));
    const SpectralField k3 = rate(SpectralField(state).axpy(0.5 * h, k2));
    const SpectralField k4 = rate(SpectralField(state).axpy(h, k3));
    state.axpy(h / 6.0, k1).axpy(h / 3.0, k2).axpy(h / 3.0, k3).axpy(h / 6.0, k4);
    rec.step_done(k, state);
  }
  return rec.take();
}

Trajectory solve(const SpectralField& theta0, double mu, const SolverConfig& cfg) {
  if (mu == 0.0 || cfg.stepper == Stepper::rk4) return rk4_solve(theta0, mu, cfg);
  return picard_solve(theta0, mu, cfg);
}

double existence_window(const SpectralField& theta0, double c_T) {
  const double norm = besov_norm(theta0, {2.0, 2.0, 1.0});
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  return c_T / norm;
}

SweepReport mu_sweep(const SpectralField& theta0, const std::vector<double>& mus, const SolverConfig& cfg,
                     bool compare_zero, double spread_limit) {
  if (mus.empty()) throw DomainError("mu sweep needs at least one mu");
  for (std::size_t k = 0; k < mus.size(); ++k) {
    if (!(mus[k] > 0.0)) throw DomainError("mu sweep values must be positive");
    if (k > 0 && !(mus[k] < mus[k - 1])) throw DomainError("mu sweep values must decrease");
  }

  SolverConfig picard_cfg = cfg;
  picard_cfg.stepper = Stepper::picard;

  SweepReport report;
  report.mus = mus;
  std::vector<Trajectory> runs;
  runs.reserve(mus.size());
  for (double mu : mus) {
    runs.push_back(picard_solve(theta0, mu, picard_cfg));
    report.chemin_lerner.push_back(chemin_lerner_norm(runs.back(), 2.0));
  }
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    report.consecutive_distance.push_back(linf_l2_distance(runs[k], runs[k + 1]));
  }
  if (compare_zero) {
    const Trajectory zero = rk4_solve(theta0, 0.0, cfg);
    report.zero_limit_distance = linf_l2_distance(runs.back(), zero);
    report.has_zero_limit = true;
  }

  const auto [lo, hi] = std::minmax_element(report.chemin_lerner.begin(), report.chemin_lerner.end());
  report.cl_spread = *lo > 0.0 ? *hi / *lo : (*hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);

  bool rising = report.chemin_lerner.size() >= 3;
  for (std::size_t k = 1; k < report.chemin_lerner.size(); ++k) {
    rising = rising && report.chemin_lerner[k] > report.chemin_lerner[k - 1];
  }
  report.uniform_bound = report.cl_spread <= spread_limit && !rising;

  for (std::size_t k = 1; k < report.consecutive_distance.size(); ++k) {
    if (!(report.consecutive_distance[k] < report.consecutive_distance[k - 1])) report.cauchy = false;
  }
  if (report.has_zero_limit && !report.consecutive_distance.empty()) {
    report.zero_limit_ok = report.zero_limit_distance < report.consecutive_distance.front();
  }
  return report;
}

double GrowthReport::envelope_excess() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < ratio.size(); ++k) {
    worst = std::max(worst, ratio[k] / std::exp(fitted_constant * grad_integral[k]));
  }
  return worst;
}

GrowthReport gronwall_check(const SpectralField& theta0, const SpectralField& perturbation, double mu,
                            const SolverConfig& cfg) {
  GrowthReport report;
  const Trajectory base = solve(theta0, mu, cfg);
  report.times = base.times;
  report.grad_integral.assign(base.size(), 0.0);
  for (std::size_t k = 1; k < base.size(); ++k) {
    report.grad_integral[k] = report.grad_integral[k - 1] + 0.5 * (base.times[k] - base.times[k - 1]) *
                                                                (base.diagnostics[k].grad_linf +
                                                                 base.diagnostics[k - 1].grad_linf);
  }

  if (perturbation.is_zero()) {
    report.ratio.assign(base.size(), 1.0);
    report.trivial = true;
    return report;
  }

  // Measure against the perturbation actually represented after rounding.
  const SpectralField start = theta0 + perturbation;
  const double w0 = (start - theta0).l2_norm();
  const Trajectory perturbed = solve(start, mu, cfg);
  report.ratio.resize(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    report.ratio[k] = (perturbed.states[k] - base.states[k]).l2_norm() / w0;
  }
  for (std::size_t k = 1; k < base.size(); ++k) {
    if (report.grad_integral[k] > 0.0 && report.ratio[k] > 1.0) {
      report.fitted_constant = std::max(report.fitted_constant, std::log(report.ratio[k]) / report.grad_integral[k]);
    }
  }
  report.trivial = report.fitted_constant == 0.0;
  return report;
}

}  // namespace sqgcrit
