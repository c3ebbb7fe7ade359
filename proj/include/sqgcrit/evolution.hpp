#pragma once

#include <vector>

#include "sqgcrit/nonlinear.hpp"
#include "sqgcrit/trajectory.hpp"

namespace sqgcrit {

enum class Stepper { picard, rk4 };

struct SolverConfig {
  double horizon = 0.1;      // T
  double dt = 1e-3;
  double window = 0.1;       // Picard restart window
  double picard_tol = 1e-12; // relative sup-over-window change
  int picard_max_iter = 60;
  Stepper stepper = Stepper::picard;
  int store_stride = 1;      // store every k-th step
  double grad_ceiling = 1e6; // blow-up monitor on ||grad theta||_inf
  Dealias dealias = Dealias::three_halves;

  /// Throws ConfigError on violated constraints (0 < dt <= window <= T, ...).
  void validate() const;
  /// Number of uniform steps; dt is rounded down so that steps * dt == T.
  int steps() const;
};

/// Fixed-point iteration on theta(t) = theta(t_k) - int_{t_k}^t N_mu(theta, theta)
/// over restarted windows, composite trapezoid in time. Windows that fail to
/// contract are halved down to a single step.
Trajectory picard_solve(const SpectralField& theta0, double mu, const SolverConfig& cfg);

/// Classical four-stage explicit integrator for d/dt theta = -N_mu(theta, theta).
Trajectory rk4_solve(const SpectralField& theta0, double mu, const SolverConfig& cfg);

/// Dispatch on cfg.stepper; mu = 0 always uses rk4.
Trajectory solve(const SpectralField& theta0, double mu, const SolverConfig& cfg);

inline constexpr double kDefaultHorizonConstant = 0.1;

/// c_T / ||theta0||_{B^2_{2,1}}; +infinity for zero data.
double existence_window(const SpectralField& theta0, double c_T = kDefaultHorizonConstant);

struct SweepReport {
  std::vector<double> mus;
  std::vector<double> chemin_lerner;        // per mu, s = 2
  std::vector<double> consecutive_distance; // L^inf(0,T;L^2) between runs k and k+1
  double zero_limit_distance = 0.0;         // last mu vs direct mu = 0 run
  bool has_zero_limit = false;
  double cl_spread = 1.0;                   // max/min Chemin-Lerner
  bool uniform_bound = true;
  bool cauchy = true;
  bool zero_limit_ok = true;
  bool pass() const { return uniform_bound && cauchy && zero_limit_ok; }
};

/// Runs picard_solve for each mu (decreasing, positive) on cfg.horizon and,
/// when `compare_zero` is set, an rk4 run at mu = 0.
SweepReport mu_sweep(const SpectralField& theta0, const std::vector<double>& mus, const SolverConfig& cfg,
                     bool compare_zero = true, double spread_limit = 2.0);

struct GrowthReport {
  std::vector<double> times;
  std::vector<double> ratio;          // ||w(t)|| / ||w(0)||
  std::vector<double> grad_integral;  // int_0^t ||grad theta||_inf
  double fitted_constant = 0.0;       // minimal C with ratio <= exp(C * integral)
  bool trivial = false;               // zero perturbation or no growth
  /// max over t of ratio / exp(C * integral) with the fitted C (<= 1 up to round-off).
  double envelope_excess() const;
};

/// Evolves theta0 and theta0 + perturbation and fits the Gronwall constant.
GrowthReport gronwall_check(const SpectralField& theta0, const SpectralField& perturbation, double mu,
                            const SolverConfig& cfg);

}  // namespace sqgcrit
