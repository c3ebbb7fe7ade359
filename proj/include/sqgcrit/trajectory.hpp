#pragma once

#include <vector>

#include "sqgcrit/field.hpp"

namespace sqgcrit {

struct Diagnostics {
  double l2_norm = 0.0;
  double besov_2_2_1 = 0.0;
  double grad_linf = 0.0;
};

Diagnostics diagnose(const SpectralField& state);

/// Time-stamped states of one run. Times start at 0 and increase strictly.
struct Trajectory {
  DomainSpec domain{};
  double mu = 0.0;
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<Diagnostics> diagnostics;
  /// Picard iterations used per window (empty for explicit runs).
  std::vector<int> picard_iterations;

  bool empty() const noexcept { return states.empty(); }
  std::size_t size() const noexcept { return states.size(); }
  const SpectralField& final_state() const { return states.back(); }

  void push(double t, SpectralField state);
};

/// sum_j 2^{sj} max_t ||phi_j theta(t)||_{L^2}.
double chemin_lerner_norm(const Trajectory& traj, double s);

/// max over common stored times of ||a(t) - b(t)||_{L^2}.
double linf_l2_distance(const Trajectory& a, const Trajectory& b);

}  // namespace sqgcrit
