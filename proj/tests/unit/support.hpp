#pragma once

#include <cmath>
#include <numbers>

#include "sqgcrit/ensemble.hpp"
#include "sqgcrit/field.hpp"

namespace testing {

// Exp-bump smooth step written out from its definition, independent of the library.
inline double chi(double x) {
  auto h = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  return h(2.0 - x) / (h(2.0 - x) + h(x - 1.0));
}

inline double phi(int j, double lambda) { return chi(lambda / std::pow(2.0, j)) - chi(2.0 * lambda / std::pow(2.0, j)); }

// Resolvent difference in its defining (cancellation-prone) form.
inline double psi_difference(int j, double a) {
  return 1.0 / (1.0 + std::pow(2.0, -2 * j - 2) * a) - 1.0 / (1.0 + std::pow(2.0, -2 * j) * a);
}

inline double mode_eigenvalue(int m, int n) { return std::numbers::pi * std::numbers::pi * (m * m + n * n); }

inline sqgcrit::SpectralField random(int modes, int sample, sqgcrit::Normalization norm = sqgcrit::Normalization::l2,
                                     double decay = 3.0) {
  sqgcrit::EnsembleSpec spec;
  spec.count = sample + 1;
  spec.resolutions = {modes};
  spec.normalization = norm;
  spec.decay_rate = decay;
  return sqgcrit::random_field(sqgcrit::ensemble_domain(modes), spec, sample);
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
