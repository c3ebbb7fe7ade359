#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "sqgcrit/domain.hpp"
#include "sqgcrit/error.hpp"
#include "sqgcrit/field.hpp"

// Functional calculus of the Dirichlet Laplacian on the unit square.
//
// Every operator m(A_D) acts diagonally on the sine basis, so multipliers are
// plain scalar functions of the eigenvalue a = pi^2 (m^2 + n^2). Grid
// evaluation goes through FFTW type-I sine/cosine transforms.

namespace sqgcrit {

/// Per-axis basis for grid synthesis: sin(k pi x) or cos(k pi x).
enum class Parity { sine, cosine };

/// Evaluates sum_{m,n} amp[m][n] X_m(x_i) Y_n(y_j) on the closed grid, where
/// X, Y are sine or cosine per `px`, `py`. `amp` is N x N row-major with mode
/// index starting at 1.
GridField synthesize(const DomainSpec& domain, std::span<const double> amp, Parity px, Parity py);

GridField to_grid(const SpectralField& f);

/// L^2 projection onto the truncated basis using the interior nodes
/// (trapezoid rule on the function extended by zero). Exact for sine series of
/// degree <= 2G+1-N.
SpectralField from_grid(const GridField& g);

/// coeff'[m][n] = mult(a_mn) coeff[m][n]. Throws DomainError if the
/// multiplier is not finite at an eigenvalue carrying a nonzero coefficient.
template <class Multiplier>
SpectralField apply_multiplier(const SpectralField& f, Multiplier&& mult) {
  SpectralField out(f.domain());
  const int n_modes = f.modes();
  for (int m = 1; m <= n_modes; ++m) {
    for (int n = 1; n <= n_modes; ++n) {
      const double c = f.at(m, n);
      if (c == 0.0) continue;
      const double factor = mult(eigenvalue(m, n));
      if (!std::isfinite(factor)) {
        throw DomainError("multiplier is not finite at eigenvalue of mode (" + std::to_string(m) + "," +
                          std::to_string(n) + ")");
      }
      out.at(m, n) = factor * c;
    }
  }
  return out;
}

/// Lambda_D^s f, i.e. multiplier a^{s/2}.
SpectralField lambda_pow(const SpectralField& f, double s);

/// Delta f = -A_D f.
SpectralField laplacian(const SpectralField& f);

/// (1 + mu A_D)^{-1} f.
SpectralField resolvent(const SpectralField& f, double mu);

VectorGridField gradient(const SpectralField& f);
/// (-d_y f, d_x f).
VectorGridField perp_gradient(const SpectralField& f);
HessianGridField hessian(const SpectralField& f);

/// L^p norm by the domain's quadrature rule; p = +infinity gives the nodal max.
/// Throws DomainError for p < 1.
double lp_norm(const GridField& g, double p);
/// L^p norm of the pointwise Euclidean magnitude.
double lp_norm(const VectorGridField& v, double p);
double lp_norm(const HessianGridField& h, double p);

/// L^p norm of a spectral field. p = 2 uses Parseval (identical to the grid
/// quadrature for G >= N); other p go through the grid.
double field_lp_norm(const SpectralField& f, double p);

/// L^p norm of grad^alpha f for alpha in {0, 1, 2}.
double derivative_lp_norm(const SpectralField& f, int alpha, double p);

/// Value of the sine series at an arbitrary point (direct summation).
double evaluate(const SpectralField& f, double x, double y);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace sqgcrit
