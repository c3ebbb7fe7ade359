#pragma once

#include "sqgcrit/field.hpp"

namespace sqgcrit {

enum class Dealias { three_halves, none };

struct NonlinearityConfig {
  Dealias dealias = Dealias::three_halves;
  double mu = 0.0;  // 0 selects the unregularized advection
};

/// u = grad^perp Lambda_D^{-1} theta on the field's grid.
VectorGridField velocity(const SpectralField& theta);

/// Galerkin-projected (u_theta . grad) transported.
///
/// With `three_halves` the product is formed on the field's own grid, which
/// must satisfy G >= 3N/2; with `none` it is formed on an N-point grid and
/// aliases into the retained modes.
SpectralField advection(const SpectralField& theta, const SpectralField& transported,
                        Dealias dealias = Dealias::three_halves);

/// (1+mu A)^{-1} [ (u_theta . grad) (1+mu A)^{-1} transported ], mu > 0.
SpectralField regularized(const SpectralField& theta, const SpectralField& transported, double mu,
                          Dealias dealias = Dealias::three_halves);

/// Dispatches on cfg.mu: regularized for mu > 0, advection for mu = 0.
SpectralField nonlinearity(const SpectralField& theta, const SpectralField& transported,
                           const NonlinearityConfig& cfg);

}  // namespace sqgcrit
