#include "sqgcrit/nonlinear.hpp"

#include "sqgcrit/error.hpp"
#include "sqgcrit/spectral.hpp"

namespace sqgcrit {
namespace {

DomainSpec evaluation_domain(const DomainSpec& d, Dealias dealias) {
  if (dealias == Dealias::none) return DomainSpec{d.modes, d.modes, d.quadrature};
  if (!d.dealiased()) {
    throw DomainError("3/2-rule dealiasing needs G >= 3N/2 (N=" + std::to_string(d.modes) +
                      ", G=" + std::to_string(d.grid) + ")");
  }
  return d;
}

}  // namespace

VectorGridField velocity(const SpectralField& theta) { return perp_gradient(lambda_pow(theta, -1.0)); }

SpectralField advection(const SpectralField& theta, const SpectralField& transported, Dealias dealias) {
  if (theta.modes() != transported.modes()) throw DomainError("advection: fields on different mode boxes");
  const DomainSpec eval = evaluation_domain(theta.domain(), dealias);

  const VectorGridField u = velocity(theta.with_domain(eval));
  const VectorGridField grad = gradient(transported.with_domain(eval));

  GridField product(eval);
  auto out = product.values();
  auto ux = u.x.values(), uy = u.y.values(), gx = grad.x.values(), gy = grad.y.values();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = ux[k] * gx[k] + uy[k] * gy[k];

  return from_grid(product).with_domain(theta.domain());
}

SpectralField regularized(const SpectralField& theta, const SpectralField& transported, double mu,
                          Dealias dealias) {
  if (!(mu > 0.0)) throw DomainError("regularized nonlinearity needs mu > 0; use advection for mu = 0");
  return resolvent(advection(theta, resolvent(transported, mu), dealias), mu);
}

SpectralField nonlinearity(const SpectralField& theta, const SpectralField& transported,
                           const NonlinearityConfig& cfg) {
  if (cfg.mu < 0.0) throw DomainError("mu must be non-negative");
  if (cfg.mu == 0.0) return advection(theta, transported, cfg.dealias);
  return regularized(theta, transported, cfg.mu, cfg.dealias);
}

}  // namespace sqgcrit
