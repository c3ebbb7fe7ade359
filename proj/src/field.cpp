#include "sqgcrit/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqgcrit/error.hpp"

namespace sqgcrit {

DomainSpec DomainSpec::make(int modes, int grid, Quadrature q) {
  if (modes < 1) throw DomainError("mode cutoff N must be positive, got " + std::to_string(modes));
  if (grid < modes) {
    throw DomainError("grid size G must be >= N (G=" + std::to_string(grid) + ", N=" + std::to_string(modes) + ")");
  }
  return DomainSpec{modes, grid, q};
}

double DomainSpec::min_eigenvalue() const { return eigenvalue(1, 1); }
double DomainSpec::max_eigenvalue() const { return eigenvalue(modes, modes); }

SpectralField::SpectralField(const DomainSpec& domain)
    : domain_(domain), coeff_(static_cast<std::size_t>(domain.coefficient_count()), 0.0) {}

SpectralField::SpectralField(const DomainSpec& domain, std::vector<double> coeff)
    : domain_(domain), coeff_(std::move(coeff)) {
  if (coeff_.size() != static_cast<std::size_t>(domain.coefficient_count())) {
    throw DomainError("coefficient array has " + std::to_string(coeff_.size()) + " entries, domain expects " +
                      std::to_string(domain.coefficient_count()));
  }
}

SpectralField SpectralField::mode(const DomainSpec& domain, int m, int n, double amplitude) {
  if (m < 1 || n < 1 || m > domain.modes || n > domain.modes) {
    throw DomainError("mode (" + std::to_string(m) + "," + std::to_string(n) + ") outside the truncated basis");
  }
  SpectralField f(domain);
  f.at(m, n) = amplitude;
  return f;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (double c : coeff_) s += c * c;
  return std::sqrt(s);
}

bool SpectralField::is_finite() const {
  return std::all_of(coeff_.begin(), coeff_.end(), [](double c) { return std::isfinite(c); });
}

bool SpectralField::is_zero() const {
  return std::all_of(coeff_.begin(), coeff_.end(), [](double c) { return c == 0.0; });
}

SpectralField SpectralField::with_domain(const DomainSpec& domain) const {
  if (domain.modes != domain_.modes) throw DomainError("with_domain: mode cutoff mismatch");
  return SpectralField(domain, coeff_);
}

void SpectralField::require_same_domain(const SpectralField& other) const {
  if (other.domain_.modes != domain_.modes) {
    throw DomainError("fields live on different mode boxes (" + std::to_string(domain_.modes) + " vs " +
                      std::to_string(other.domain_.modes) + ")");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_domain(other);
  for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] += other.coeff_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_domain(other);
  for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] -= other.coeff_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (double& c : coeff_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_same_domain(other);
  for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] += s * other.coeff_[k];
  return *this;
}

double inner(const SpectralField& a, const SpectralField& b) {
  if (a.modes() != b.modes()) throw DomainError("inner: mode cutoff mismatch");
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  double s = 0.0;
  for (std::size_t k = 0; k < ca.size(); ++k) s += ca[k] * cb[k];
  return s;
}

GridField::GridField(const DomainSpec& domain)
    : domain_(domain),
      values_(static_cast<std::size_t>(domain.closed_points()) * domain.closed_points(), 0.0) {}

bool GridField::is_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace sqgcrit
