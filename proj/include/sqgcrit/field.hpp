#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqgcrit/domain.hpp"

namespace sqgcrit {

/// Scalar field stored as coefficients on the orthonormal sine basis.
///
/// Coefficients are row-major in mode order: index (m-1)*N + (n-1).
/// The L^2 norm of the field is the Euclidean norm of the coefficients.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const DomainSpec& domain);
  SpectralField(const DomainSpec& domain, std::vector<double> coeff);

  static SpectralField zero(const DomainSpec& domain) { return SpectralField(domain); }
  static SpectralField mode(const DomainSpec& domain, int m, int n, double amplitude = 1.0);

  const DomainSpec& domain() const noexcept { return domain_; }
  int modes() const noexcept { return domain_.modes; }

  double& at(int m, int n) { return coeff_[index(m, n)]; }
  double at(int m, int n) const { return coeff_[index(m, n)]; }

  std::span<double> coefficients() noexcept { return coeff_; }
  std::span<const double> coefficients() const noexcept { return coeff_; }
  std::size_t size() const noexcept { return coeff_.size(); }

  double l2_norm() const;
  bool is_finite() const;
  bool is_zero() const;

  /// Same coefficients on a different grid (mode cutoff must agree).
  SpectralField with_domain(const DomainSpec& domain) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

 private:
  std::size_t index(int m, int n) const {
    return static_cast<std::size_t>(m - 1) * domain_.modes + static_cast<std::size_t>(n - 1);
  }
  void require_same_domain(const SpectralField& other) const;

  DomainSpec domain_{};
  std::vector<double> coeff_;
};

/// L^2 inner product (coefficient dot product).
double inner(const SpectralField& a, const SpectralField& b);

/// Samples on the closed collocation grid, (G+2) x (G+2) row-major; row index
/// runs along x. Interior samples are nodes 1..G in both directions.
class GridField {
 public:
  GridField() = default;
  explicit GridField(const DomainSpec& domain);

  const DomainSpec& domain() const noexcept { return domain_; }
  int stride() const noexcept { return domain_.closed_points(); }

  double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * stride() + j]; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * stride() + j]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double node(int i) const { return i * domain_.spacing(); }
  bool is_finite() const;

 private:
  DomainSpec domain_{};
  std::vector<double> values_;
};

struct VectorGridField {
  GridField x;
  GridField y;
};

/// Second derivatives on the grid; xy is the mixed partial.
struct HessianGridField {
  GridField xx;
  GridField xy;
  GridField yy;
};

}  // namespace sqgcrit
