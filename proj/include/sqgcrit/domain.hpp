#pragma once

#include <numbers>

namespace sqgcrit {

/// Quadrature used for L^p norms on the collocation grid.
///
/// `trapezoid` is the composite trapezoid rule over the closed grid (boundary
/// nodes weighted 1/2, corners 1/4). `midpoint` is the interior-node rectangle
/// rule with equal weights 1/G per axis.
enum class Quadrature { midpoint, trapezoid };

/// Truncated Dirichlet eigenbasis on the unit square together with its
/// collocation grid.
///
/// Modes are e_{mn}(x,y) = 2 sin(m pi x) sin(n pi y), 1 <= m,n <= N.
/// Grid nodes are x_i = i h, h = 1/(G+1), 0 <= i <= G+1; nodes 1..G are the
/// interior collocation points of the type-I sine transform, 0 and G+1 lie on
/// the boundary.
struct DomainSpec {
  int modes = 0;  // N
  int grid = 0;   // G
  Quadrature quadrature = Quadrature::trapezoid;

  /// Validating constructor; throws DomainError unless 1 <= N <= G.
  static DomainSpec make(int modes, int grid, Quadrature q = Quadrature::trapezoid);

  /// Smallest grid that makes quadratic products alias-free (3N/2 rule).
  static int dealiased_grid(int modes) { return (3 * modes + 1) / 2; }

  double spacing() const { return 1.0 / (grid + 1); }
  int closed_points() const { return grid + 2; }
  int coefficient_count() const { return modes * modes; }
  bool dealiased() const { return 2 * grid >= 3 * modes; }

  double min_eigenvalue() const;
  double max_eigenvalue() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// Eigenvalue pi^2 (m^2 + n^2) of the Dirichlet Laplacian for mode (m, n).
constexpr double eigenvalue(int m, int n) {
  return std::numbers::pi * std::numbers::pi * (static_cast<double>(m) * m + static_cast<double>(n) * n);
}

}  // namespace sqgcrit
