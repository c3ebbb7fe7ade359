#include "sqgcrit/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

namespace sqgcrit {
namespace {

using std::numbers::pi;

// FFTW planning is not thread-safe; execution on new arrays is. Plans are
// created once under the lock and shared read-only afterwards.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int nx, int ny, fftw_r2r_kind kx, fftw_r2r_kind ky) {
    const auto key = std::make_tuple(nx, ny, static_cast<int>(kx), static_cast<int>(ky));
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<double> in(static_cast<std::size_t>(nx) * ny), out(in.size());
    fftw_plan plan = fftw_plan_r2r_2d(nx, ny, in.data(), out.data(), kx, ky, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

int axis_length(const DomainSpec& d, Parity p) { return p == Parity::sine ? d.grid : d.grid + 2; }
int axis_offset(Parity p) { return p == Parity::sine ? 1 : 0; }
fftw_r2r_kind axis_kind(Parity p) { return p == Parity::sine ? FFTW_RODFT00 : FFTW_REDFT00; }

void require_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("L^p exponent must satisfy p >= 1, got " + std::to_string(p));
}

// Quadrature weight per axis for closed-grid node i.
double axis_weight(const DomainSpec& d, int i) {
  const int last = d.grid + 1;
  if (d.quadrature == Quadrature::midpoint) return (i == 0 || i == last) ? 0.0 : 1.0 / d.grid;
  const double h = d.spacing();
  return (i == 0 || i == last) ? 0.5 * h : h;
}

template <class Magnitude>
double lp_quadrature(const DomainSpec& d, double p, Magnitude&& mag) {
  require_exponent(p);
  const int n = d.closed_points();
  if (std::isinf(p)) {
    double mx = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mx = std::max(mx, mag(i, j));
    return mx;
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wi = axis_weight(d, i);
    if (wi == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double wj = axis_weight(d, j);
      if (wj == 0.0) continue;
      const double v = mag(i, j);
      row += wj * (p == 2.0 ? v * v : (p == 1.0 ? v : std::pow(v, p)));
    }
    acc += wi * row;
  }
  return p == 2.0 ? std::sqrt(acc) : (p == 1.0 ? acc : std::pow(acc, 1.0 / p));
}

// Amplitudes sum c_mn * sx(m) * sy(n) for the derivative synthesis below.
template <class Weight>
std::vector<double> weighted(const SpectralField& f, Weight&& w) {
  const int n_modes = f.modes();
  std::vector<double> amp(f.size());
  for (int m = 1; m <= n_modes; ++m)
    for (int n = 1; n <= n_modes; ++n) amp[(m - 1) * n_modes + (n - 1)] = w(m, n) * f.at(m, n);
  return amp;
}

}  // namespace

GridField synthesize(const DomainSpec& domain, std::span<const double> amp, Parity px, Parity py) {
  const int n_modes = domain.modes;
  if (amp.size() != static_cast<std::size_t>(n_modes) * n_modes) throw DomainError("synthesize: amplitude size");
  const int nx = axis_length(domain, px);
  const int ny = axis_length(domain, py);
  const int ox = axis_offset(px);
  const int oy = axis_offset(py);

  std::vector<double> in(static_cast<std::size_t>(nx) * ny, 0.0), out(in.size());
  for (int m = 1; m <= n_modes; ++m)
    for (int n = 1; n <= n_modes; ++n)
      in[static_cast<std::size_t>(m - ox) * ny + (n - oy)] = amp[(m - 1) * n_modes + (n - 1)];

  fftw_execute_r2r(PlanCache::instance().get(nx, ny, axis_kind(px), axis_kind(py)), in.data(), out.data());

  // Both r2r kinds carry a factor 2 per axis.
  GridField g(domain);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) g.at(a + ox, b + oy) = 0.25 * out[static_cast<std::size_t>(a) * ny + b];
  return g;
}

GridField to_grid(const SpectralField& f) {
  return synthesize(f.domain(), weighted(f, [](int, int) { return 2.0; }), Parity::sine, Parity::sine);
}

SpectralField from_grid(const GridField& g) {
  const DomainSpec& d = g.domain();
  const int G = d.grid;
  std::vector<double> in(static_cast<std::size_t>(G) * G), out(in.size());
  for (int i = 1; i <= G; ++i)
    for (int j = 1; j <= G; ++j) in[static_cast<std::size_t>(i - 1) * G + (j - 1)] = g.at(i, j);

  fftw_execute_r2r(PlanCache::instance().get(G, G, FFTW_RODFT00, FFTW_RODFT00), in.data(), out.data());

  const double h = d.spacing();
  const double scale = 0.5 * h * h;
  SpectralField f(d);
  for (int m = 1; m <= d.modes; ++m)
    for (int n = 1; n <= d.modes; ++n) f.at(m, n) = scale * out[static_cast<std::size_t>(m - 1) * G + (n - 1)];
  return f;
}

SpectralField lambda_pow(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(f, [s](double a) { return std::pow(a, 0.5 * s); });
}

SpectralField laplacian(const SpectralField& f) {
  return apply_multiplier(f, [](double a) { return -a; });
}

SpectralField resolvent(const SpectralField& f, double mu) {
  if (mu < 0.0) throw DomainError("resolvent parameter must be non-negative");
  return apply_multiplier(f, [mu](double a) { return 1.0 / (1.0 + mu * a); });
}

VectorGridField gradient(const SpectralField& f) {
  const DomainSpec& d = f.domain();
  auto dx = weighted(f, [](int m, int) { return 2.0 * pi * m; });
  auto dy = weighted(f, [](int, int n) { return 2.0 * pi * n; });
  return {synthesize(d, dx, Parity::cosine, Parity::sine), synthesize(d, dy, Parity::sine, Parity::cosine)};
}

VectorGridField perp_gradient(const SpectralField& f) {
  VectorGridField g = gradient(f);
  VectorGridField out{std::move(g.y), std::move(g.x)};
  for (double& v : out.x.values()) v = -v;
  return out;
}

HessianGridField hessian(const SpectralField& f) {
  const DomainSpec& d = f.domain();
  auto xx = weighted(f, [](int m, int) { return -2.0 * pi * pi * m * m; });
  auto xy = weighted(f, [](int m, int n) { return 2.0 * pi * pi * m * n; });
  auto yy = weighted(f, [](int, int n) { return -2.0 * pi * pi * n * n; });
  return {synthesize(d, xx, Parity::sine, Parity::sine), synthesize(d, xy, Parity::cosine, Parity::cosine),
          synthesize(d, yy, Parity::sine, Parity::sine)};
}

double lp_norm(const GridField& g, double p) {
  return lp_quadrature(g.domain(), p, [&](int i, int j) { return std::abs(g.at(i, j)); });
}

double lp_norm(const VectorGridField& v, double p) {
  return lp_quadrature(v.x.domain(), p, [&](int i, int j) { return std::hypot(v.x.at(i, j), v.y.at(i, j)); });
}

double lp_norm(const HessianGridField& h, double p) {
  return lp_quadrature(h.xx.domain(), p, [&](int i, int j) {
    const double a = h.xx.at(i, j), b = h.xy.at(i, j), c = h.yy.at(i, j);
    return std::sqrt(a * a + 2.0 * b * b + c * c);
  });
}

double field_lp_norm(const SpectralField& f, double p) {
  require_exponent(p);
  if (p == 2.0) return f.l2_norm();
  return lp_norm(to_grid(f), p);
}

double derivative_lp_norm(const SpectralField& f, int alpha, double p) {
  switch (alpha) {
    case 0: return field_lp_norm(f, p);
    case 1: return lp_norm(gradient(f), p);
    case 2: return lp_norm(hessian(f), p);
    default: throw DomainError("derivative order must be 0, 1 or 2");
  }
}

double evaluate(const SpectralField& f, double x, double y) {
  const int n_modes = f.modes();
  std::vector<double> sy(static_cast<std::size_t>(n_modes));
  for (int n = 1; n <= n_modes; ++n) sy[n - 1] = std::sin(n * pi * y);
  double total = 0.0;
  for (int m = 1; m <= n_modes; ++m) {
    double row = 0.0;
    for (int n = 1; n <= n_modes; ++n) row += f.at(m, n) * sy[n - 1];
    total += row * std::sin(m * pi * x);
  }
  return 2.0 * total;
}

}  // namespace sqgcrit
