#include "sqgcrit/ensemble.hpp"

#include <cmath>
#include <numbers>

#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/error.hpp"

namespace sqgcrit {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1).
double unit_open(std::uint64_t h) { return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53; }

}  // namespace

void EnsembleSpec::validate() const {
  if (count < 1) throw ConfigError("ensemble.count", "must be at least 1");
  if (resolutions.empty()) throw ConfigError("ensemble.resolutions", "needs at least one resolution");
  for (int n : resolutions) {
    if (n < 1) throw ConfigError("ensemble.resolutions", "resolutions must be positive");
  }
  if (!(decay_rate >= 0.0)) throw ConfigError("ensemble.decay", "decay exponent must be non-negative");
}

DomainSpec ensemble_domain(int modes) { return DomainSpec::make(modes, DomainSpec::dealiased_grid(modes)); }

double hashed_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b << 1));
  h = splitmix64(h ^ (c << 2));
  const double u1 = unit_open(h);
  const double u2 = unit_open(splitmix64(h));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SpectralField random_field(const DomainSpec& domain, const EnsembleSpec& spec, int sample) {
  spec.validate();
  if (sample < 0) throw DomainError("sample index must be non-negative");
  SpectralField f(domain);
  for (int m = 1; m <= domain.modes; ++m) {
    for (int n = 1; n <= domain.modes; ++n) {
      double amp = hashed_normal(spec.seed, static_cast<std::uint64_t>(sample), static_cast<std::uint64_t>(m),
                                 static_cast<std::uint64_t>(n));
      if (spec.profile == SpectrumProfile::decay) amp *= std::pow(double(m) * m + double(n) * n, -0.5 * spec.decay_rate);
      f.at(m, n) = amp;
    }
  }
  double norm = 1.0;
  switch (spec.normalization) {
    case Normalization::none: return f;
    case Normalization::l2: norm = f.l2_norm(); break;
    case Normalization::besov_2_2_1: norm = besov_norm(f, {2.0, 2.0, 1.0}); break;
  }
  if (norm > 0.0) f *= 1.0 / norm;
  return f;
}

std::vector<SpectralField> ensemble(const DomainSpec& domain, const EnsembleSpec& spec) {
  std::vector<SpectralField> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int k = 0; k < spec.count; ++k) out.push_back(random_field(domain, spec, k));
  return out;
}

}  // namespace sqgcrit
