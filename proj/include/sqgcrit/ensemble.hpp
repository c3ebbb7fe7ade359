#pragma once

#include <cstdint>
#include <vector>

#include "sqgcrit/field.hpp"

namespace sqgcrit {

enum class SpectrumProfile { flat, decay };
enum class Normalization { none, l2, besov_2_2_1 };

/// Seeded family of random test fields.
///
/// Coefficient (m, n) of sample k is a standard normal drawn from a counter
/// hash of (seed, k, m, n), times (m^2+n^2)^{-r/2} for the decay profile.
/// Samples are therefore nested across resolutions: the field at N = 32 is the
/// mode-truncation of the same sample at N = 64.
struct EnsembleSpec {
  int count = 100;
  SpectrumProfile profile = SpectrumProfile::decay;
  double decay_rate = 3.0;  // r
  std::uint64_t seed = 20240917;
  std::vector<int> resolutions{32, 48, 64};
  Normalization normalization = Normalization::l2;

  /// Throws ConfigError on count < 1, empty or invalid resolutions, negative r.
  void validate() const;
};

/// Domain used for ensemble member at resolution N: G = ceil(3N/2), trapezoid.
DomainSpec ensemble_domain(int modes);

SpectralField random_field(const DomainSpec& domain, const EnsembleSpec& spec, int sample);
std::vector<SpectralField> ensemble(const DomainSpec& domain, const EnsembleSpec& spec);

/// Standard normal from a stateless counter hash (splitmix64 + Box-Muller).
double hashed_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace sqgcrit
