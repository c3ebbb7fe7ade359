#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/ensemble.hpp"
#include "sqgcrit/estimates.hpp"
#include "sqgcrit/evolution.hpp"

namespace sqgcrit {

enum class InitialKind { mode, random, checkpoint };

struct InitialSpec {
  InitialKind kind = InitialKind::random;
  int m = 1, n = 1;         // mode
  double amplitude = 1.0;   // mode amplitude; scales normalized random data
  int sample = 0;           // random: ensemble sample index
  SpectrumProfile profile = SpectrumProfile::decay;
  double decay_rate = 3.0;
  Normalization normalization = Normalization::besov_2_2_1;
  std::filesystem::path path;  // checkpoint
};

/// Fully validated experiment configuration. See README for the file schema.
struct RunConfig {
  DomainSpec domain = DomainSpec{32, 48, Quadrature::trapezoid};
  SolverConfig solver;
  bool horizon_auto = false;  // T = existence_window(theta0, horizon_constant)
  double horizon_constant = kDefaultHorizonConstant;
  bool window_follows_horizon = true;  // window unset in the file: window = T
  double mu = 1e-2;
  std::vector<double> mus{1e-1, 1e-2, 1e-3, 1e-4};
  InitialSpec initial;
  std::string experiment = "run";
  std::uint64_t seed = 20240917;
  std::optional<std::filesystem::path> output;  // unset: environment or ./runs
  EnsembleSpec ensemble;
  Tolerances tolerances;
  double gamma = 0.25;
  BesovIndex besov{2.0, 2.0, 1.0};
  std::optional<std::filesystem::path> besov_field;
  double perturbation = 1e-6;  // relative L^2 size of the Gronwall perturbation
  std::vector<int> gronwall_resolutions{32, 48};
  double gronwall_max_constant = 10.0;
  int jobs = 1;

  /// Re-checks every cross-field constraint; throws ConfigError naming the key.
  void validate() const;
};

/// Parses INI text. Unknown sections or keys, malformed values and violated
/// constraints raise ConfigError; syntax errors carry the line number.
/// `overrides` are "section.key=value" strings applied after the file.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                       const std::string& origin = "<string>");
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
/// Defaults plus overrides, no file.
RunConfig default_config(const std::vector<std::string>& overrides = {});

/// Canonical INI rendering; parse_config(render_config(c)) reproduces c.
std::string render_config(const RunConfig& cfg);

/// Solver settings with T (and the window, when it follows T) resolved for
/// the given initial datum. Throws ConfigError when T = auto and theta0 = 0.
SolverConfig resolve_solver(const RunConfig& cfg, const SpectralField& theta0);

/// Output directory for the run: cfg.output, else $SQGCRIT_OUTPUT_ROOT/<experiment>,
/// else ./runs/<experiment>.
std::filesystem::path run_directory(const RunConfig& cfg);

/// Initial datum described by cfg.initial on cfg.domain.
SpectralField initial_field(const RunConfig& cfg);

}  // namespace sqgcrit
