// sqgcrit: batch driver over RunConfig files.
//
// Exit codes (stable):
//   0  success, every pass flag true
//   1  a verification or experiment check failed
//   2  usage or configuration error
//   3  I/O or file-format error
//   4  Picard iteration did not converge
//   5  blow-up monitor aborted the run
//   6  internal error

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <iostream>

#include "sqgcrit/config.hpp"
#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/error.hpp"
#include "sqgcrit/estimates.hpp"
#include "sqgcrit/evolution.hpp"
#include "sqgcrit/io.hpp"
#include "sqgcrit/parallel.hpp"

namespace fs = std::filesystem;
using namespace sqgcrit;

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3, kNoConvergence = 4, kBlowUp = 5, kInternal = 6 };

struct Options {
  fs::path config;
  std::vector<std::string> overrides;
  std::optional<int> jobs;
  std::optional<fs::path> output;
  fs::path field;  // besov-norm
  fs::path input;  // report
};

RunConfig load(const Options& opt) {
  std::vector<std::string> overrides = opt.overrides;
  if (opt.output) overrides.push_back("experiment.output=" + opt.output->string());
  if (opt.jobs) overrides.push_back("experiment.jobs=" + std::to_string(*opt.jobs));
  RunConfig cfg = opt.config.empty() ? default_config(overrides) : load_config(opt.config, overrides);
  set_worker_count(cfg.jobs);
  return cfg;
}

fs::path prepare(const RunConfig& cfg) {
  const fs::path dir = run_directory(cfg);
  write_text(dir / "config.ini", render_config(cfg));
  return dir;
}

std::string flag(bool ok) { return ok ? "pass" : "FAIL"; }

int simulate(const Options& opt) {
  const RunConfig cfg = load(opt);
  const SpectralField theta0 = initial_field(cfg);
  const SolverConfig solver = resolve_solver(cfg, theta0);
  const fs::path dir = prepare(cfg);

  write_checkpoint({theta0, 0.0, cfg.mu}, dir / "initial.chk");
  const Trajectory traj = solve(theta0, cfg.mu, solver);
  write_trajectory(traj, dir / "trajectory.bin");
  write_norm_series(traj, dir / "norms.csv");
  write_checkpoint({traj.final_state(), traj.times.back(), cfg.mu}, dir / "final.chk");

  const auto& first = traj.diagnostics.front();
  const auto& last = traj.diagnostics.back();
  fmt::print("simulate: N={} G={} mu={} T={} steps={} stored={}\n", cfg.domain.modes, cfg.domain.grid, cfg.mu,
             solver.horizon, solver.steps(), traj.size());
  fmt::print("  l2 {:.12g} -> {:.12g}\n  besov_2_2_1 {:.12g} -> {:.12g}\n  grad_linf {:.12g} -> {:.12g}\n",
             first.l2_norm, last.l2_norm, first.besov_2_2_1, last.besov_2_2_1, first.grad_linf, last.grad_linf);
  fmt::print("  output {}\n", dir.string());
  return kOk;
}

int sweep(const Options& opt) {
  const RunConfig cfg = load(opt);
  const SpectralField theta0 = initial_field(cfg);
  const SolverConfig solver = resolve_solver(cfg, theta0);
  const fs::path dir = prepare(cfg);

  const SweepReport report = mu_sweep(theta0, cfg.mus, solver);
  write_sweep(report, dir / "sweep.csv");
  fmt::print("sweep-mu: T={} mus={}\n", solver.horizon, cfg.mus.size());
  for (std::size_t k = 0; k < report.mus.size(); ++k) {
    fmt::print("  mu={:<8g} chemin_lerner={:.12g}", report.mus[k], report.chemin_lerner[k]);
    if (k < report.consecutive_distance.size()) fmt::print(" distance_to_next={:.6e}", report.consecutive_distance[k]);
    fmt::print("\n");
  }
  if (report.has_zero_limit) fmt::print("  distance_to_mu0={:.6e}\n", report.zero_limit_distance);
  fmt::print("  uniform_bound {} (spread {:.6g})\n  cauchy {}\n  zero_limit {}\n", flag(report.uniform_bound),
             report.cl_spread, flag(report.cauchy), flag(report.zero_limit_ok));
  return report.pass() ? kOk : kCheckFailed;
}

int verify(const Options& opt) {
  const RunConfig cfg = load(opt);
  const fs::path dir = prepare(cfg);
  const auto reports = run_verification_suite(cfg.ensemble, cfg.mus, cfg.tolerances, cfg.gamma);
  write_report(reports, dir / "report.csv");
  bool ok = true;
  for (const auto& r : reports) {
    fmt::print("{:<36} {}  max_ratio={:.6g}{}\n", r.id, flag(r.pass), r.max_ratio(), r.note.empty() ? "" : "  " + r.note);
    ok = ok && r.pass;
  }
  fmt::print("report {}\n", (dir / "report.csv").string());
  return ok ? kOk : kCheckFailed;
}

int besov(const Options& opt) {
  const RunConfig cfg = load(opt);
  SpectralField f;
  if (!opt.field.empty()) {
    f = read_checkpoint(opt.field).field;
  } else if (cfg.besov_field) {
    f = read_checkpoint(*cfg.besov_field).field;
  } else {
    f = initial_field(cfg);
  }
  fmt::print("{:.17g}\n", besov_norm(f, cfg.besov));
  return kOk;
}

int gronwall(const Options& opt) {
  const RunConfig cfg = load(opt);
  if (cfg.initial.kind == InitialKind::checkpoint) {
    throw ConfigError("initial.kind", "gronwall regenerates data per resolution; use mode or random");
  }
  const fs::path dir = prepare(cfg);
  std::vector<double> constants;
  bool ok = true;
  for (int n : cfg.gronwall_resolutions) {
    RunConfig local = cfg;
    local.domain = DomainSpec::make(n, DomainSpec::dealiased_grid(n), cfg.domain.quadrature);
    const SpectralField theta0 = initial_field(local);
    EnsembleSpec unit;
    unit.seed = cfg.seed;
    unit.resolutions = {n};
    unit.count = cfg.initial.sample + 2;
    const SpectralField delta = (cfg.perturbation * theta0.l2_norm()) * random_field(local.domain, unit, cfg.initial.sample + 1);
    const SolverConfig solver = resolve_solver(local, theta0);
    const GrowthReport g = gronwall_check(theta0, delta, cfg.mu, solver);
    write_growth(g, dir / fmt::format("gronwall_N{}.csv", n));
    const double excess = g.envelope_excess();
    fmt::print("gronwall N={}: C={:.6g} final_ratio={:.9g} grad_integral={:.6g} envelope_excess={:.12g}\n", n,
               g.fitted_constant, g.ratio.back(), g.grad_integral.back(), excess);
    constants.push_back(g.fitted_constant);
    ok = ok && g.fitted_constant <= cfg.gronwall_max_constant && excess <= 1.0 + 1e-9;
  }
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  const bool stable = *hi <= cfg.tolerances.resolution_slack * *lo || *hi == 0.0;
  fmt::print("  C <= {:g}: {}\n  resolution stability: {}\n", cfg.gronwall_max_constant, flag(ok), flag(stable));
  return ok && stable ? kOk : kCheckFailed;
}

int report(const Options& opt) {
  const Trajectory traj = read_trajectory(opt.input);
  const fs::path out = opt.output ? *opt.output : opt.input.parent_path() / "norms.csv";
  write_norm_series(traj, out);
  fmt::print("report: {} states, N={}, mu={}, t in [{}, {}]\n", traj.size(), traj.domain.modes, traj.mu,
             traj.times.front(), traj.times.back());
  fmt::print("  chemin_lerner(s=2) {:.12g}\n  norms {}\n", chemin_lerner_norm(traj, 2.0), out.string());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral SQG solver and Besov-estimate verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("-c,--config", opt.config, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("-s,--set", opt.overrides, "override section.key=value (repeatable)");
  app.add_option("-j,--jobs", opt.jobs, "worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", opt.output, "output directory (simulate/sweep-mu/verify/gronwall) or CSV path (report)");

  auto* sim = app.add_subcommand("simulate", "evolve the configured initial datum");
  auto* sw = app.add_subcommand("sweep-mu", "run the mu -> 0 sweep");
  auto* ver = app.add_subcommand("verify", "run the estimate verification suite");
  auto* bes = app.add_subcommand("besov-norm", "print a Besov norm of a stored field");
  bes->add_option("--field", opt.field, "checkpoint file")->check(CLI::ExistingFile);
  auto* gr = app.add_subcommand("gronwall", "perturbation growth against the Gronwall envelope");
  auto* rep = app.add_subcommand("report", "re-derive the norm series of a stored trajectory");
  rep->add_option("--input", opt.input, "trajectory file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return simulate(opt);
    if (*sw) return sweep(opt);
    if (*ver) return verify(opt);
    if (*bes) return besov(opt);
    if (*gr) return gronwall(opt);
    if (*rep) return report(opt);
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence at t=" << e.time() << ": " << e.what() << '\n';
    return kNoConvergence;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up at t=" << e.time() << ": " << e.what() << '\n';
    return kBlowUp;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
