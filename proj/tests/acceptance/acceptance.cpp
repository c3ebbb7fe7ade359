// Acceptance harness: one pass/fail line per criterion, tolerances pinned here.
//
//   acceptance            run all criteria
//   acceptance 1 8 13     run a subset
//   acceptance --strict   every FAIL is fatal, including the known-red ones
//
// Exit status is nonzero on an unexpected FAIL, or when a known-red criterion
// starts passing (the list below must then be updated).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sqgcrit/config.hpp"
#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/ensemble.hpp"
#include "sqgcrit/estimates.hpp"
#include "sqgcrit/evolution.hpp"
#include "sqgcrit/io.hpp"
#include "sqgcrit/parallel.hpp"
#include "sqgcrit/spectral.hpp"

using namespace sqgcrit;

namespace {

namespace pinned {
constexpr double partition = 1e-12;
constexpr double round_trip = 1e-10;
constexpr double equivalence_window = 50.0;
constexpr double resolution_slack = 1.5;
constexpr double psi_constant = 4.0;
constexpr double mu_spread = 2.0;
constexpr double steady = 1e-12;
constexpr double l2_drift = 1e-8;
constexpr double truncation_factor = 10.0;
constexpr double rk4_order = 3.5;
constexpr double cl_spread = 2.0;
constexpr double gronwall_constant = 10.0;
constexpr double envelope_round_off = 1e-9;
}  // namespace pinned

// Known-red criteria and why; see README for the measured numbers.
const std::map<int, const char*> kKnownRed = {
    {7, "mu-spread of the nonlinear-sum ratios is 80-250x: the sums scale with mu across the spectral band"},
    {11, "Chemin-Lerner norms rise monotonically (by ~1e-5 relative) as mu decreases"},
    {12, "mu grid straddles mu * a ~ 1, so consecutive differences grow before they shrink"},
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // <= 0: no budget
  std::function<Outcome()> run;
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolverConfig solver(double T, double dt) {
  SolverConfig c;
  c.horizon = T;
  c.dt = dt;
  c.window = T;
  return c;
}

// ---------------------------------------------------------------------------
// Shared verification suite: criteria 3-7 read the first run, 14 re-runs it.

EnsembleSpec suite_ensemble() { return default_config().ensemble; }
std::vector<double> suite_mus() { return default_config().mus; }

std::optional<std::vector<VerificationReport>> g_suite;

const std::vector<VerificationReport>& suite() {
  if (!g_suite) g_suite = run_verification_suite(suite_ensemble(), suite_mus());
  return *g_suite;
}

std::vector<const VerificationReport*> reports_with_prefix(const std::string& prefix) {
  std::vector<const VerificationReport*> out;
  for (const auto& r : suite()) {
    if (r.id.rfind(prefix, 0) == 0) out.push_back(&r);
  }
  return out;
}

double suite_seconds(const std::vector<const VerificationReport*>& reports) {
  double s = 0.0;
  for (const auto* r : reports) s += r->elapsed_seconds;
  return s;
}

// Max over resolutions divided by the value at the coarsest, per inequality id and mu.
double worst_growth(const std::vector<ReportRow>& rows) {
  std::map<std::pair<std::string, double>, std::vector<const ReportRow*>> groups;
  for (const auto& r : rows) groups[{r.inequality_id, r.mu.value_or(-1.0)}].push_back(&r);
  double worst = 0.0;
  for (const auto& [key, series] : groups) {
    const auto* base = *std::min_element(series.begin(), series.end(),
                                         [](const ReportRow* a, const ReportRow* b) { return a->modes < b->modes; });
    for (const auto* r : series) worst = std::max(worst, base->max_ratio > 0.0 ? r->max_ratio / base->max_ratio : kInfinity);
  }
  return worst;
}

bool rows_finite(const std::vector<ReportRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return std::isfinite(r.max_ratio); });
}

// ---------------------------------------------------------------------------

Outcome partition_of_unity() {
  double worst = 0.0;
  for (int n : {32, 64}) {
    const DomainSpec d = DomainSpec::make(n, n);
    const auto range = active_blocks(d);
    for (int m = 1; m <= n; ++m) {
      for (int k = 1; k <= n; ++k) {
        const double lambda = std::sqrt(eigenvalue(m, k));
        double sum = 0.0;
        for (int j = range.lo; j <= range.hi; ++j) sum += dyadic_block(j, lambda);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }
  return {worst <= pinned::partition, fmt::format("max |sum_j phi_j - 1| = {:.3e} (tol {:.0e})", worst, pinned::partition)};
}

Outcome transform_round_trip() {
  EnsembleSpec e;
  e.normalization = Normalization::none;
  const DomainSpec d = DomainSpec::make(64, 96);
  double trip = 0.0, parseval = 0.0;
  for (int k = 0; k < 100; ++k) {
    const SpectralField f = random_field(d, e, k);
    const GridField g = to_grid(f);
    trip = std::max(trip, (from_grid(g) - f).l2_norm() / f.l2_norm());
    parseval = std::max(parseval, std::abs(lp_norm(g, 2.0) - f.l2_norm()) / f.l2_norm());
  }
  return {trip <= pinned::round_trip && parseval <= pinned::round_trip,
          fmt::format("round trip {:.3e}, Parseval {:.3e} over 100 fields at N=64 G=96 (tol {:.0e})", trip, parseval,
                      pinned::round_trip)};
}

Outcome norm_equivalence() {
  const auto reports = reports_with_prefix("norm_equiv_s2");
  const VerificationReport& r = *reports.front();
  double lo = kInfinity, hi = 0.0;
  for (const auto& m : r.measurements) {
    lo = std::min(lo, m.ratio);
    hi = std::max(hi, m.ratio);
  }
  const auto upper = r.rows_for("norm_equiv_s2_upper");
  double umin = kInfinity, umax = 0.0;
  for (const auto& row : upper) {
    umin = std::min(umin, row.max_ratio);
    umax = std::max(umax, row.max_ratio);
  }
  const double window = hi / lo, variation = umax / umin;
  return {window <= pinned::equivalence_window && variation <= pinned::resolution_slack,
          fmt::format("ratio in [{:.4f}, {:.4f}], C/c = {:.3f} (<= {:g}), per-N max varies {:.3f}x (<= {:g})", lo, hi,
                      window, pinned::equivalence_window, variation, pinned::resolution_slack)};
}

Outcome bernstein() {
  const auto reports = reports_with_prefix("bernstein_");
  bool ok = reports.size() == 9;
  double worst = 0.0, largest = 0.0;
  std::string which;
  for (const auto* r : reports) {
    const double g = worst_growth(r->rows);
    ok = ok && rows_finite(r->rows) && g <= pinned::resolution_slack;
    largest = std::max(largest, r->max_ratio());
    if (g > worst) {
      worst = g;
      which = r->id;
    }
  }
  return {ok, fmt::format("{} checks, max constant {:.4f}, worst N-growth {:.4f}x ({}) (<= {:g})", reports.size(),
                          largest, worst, which, pinned::resolution_slack)};
}

Outcome psi_bounds() {
  const auto reports = reports_with_prefix("psi_bounds");
  const VerificationReport& r = *reports.front();
  double worst[4] = {0, 0, 0, 0};
  for (const auto& row : r.rows) {
    const int k = row.inequality_id.back() - '1';
    worst[k] = std::max(worst[k], row.max_ratio);
  }
  const bool ok = worst[0] <= 1.0 + 1e-15 &&
                  std::all_of(std::begin(worst), std::end(worst), [](double c) { return c <= pinned::psi_constant; });
  return {ok, fmt::format("constants {:.4f} {:.4f} {:.4f} {:.4f} with single C = {:g}", worst[0], worst[1], worst[2],
                          worst[3], pinned::psi_constant)};
}

Outcome bilinear() {
  const auto reports = reports_with_prefix("bilinear_");
  std::set<std::string> gammas;
  bool ok = true;
  double worst = 0.0, largest = 0.0;
  for (const auto* r : reports) {
    gammas.insert(r->id.substr(r->id.rfind("_g") + 2));
    const double g = worst_growth(r->rows);
    ok = ok && rows_finite(r->rows) && g <= pinned::resolution_slack;
    worst = std::max(worst, g);
    largest = std::max(largest, r->max_ratio());
  }
  ok = ok && gammas == std::set<std::string>{"0.05", "0.25", "0.45"};
  return {ok, fmt::format("{} checks over gamma in {{0.05, 0.25, 0.45}}, (p1..p4) = (2, inf, inf, 2), max ratio {:.4f}, "
                          "worst N-growth {:.4f}x",
                          reports.size(), largest, worst)};
}

Outcome nonlinear_sums() {
  const VerificationReport& r = *reports_with_prefix("nonlinear_sums").front();
  std::map<std::pair<std::string, int>, std::pair<double, double>> range;
  for (const auto& row : r.rows) {
    auto [it, fresh] = range.try_emplace({row.inequality_id, row.modes}, row.max_ratio, row.max_ratio);
    it->second.first = std::min(it->second.first, row.max_ratio);
    it->second.second = std::max(it->second.second, row.max_ratio);
  }
  double spread = 0.0, largest = 0.0;
  for (const auto& [key, mm] : range) {
    spread = std::max(spread, mm.first > 0.0 ? mm.second / mm.first : kInfinity);
    largest = std::max(largest, mm.second);
  }
  const bool ok = rows_finite(r.rows) && spread <= pinned::mu_spread;
  return {ok, fmt::format("max ratio {:.3e}, worst mu-spread {:.1f}x (<= {:g})", largest, spread, pinned::mu_spread)};
}

Outcome single_mode_steadiness() {
  const DomainSpec d = DomainSpec::make(32, 48);
  const std::pair<int, int> modes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 5}, {5, 5}, {7, 2}, {8, 13}, {16, 1}, {32, 32}};
  double worst = 0.0;
  for (const auto& [m, n] : modes) {
    const SpectralField e = SpectralField::mode(d, m, n, 1.0);
    for (double mu : {0.0, 1e-2}) {
      const Trajectory t = solve(e, mu, solver(0.1, 1e-3));
      for (const auto& s : t.states) worst = std::max(worst, (s - e).l2_norm());
    }
  }
  return {worst <= pinned::steady,
          fmt::format("10 modes, mu in {{0, 1e-2}}, max deviation {:.3e} (tol {:.0e})", worst, pinned::steady)};
}

Outcome l2_conservation() {
  const RunConfig cfg = default_config();
  const SpectralField theta = initial_field(cfg);
  const Trajectory t = solve(theta, 0.0, solver(0.1, 1e-3));
  const double l2 = t.diagnostics.front().l2_norm;
  double drift = 0.0;
  for (const auto& d : t.diagnostics) drift = std::max(drift, std::abs(d.l2_norm - l2) / l2);
  const double moved = (t.final_state() - theta).l2_norm() / l2;
  return {drift <= pinned::l2_drift,
          fmt::format("relative drift {:.3e} (tol {:.0e}); state moved {:.2e} relative", drift, pinned::l2_drift, moved)};
}

Outcome integrator_cross_validation() {
  // Amplitude 3000 in B^2_{2,1}: by the scaling symmetry theta -> A theta,
  // t -> t / A this is unit data over T = 300, where truncation error is
  // resolvable above round-off.
  const SpectralField theta = 3000.0 * random_field(ensemble_domain(32), [] {
    EnsembleSpec e;
    e.normalization = Normalization::besov_2_2_1;
    return e;
  }(), 0);
  const double T = 0.1, mu = 1e-2;
  const SpectralField pic = picard_solve(theta, mu, solver(T, T / 100)).final_state();
  const SpectralField pic_half = picard_solve(theta, mu, solver(T, T / 200)).final_state();
  const SpectralField rk = rk4_solve(theta, mu, solver(T, T / 100)).final_state();
  const double estimate = (4.0 / 3.0) * (pic - pic_half).l2_norm();
  const double diff = (pic - rk).l2_norm();

  const SpectralField ref = rk4_solve(theta, mu, solver(T, T / 640)).final_state();
  double err[3];
  const int steps[3] = {10, 20, 40};
  for (int k = 0; k < 3; ++k) err[k] = (rk4_solve(theta, mu, solver(T, T / steps[k])).final_state() - ref).l2_norm();
  const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
  return {diff <= pinned::truncation_factor * estimate && order >= pinned::rk4_order,
          fmt::format("|picard - rk4| = {:.3e} vs estimate {:.3e} (<= {:g}x); rk4 order {:.3f} (>= {:g})", diff,
                      estimate, pinned::truncation_factor, order, pinned::rk4_order)};
}

std::optional<SweepReport> g_sweep;
double g_sweep_seconds = 0.0;

const SweepReport& sweep() {
  if (!g_sweep) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = default_config();
    const SpectralField theta = initial_field(cfg);
    g_sweep = mu_sweep(theta, cfg.mus, resolve_solver(cfg, theta), true, pinned::cl_spread);
    g_sweep_seconds = since(t0);
  }
  return *g_sweep;
}

Outcome uniform_in_mu() {
  const SweepReport& s = sweep();
  bool rising = s.chemin_lerner.size() >= 3;
  for (std::size_t k = 1; k < s.chemin_lerner.size(); ++k) rising = rising && s.chemin_lerner[k] > s.chemin_lerner[k - 1];
  std::string values;
  for (double v : s.chemin_lerner) values += fmt::format(" {:.9f}", v);
  return {s.cl_spread <= pinned::cl_spread && !rising,
          fmt::format("CL norms{}; spread {:.6f} (<= {:g}); monotone rise as mu decreases: {}", values, s.cl_spread,
                      pinned::cl_spread, rising ? "yes" : "no")};
}

Outcome mu_cauchy() {
  const SweepReport& s = sweep();
  bool decreasing = true;
  std::string values;
  for (std::size_t k = 0; k < s.consecutive_distance.size(); ++k) {
    values += fmt::format(" {:.3e}", s.consecutive_distance[k]);
    if (k > 0) decreasing = decreasing && s.consecutive_distance[k] < s.consecutive_distance[k - 1];
  }
  const bool zero_ok = s.zero_limit_distance < s.consecutive_distance.front();
  return {decreasing && zero_ok, fmt::format("consecutive{}; mu=1e-4 vs mu=0 {:.3e} (must be < {:.3e})", values,
                                             s.zero_limit_distance, s.consecutive_distance.front())};
}

Outcome gronwall() {
  const RunConfig cfg = default_config();
  std::vector<double> constants;
  bool ok = true;
  double excess = 0.0;
  for (int n : {32, 48}) {
    RunConfig local = cfg;
    local.domain = ensemble_domain(n);
    const SpectralField theta = initial_field(local);
    EnsembleSpec unit;
    unit.seed = cfg.seed;
    unit.resolutions = {n};
    unit.count = cfg.initial.sample + 2;
    const SpectralField delta = (cfg.perturbation * theta.l2_norm()) * random_field(local.domain, unit, cfg.initial.sample + 1);
    const GrowthReport g = gronwall_check(theta, delta, 0.0, resolve_solver(local, theta));
    constants.push_back(g.fitted_constant);
    excess = std::max(excess, g.envelope_excess());
    ok = ok && g.fitted_constant <= pinned::gronwall_constant && g.envelope_excess() <= 1.0 + pinned::envelope_round_off;
  }
  const double change = std::max(constants[0], constants[1]) / std::min(constants[0], constants[1]);
  ok = ok && change <= pinned::resolution_slack;
  return {ok, fmt::format("C = {:.4e} (N=32), {:.4e} (N=48), change {:.3f}x (<= {:g}); envelope excess {:.3e}",
                          constants[0], constants[1], change, pinned::resolution_slack, excess - 1.0)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "sqgcrit_acceptance";
  std::filesystem::remove_all(dir);
  write_report(suite(), dir / "first.csv");
  const auto second = run_verification_suite(suite_ensemble(), suite_mus());
  write_report(second, dir / "second.csv");
  const std::string a = slurp(dir / "first.csv"), b = slurp(dir / "second.csv");
  std::filesystem::remove_all(dir);
  return {!a.empty() && a == b, fmt::format("{} report bytes, identical: {}", a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--strict") {
      strict = true;
    } else {
      selected.insert(std::stoi(arg));
    }
  }
  set_worker_count(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));

  // Suite-backed criteria are charged the wall time of their own checks, sweep
  // criteria the wall time of the shared sweep.
  auto from_sweep = [] { return g_sweep_seconds; };
  auto from_suite = [](const char* prefix) {
    return [prefix]() -> double { return suite_seconds(reports_with_prefix(prefix)); };
  };
  struct Entry {
    Criterion c;
    std::function<double()> suite_time;
  };
  const std::vector<Entry> entries = {
      {{1, "partition of unity", 1, partition_of_unity}, {}},
      {{2, "transform round trip / Parseval", 10, transform_round_trip}, {}},
      {{3, "norm equivalence (s,p,q)=(2,2,1)", 120, norm_equivalence}, from_suite("norm_equiv_s2")},
      {{4, "Bernstein constants", 120, bernstein}, from_suite("bernstein_")},
      {{5, "psi_j operator bounds", 1, psi_bounds}, from_suite("psi_bounds")},
      {{6, "bilinear estimate", 180, bilinear}, from_suite("bilinear_")},
      {{7, "nonlinear-sum ratios uniform in mu", 300, nonlinear_sums}, from_suite("nonlinear_sums")},
      {{8, "single-mode steadiness", 10, single_mode_steadiness}, {}},
      {{9, "L2 conservation at mu=0", 30, l2_conservation}, {}},
      {{10, "Picard vs RK4 cross-validation", 60, integrator_cross_validation}, {}},
      {{11, "uniform-in-mu Chemin-Lerner bound", 300, uniform_in_mu}, from_sweep},
      {{12, "mu -> 0 Cauchy property", 300, mu_cauchy}, from_sweep},
      {{13, "Gronwall envelope", 120, gronwall}, {}},
      {{14, "determinism of the verify suite", 0, determinism}, {}},
  };

  int unexpected = 0;
  for (const auto& [c, suite_time] : entries) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = suite_time ? suite_time() : since(t0);
    const bool in_budget = c.budget_seconds <= 0.0 || seconds <= c.budget_seconds;
    const bool pass = o.pass && in_budget;
    const bool known = kKnownRed.count(c.id) > 0;

    std::string verdict = pass ? "PASS" : "FAIL";
    if (!pass && known) verdict = "FAIL (known, see README)";
    if (pass && known) verdict = "XPASS (remove from known-red list)";
    std::string budget = c.budget_seconds > 0.0 ? fmt::format(" / {:g} s", c.budget_seconds) : "";
    if (!in_budget) budget += " OVER BUDGET";
    fmt::print("[{:2}] {:<34} {}  ({:.1f} s{})\n     {}\n", c.id, c.name, verdict, seconds, budget, o.detail);
    if (!pass && known) fmt::print("     reason: {}\n", kKnownRed.at(c.id));
    std::fflush(stdout);

    if ((!pass && (!known || strict)) || (pass && known)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
