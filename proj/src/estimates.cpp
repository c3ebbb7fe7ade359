#include "sqgcrit/estimates.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <map>

#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/error.hpp"
#include "sqgcrit/nonlinear.hpp"
#include "sqgcrit/parallel.hpp"

namespace sqgcrit {
namespace {

std::string exponent_tag(double p) { return std::isinf(p) ? "inf" : fmt::format("{:g}", p); }

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

bool all_finite(const VerificationReport& r) {
  return std::all_of(r.rows.begin(), r.rows.end(),
                     [](const ReportRow& row) { return std::isfinite(row.max_ratio) && row.max_ratio >= 0.0; });
}

using GroupKey = std::pair<std::string, double>;

double mu_key(const std::optional<double>& mu) { return mu ? *mu : -1.0; }

// Each (id, mu) series: finer resolutions may not exceed slack * coarsest.
bool resolution_stable(const std::vector<ReportRow>& rows, double slack) {
  std::map<GroupKey, std::vector<const ReportRow*>> groups;
  for (const auto& row : rows) groups[{row.inequality_id, mu_key(row.mu)}].push_back(&row);
  for (auto& [key, series] : groups) {
    const auto* base = *std::min_element(series.begin(), series.end(),
                                         [](const ReportRow* a, const ReportRow* b) { return a->modes < b->modes; });
    for (const auto* row : series) {
      if (row->max_ratio > slack * base->max_ratio) return false;
    }
  }
  return true;
}

// Each (id, N) series: max over mu <= spread * min over mu.
bool mu_uniform(const std::vector<ReportRow>& rows, double spread, std::string& detail) {
  std::map<std::pair<std::string, int>, std::pair<double, double>> range;
  for (const auto& row : rows) {
    if (!row.mu) continue;
    auto [it, fresh] = range.try_emplace({row.inequality_id, row.modes}, row.max_ratio, row.max_ratio);
    if (!fresh) {
      it->second.first = std::min(it->second.first, row.max_ratio);
      it->second.second = std::max(it->second.second, row.max_ratio);
    }
  }
  bool ok = true;
  for (const auto& [key, mm] : range) {
    const double ratio = mm.first > 0.0 ? mm.second / mm.first : (mm.second > 0.0 ? kInfinity : 1.0);
    detail += fmt::format("{} N={} mu-spread={:.4g}; ", key.first, key.second, ratio);
    ok = ok && ratio <= spread;
  }
  return ok;
}

std::vector<DomainSpec> resolutions(const EnsembleSpec& e) {
  e.validate();
  std::vector<DomainSpec> out;
  for (int n : e.resolutions) out.push_back(ensemble_domain(n));
  return out;
}

void add_row(VerificationReport& report, const std::string& id, int modes, std::optional<double> mu, double value) {
  report.rows.push_back({id, modes, mu, value});
}

// Components of grad^k f on the grid; the Hessian lists xy twice so that the
// Euclidean magnitude of the list is the Frobenius norm.
std::vector<GridField> derivative_components(const SpectralField& f, int order) {
  switch (order) {
    case 0: return {to_grid(f)};
    case 1: {
      auto g = gradient(f);
      return {std::move(g.x), std::move(g.y)};
    }
    case 2: {
      auto h = hessian(f);
      GridField xy_copy = h.xy;
      return {std::move(h.xx), std::move(h.xy), std::move(xy_copy), std::move(h.yy)};
    }
    default: throw DomainError("derivative order must be 0, 1 or 2");
  }
}

}  // namespace

double VerificationReport::max_ratio() const {
  double m = 0.0;
  for (const auto& row : rows) m = std::max(m, row.max_ratio);
  return m;
}

std::vector<ReportRow> VerificationReport::rows_for(const std::string& inequality_id) const {
  std::vector<ReportRow> out;
  for (const auto& row : rows) {
    if (row.inequality_id == inequality_id) out.push_back(row);
  }
  return out;
}

std::vector<double> bernstein_ratios(const SpectralField& f, double p, double r, int alpha, double guard) {
  if (!(r >= 1.0) || !(p >= r)) throw DomainError("Bernstein check needs 1 <= r <= p");
  if (alpha < 0 || alpha > 2) throw DomainError("Bernstein check supports alpha in {0, 1, 2}");
  const auto range = active_blocks(f.domain());
  const double total = f.l2_norm();
  std::vector<double> out;
  for (int j = range.lo; j <= range.hi; ++j) {
    const SpectralField block = phi_block(f, j);
    if (total == 0.0 || block.l2_norm() <= guard * total) {
      out.push_back(0.0);
      continue;
    }
    const double scale = std::exp2(alpha * j + 2.0 * (reciprocal(r) - reciprocal(p)) * j);
    out.push_back(derivative_lp_norm(block, alpha, p) / (scale * field_lp_norm(block, r)));
  }
  return out;
}

VerificationReport check_bernstein(const EnsembleSpec& e, double p, double r, int alpha, const Tolerances& tol) {
  if (!(r >= 1.0) || !(p >= r)) throw DomainError("Bernstein check needs 1 <= r <= p");
  if (alpha < 0 || alpha > 2) throw DomainError("Bernstein check supports alpha in {0, 1, 2}");
  VerificationReport report;
  report.id = fmt::format("bernstein_a{}_r{}_p{}", alpha, exponent_tag(r), exponent_tag(p));
  for (const auto& d : resolutions(e)) {
    const int lo = active_blocks(d).lo;
    std::vector<std::vector<double>> per_sample(static_cast<std::size_t>(e.count));
    parallel_for(per_sample.size(), [&](std::size_t k) {
      per_sample[k] = bernstein_ratios(random_field(d, e, static_cast<int>(k)), p, r, alpha, tol.denominator_guard);
    });
    double worst = 0.0;
    for (std::size_t k = 0; k < per_sample.size(); ++k) {
      for (std::size_t b = 0; b < per_sample[k].size(); ++b) {
        const double v = per_sample[k][b];
        if (v == 0.0) {
          ++report.skipped;
          continue;
        }
        report.measurements.push_back({report.id, d.modes, std::nullopt, static_cast<int>(k), lo + static_cast<int>(b), v});
        worst = std::max(worst, v);
      }
    }
    add_row(report, report.id, d.modes, std::nullopt, worst);
  }
  report.pass = all_finite(report) && resolution_stable(report.rows, tol.resolution_slack);
  return report;
}

VerificationReport check_psi_bounds(const DomainSpec& domain, int j_lo, int j_hi, const Tolerances& tol) {
  VerificationReport report;
  report.id = "psi_bounds";
  std::vector<double> eig;
  for (int m = 1; m <= domain.modes; ++m) {
    for (int n = m; n <= domain.modes; ++n) eig.push_back(eigenvalue(m, n));
  }
  double worst[4] = {0.0, 0.0, 0.0, 0.0};
  for (int j = j_lo; j <= j_hi; ++j) {
    double sup_psi = 0.0, sup_sqrt = 0.0, sup_grad_psi = 0.0, sup_sqrt_grad = 0.0, sup_grad_res = 0.0;
    const double scale = std::exp2(j);
    for (double a : eig) {
      const double psi = psi_symbol(j, a);
      const double root = std::sqrt(a);
      sup_psi = std::max(sup_psi, psi);
      sup_sqrt = std::max(sup_sqrt, std::sqrt(psi));
      sup_grad_psi = std::max(sup_grad_psi, root * psi);
      sup_sqrt_grad = std::max(sup_sqrt_grad, std::sqrt(a * psi));
      sup_grad_res = std::max(sup_grad_res, root / scale / (1.0 + a / (scale * scale)));
    }
    if (sup_sqrt == 0.0) continue;
    const double c[4] = {sup_psi / sup_sqrt, sup_grad_psi / (scale * sup_sqrt), sup_sqrt_grad / scale,
                         sup_grad_res / sup_sqrt};
    for (int k = 0; k < 4; ++k) {
      const std::string id = fmt::format("psi_bound_{}", k + 1);
      report.measurements.push_back({id, domain.modes, std::nullopt, 0, j, c[k]});
      worst[k] = std::max(worst[k], c[k]);
    }
  }
  for (int k = 0; k < 4; ++k) add_row(report, fmt::format("psi_bound_{}", k + 1), domain.modes, std::nullopt, worst[k]);
  report.pass = all_finite(report) && worst[0] <= 1.0 + 1e-15 &&
                std::all_of(std::begin(worst), std::end(worst), [&](double c) { return c <= tol.psi_constant; });
  report.note = fmt::format("j in [{}, {}], single C = {:g}", j_lo, j_hi, tol.psi_constant);
  return report;
}

VerificationReport check_psi_bounds(const DomainSpec& domain, const Tolerances& tol) {
  const auto range = active_blocks(domain);
  return check_psi_bounds(domain, range.lo, range.hi, tol);
}

double bilinear_ratio(const SpectralField& f, const SpectralField& g, const BilinearSpec& b) {
  if (f.is_zero() || g.is_zero()) return 0.0;
  const auto lhs_a = derivative_components(f, b.alpha);
  const auto lhs_b = derivative_components(g, b.beta);
  std::vector<SpectralField> product;
  product.reserve(lhs_a.size() * lhs_b.size());
  for (const auto& u : lhs_a) {
    for (const auto& v : lhs_b) {
      GridField w(u.domain());
      auto wv = w.values();
      auto uv = u.values(), vv = v.values();
      for (std::size_t k = 0; k < wv.size(); ++k) wv[k] = uv[k] * vv[k];
      product.push_back(from_grid(w));
    }
  }
  const double lhs = besov_norm(std::span<const SpectralField>(product), {b.gamma, 2.0, 1.0});
  const double rhs = besov_norm(f, {b.alpha + b.gamma, b.p1, 1.0}) * besov_norm(g, {double(b.beta), b.p2, 1.0}) +
                     besov_norm(f, {double(b.alpha), b.p3, 1.0}) * besov_norm(g, {b.beta + b.gamma, b.p4, 1.0});
  return lhs / rhs;
}

VerificationReport check_bilinear(const EnsembleSpec& e, const BilinearSpec& b, const Tolerances& tol) {
  auto half = [](double x, double y) { return std::abs(reciprocal(x) + reciprocal(y) - 0.5) < 1e-12; };
  if (!half(b.p1, b.p2) || !half(b.p3, b.p4)) throw DomainError("bilinear check needs 1/p1+1/p2 = 1/p3+1/p4 = 1/2");
  if (!(b.gamma > 0.0 && b.gamma < 0.5)) throw DomainError("bilinear check needs 0 < gamma < 1/2");
  if (b.alpha < 0 || b.alpha > 2 || b.beta < 0 || b.beta > 2) {
    throw DomainError("bilinear check supports alpha, beta in {0, 1, 2}");
  }
  VerificationReport report;
  report.id = fmt::format("bilinear_a{}_b{}_g{:g}", b.alpha, b.beta, b.gamma);
  for (const auto& d : resolutions(e)) {
    std::vector<double> ratio(static_cast<std::size_t>(e.count));
    parallel_for(ratio.size(), [&](std::size_t k) {
      const int s = static_cast<int>(k);
      ratio[k] = bilinear_ratio(random_field(d, e, s), random_field(d, e, s + e.count), b);
    });
    double worst = 0.0;
    for (std::size_t k = 0; k < ratio.size(); ++k) {
      report.measurements.push_back({report.id, d.modes, std::nullopt, static_cast<int>(k), std::nullopt, ratio[k]});
      worst = std::max(worst, ratio[k]);
    }
    add_row(report, report.id, d.modes, std::nullopt, worst);
  }
  report.pass = all_finite(report) && resolution_stable(report.rows, tol.resolution_slack);
  return report;
}

NonlinearSums nonlinear_sum_ratios(const SpectralField& theta, double mu, double guard) {
  NonlinearSums out;
  const double norm = besov_norm(theta, {2.0, 2.0, 1.0});
  if (norm == 0.0) return out;
  const NonlinearityConfig cfg{Dealias::three_halves, mu};
  const SpectralField lap = laplacian(theta);
  const double lap_norm = lap.l2_norm();
  const auto range = active_blocks(theta.domain());

  SpectralField full;
  bool have_full = false;
  // S_j th and (1-S_j) th equal th exactly on saturated blocks; N(th, th) is reused there.
  auto transport = [&](const SpectralField& part) -> SpectralField {
    if (std::equal(part.coefficients().begin(), part.coefficients().end(), theta.coefficients().begin())) {
      if (!have_full) {
        full = nonlinearity(theta, theta, cfg);
        have_full = true;
      }
      return full;
    }
    return nonlinearity(part, theta, cfg);
  };

  // <Delta N, psi_j Delta th> / ||psi_j^{1/2} Delta th|| in coefficients.
  auto term = [&](int j, const SpectralField& part) -> double {
    double den = 0.0;
    for (int m = 1; m <= theta.modes(); ++m) {
      for (int n = 1; n <= theta.modes(); ++n) {
        const double l = lap.at(m, n);
        den += psi_symbol(j, eigenvalue(m, n)) * l * l;
      }
    }
    den = std::sqrt(den);
    if (den < guard * lap_norm) {
      ++out.skipped;
      return 0.0;
    }
    if (part.is_zero()) return 0.0;
    const SpectralField nl = transport(part);
    double num = 0.0;
    for (int m = 1; m <= theta.modes(); ++m) {
      for (int n = 1; n <= theta.modes(); ++n) {
        const double a = eigenvalue(m, n);
        num += -a * nl.at(m, n) * psi_symbol(j, a) * lap.at(m, n);
      }
    }
    return std::abs(num) / den;
  };

  for (int j = range.lo; j <= range.hi + kPsiTailBlocks; ++j) out.low += term(j, low_pass(theta, j));
  for (int j = range.lo - kPsiTailBlocks; j <= range.hi + 2; ++j) out.high += term(j, high_pass(theta, j));
  out.low /= norm * norm;
  out.high /= norm * norm;
  return out;
}

VerificationReport check_nonlinear_sums(const EnsembleSpec& e, const std::vector<double>& mus, const Tolerances& tol) {
  if (mus.empty()) throw DomainError("nonlinear sum check needs at least one mu");
  for (double mu : mus) {
    if (!(mu > 0.0)) throw DomainError("nonlinear sum check needs mu > 0");
  }
  VerificationReport report;
  report.id = "nonlinear_sums";
  for (const auto& d : resolutions(e)) {
    const std::size_t cells = static_cast<std::size_t>(e.count) * mus.size();
    std::vector<NonlinearSums> sums(cells);
    std::vector<char> zero(static_cast<std::size_t>(e.count), 0);
    parallel_for(static_cast<std::size_t>(e.count), [&](std::size_t k) {
      const SpectralField theta = random_field(d, e, static_cast<int>(k));
      if (theta.is_zero()) {
        zero[k] = 1;
        return;
      }
      for (std::size_t i = 0; i < mus.size(); ++i) {
        sums[k * mus.size() + i] = nonlinear_sum_ratios(theta, mus[i], tol.denominator_guard);
      }
    });
    for (std::size_t i = 0; i < mus.size(); ++i) {
      double low = 0.0, high = 0.0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(e.count); ++k) {
        if (zero[k]) {
          if (i == 0) ++report.skipped;
          continue;
        }
        const auto& s = sums[k * mus.size() + i];
        report.skipped += s.skipped;
        report.measurements.push_back({"nonlinear_sum_low", d.modes, mus[i], static_cast<int>(k), std::nullopt, s.low});
        report.measurements.push_back({"nonlinear_sum_high", d.modes, mus[i], static_cast<int>(k), std::nullopt, s.high});
        low = std::max(low, s.low);
        high = std::max(high, s.high);
      }
      add_row(report, "nonlinear_sum_low", d.modes, mus[i], low);
      add_row(report, "nonlinear_sum_high", d.modes, mus[i], high);
    }
  }
  std::string detail;
  const bool uniform = mu_uniform(report.rows, tol.mu_spread, detail);
  report.note = detail;
  report.pass = all_finite(report) && uniform && resolution_stable(report.rows, tol.resolution_slack);
  return report;
}

VerificationReport check_regularized_scaling(const SpectralField& theta, double gamma, const std::vector<double>& mus,
                                             const Tolerances& tol) {
  if (mus.size() < 3) throw DomainError("mu-scaling fit needs at least three mu values");
  if (!(gamma > 0.0 && gamma < 0.5)) throw DomainError("mu-scaling check needs 0 < gamma < 1/2");
  VerificationReport report;
  report.id = fmt::format("regularized_scaling_g{:g}", gamma);
  const double norm = besov_norm(theta, {2.0, 2.0, 1.0});
  const double bound_exponent = -1.0 + 0.5 * gamma;

  std::vector<double> values(mus.size());
  parallel_for(mus.size(), [&](std::size_t i) {
    if (!(mus[i] > 0.0)) throw DomainError("mu-scaling check needs mu > 0");
    values[i] = besov_norm(regularized(theta, theta, mus[i]), {2.0, 2.0, 1.0});
  });

  const bool trivial = std::all_of(values.begin(), values.end(), [&](double v) { return v <= 1e-14 * norm * norm; });
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double ratio = trivial ? 0.0 : values[i] / (std::pow(mus[i], bound_exponent) * norm * norm);
    add_row(report, report.id, theta.modes(), mus[i], ratio);
    report.measurements.push_back({report.id, theta.modes(), mus[i], 0, std::nullopt, ratio});
  }
  if (trivial) {
    report.note = "norms vanish; fit skipped";
    report.skipped = mus.size();
    report.pass = true;
    return report;
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(mus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double x = std::log(mus[i]), y = std::log(values[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;
  double residual = 0.0;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double r = std::log(values[i]) - (intercept + slope * std::log(mus[i]));
    residual += r * r;
  }
  residual = std::sqrt(residual / count);

  std::vector<std::size_t> order(mus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mus[a] < mus[b]; });
  bool monotone = true;
  for (std::size_t i = 1; i < order.size(); ++i) monotone = monotone && values[order[i]] <= values[order[i - 1]];
  // The bound is asymptotic in mu -> 0; the full-range secant mixes in the
  // mu^{-2} large-mu regime, so the gate uses the two smallest mu.
  const std::size_t a = order[0], b = order[1];
  const double tail = std::log(values[a] / values[b]) / std::log(mus[a] / mus[b]);

  report.note = fmt::format("slope={:.6g} tail_slope={:.6g} bound={:.6g} residual={:.3g} non_increasing_in_mu={}", slope,
                            tail, bound_exponent, residual, monotone ? "yes" : "no");
  report.pass = all_finite(report) && std::isfinite(tail) && tail >= bound_exponent - tol.scaling_slack;
  return report;
}

VerificationReport check_norm_equivalence(const EnsembleSpec& e, double s, const Tolerances& tol) {
  if (!(std::abs(s - 2.0) < 1.0)) throw DomainError("norm equivalence needs |s - 2| < 1");
  VerificationReport report;
  report.id = fmt::format("norm_equiv_s{:g}", s);
  const std::string upper_id = report.id + "_upper", lower_id = report.id + "_lower";
  double global_hi = 0.0, global_lo = kInfinity;
  for (const auto& d : resolutions(e)) {
    std::vector<double> ratio(static_cast<std::size_t>(e.count), 0.0);
    parallel_for(ratio.size(), [&](std::size_t k) {
      const SpectralField f = random_field(d, e, static_cast<int>(k));
      const double base = besov_norm(f, {s, 2.0, 1.0});
      ratio[k] = base > 0.0 ? besov_norm_equiv(f, {s, 2.0, 1.0}) / base : 0.0;
    });
    double hi = 0.0, lo = kInfinity;
    for (std::size_t k = 0; k < ratio.size(); ++k) {
      if (ratio[k] == 0.0) {
        ++report.skipped;
        continue;
      }
      report.measurements.push_back({report.id, d.modes, std::nullopt, static_cast<int>(k), std::nullopt, ratio[k]});
      hi = std::max(hi, ratio[k]);
      lo = std::min(lo, ratio[k]);
    }
    global_hi = std::max(global_hi, hi);
    global_lo = std::min(global_lo, lo);
    add_row(report, upper_id, d.modes, std::nullopt, hi);
    add_row(report, lower_id, d.modes, std::nullopt, lo > 0.0 && std::isfinite(lo) ? 1.0 / lo : kInfinity);
  }
  const double window = global_hi / global_lo;
  report.note = fmt::format("interval=[{:.6g}, {:.6g}] C/c={:.4g}", global_lo, global_hi, window);
  report.pass = all_finite(report) && window <= tol.equivalence_window &&
                resolution_stable(report.rows, tol.resolution_slack);
  return report;
}

VerificationReport check_embedding(const EnsembleSpec& e, double s, double s0, double p, double q, double q0,
                                   const Tolerances& tol) {
  if (!(s0 >= 0.0)) throw DomainError("embedding check needs s0 >= 0");
  VerificationReport report;
  report.id = fmt::format("embedding_s{:g}_s0{:g}_p{}_q{}_q0{}", s, s0, exponent_tag(p), exponent_tag(q),
                          exponent_tag(q0));
  for (const auto& d : resolutions(e)) {
    std::vector<double> ratio(static_cast<std::size_t>(e.count), 0.0);
    parallel_for(ratio.size(), [&](std::size_t k) {
      const SpectralField f = random_field(d, e, static_cast<int>(k));
      const double rhs = besov_norm(f, {s + s0, p, q0});
      ratio[k] = rhs > 0.0 ? besov_norm(f, {s, p, q}) / rhs : 0.0;
    });
    double worst = 0.0;
    for (std::size_t k = 0; k < ratio.size(); ++k) {
      report.measurements.push_back({report.id, d.modes, std::nullopt, static_cast<int>(k), std::nullopt, ratio[k]});
      worst = std::max(worst, ratio[k]);
    }
    add_row(report, report.id, d.modes, std::nullopt, worst);
  }
  report.pass = all_finite(report) && resolution_stable(report.rows, tol.resolution_slack);
  return report;
}

std::vector<VerificationReport> run_verification_suite(const EnsembleSpec& e, const std::vector<double>& mus,
                                                       const Tolerances& tol, double gamma) {
  std::vector<VerificationReport> out;
  auto timed = [&](auto&& check) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r = check();
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  };

  for (double s : {1.5, 2.0, 2.5}) timed([&] { return check_norm_equivalence(e, s, tol); });
  const std::pair<double, double> rp[] = {{2.0, 2.0}, {2.0, kInfinity}, {1.0, 2.0}};
  for (const auto& [r, p] : rp) {
    for (int alpha = 0; alpha <= 2; ++alpha) timed([&] { return check_bernstein(e, p, r, alpha, tol); });
  }

  timed([&] {
    VerificationReport psi;
    psi.id = "psi_bounds";
    for (int n : e.resolutions) {
      auto part = check_psi_bounds(ensemble_domain(n), tol);
      psi.rows.insert(psi.rows.end(), part.rows.begin(), part.rows.end());
      psi.measurements.insert(psi.measurements.end(), part.measurements.begin(), part.measurements.end());
      psi.note += fmt::format("N={}: {}; ", n, part.note);
      psi.pass = psi.pass && part.pass;
    }
    return psi;
  });

  for (double g : {0.05, 0.25, 0.45}) {
    for (const auto& [alpha, beta] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{1, 1}}) {
      timed([&] { return check_bilinear(e, {alpha, beta, g}, tol); });
    }
  }
  timed([&] { return check_nonlinear_sums(e, mus, tol); });

  if (mus.size() >= 3) {
    timed([&] {
      VerificationReport scaling;
      scaling.id = fmt::format("regularized_scaling_g{:g}", gamma);
      for (int n : e.resolutions) {
        auto part = check_regularized_scaling(random_field(ensemble_domain(n), e, 0), gamma, mus, tol);
        scaling.rows.insert(scaling.rows.end(), part.rows.begin(), part.rows.end());
        scaling.measurements.insert(scaling.measurements.end(), part.measurements.begin(), part.measurements.end());
        scaling.note += fmt::format("N={}: {}; ", n, part.note);
        scaling.pass = scaling.pass && part.pass;
      }
      return scaling;
    });
  }

  timed([&] { return check_embedding(e, 1.0, 1.0, 2.0, 1.0, kInfinity, tol); });
  timed([&] { return check_embedding(e, 0.0, 2.0, kInfinity, 1.0, 1.0, tol); });
  return out;
}

}  // namespace sqgcrit
