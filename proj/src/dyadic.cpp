#include "sqgcrit/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqgcrit {
namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void require_index(const BesovIndex& idx) {
  if (!(idx.p >= 1.0)) throw DomainError("Besov integrability p must be >= 1");
  if (!(idx.q >= 1.0)) throw DomainError("Besov summability q must be >= 1");
}

}  // namespace

double dyadic_step(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  const double up = bump(2.0 - x);
  return up / (up + bump(x - 1.0));
}

double dyadic_profile(double lambda) { return dyadic_step(lambda) - dyadic_step(2.0 * lambda); }

double dyadic_block(int j, double lambda) {
  return dyadic_step(std::ldexp(lambda, -j)) - dyadic_step(std::ldexp(lambda, 1 - j));
}

double low_pass_symbol(int j, double lambda) { return dyadic_step(std::ldexp(lambda, -j)); }

double psi_symbol(int j, double a) {
  const double x = std::ldexp(a, -2 * j);
  return 0.75 * x / ((1.0 + 0.25 * x) * (1.0 + x));
}

BlockRange active_blocks(const DomainSpec& domain) {
  const double lo = std::sqrt(domain.min_eigenvalue());
  const double hi = std::sqrt(domain.max_eigenvalue());
  return {static_cast<int>(std::floor(std::log2(lo))) - 2, static_cast<int>(std::ceil(std::log2(hi))) + 2};
}

SpectralField phi_block(const SpectralField& f, int j) {
  return apply_multiplier(f, [j](double a) { return dyadic_block(j, std::sqrt(a)); });
}

SpectralField low_pass(const SpectralField& f, int j) {
  return apply_multiplier(f, [j](double a) { return low_pass_symbol(j, std::sqrt(a)); });
}

SpectralField high_pass(const SpectralField& f, int j) {
  return apply_multiplier(f, [j](double a) { return 1.0 - low_pass_symbol(j, std::sqrt(a)); });
}

SpectralField psi_block(const SpectralField& f, int j) {
  return apply_multiplier(f, [j](double a) { return psi_symbol(j, a); });
}

SpectralField psi_sqrt_block(const SpectralField& f, int j) {
  return apply_multiplier(f, [j](double a) { return std::sqrt(psi_symbol(j, a)); });
}

double lq_sum(std::span<const double> values, double q) {
  if (std::isinf(q)) {
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, v);
    return mx;
  }
  double acc = 0.0;
  if (q == 1.0) {
    for (double v : values) acc += v;
    return acc;
  }
  for (double v : values) acc += std::pow(v, q);
  return std::pow(acc, 1.0 / q);
}

std::vector<double> besov_blocks(const SpectralField& f, double s, double p) {
  const auto range = active_blocks(f.domain());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(range.hi - range.lo + 1));
  for (int j = range.lo; j <= range.hi; ++j) out.push_back(std::exp2(s * j) * field_lp_norm(phi_block(f, j), p));
  return out;
}

double besov_norm(const SpectralField& f, const BesovIndex& idx) {
  require_index(idx);
  const auto blocks = besov_blocks(f, idx.s, idx.p);
  return lq_sum(blocks, idx.q);
}

double besov_norm(std::span<const SpectralField> components, const BesovIndex& idx) {
  require_index(idx);
  if (components.empty()) return 0.0;
  if (components.size() == 1) return besov_norm(components.front(), idx);
  const DomainSpec& d = components.front().domain();
  const auto range = active_blocks(d);
  std::vector<double> blocks;
  for (int j = range.lo; j <= range.hi; ++j) {
    double norm = 0.0;
    if (idx.p == 2.0) {
      for (const auto& c : components) {
        const double b = phi_block(c, j).l2_norm();
        norm += b * b;
      }
      norm = std::sqrt(norm);
    } else {
      GridField magnitude(d);
      for (const auto& c : components) {
        const GridField g = to_grid(phi_block(c, j));
        auto mv = magnitude.values();
        auto gv = g.values();
        for (std::size_t k = 0; k < mv.size(); ++k) mv[k] += gv[k] * gv[k];
      }
      for (double& v : magnitude.values()) v = std::sqrt(v);
      norm = lp_norm(magnitude, idx.p);
    }
    blocks.push_back(std::exp2(idx.s * j) * norm);
  }
  return lq_sum(blocks, idx.q);
}

int psi_tail_blocks(double s) {
  const double rate = std::min(s - 1.0, 3.0 - s);
  if (!(rate > 0.0)) throw DomainError("resolvent-localized norm is only equivalent for |s-2| < 1");
  return std::clamp(static_cast<int>(std::ceil(53.0 / rate)), kPsiTailBlocks, 2000);
}

double besov_norm_equiv(const SpectralField& f, const BesovIndex& idx) {
  require_index(idx);
  if (!(std::abs(idx.s - 2.0) < 1.0)) {
    throw DomainError("resolvent-localized norm is only equivalent for |s-2| < 1");
  }
  const SpectralField lap = laplacian(f);
  const auto range = active_blocks(f.domain());
  std::vector<double> terms;
  const int tail = psi_tail_blocks(idx.s);
  for (int j = range.lo - tail; j <= range.hi + tail; ++j) {
    terms.push_back(std::exp2((idx.s - 2.0) * j) * field_lp_norm(psi_sqrt_block(lap, j), idx.p));
  }
  return lq_sum(terms, idx.q);
}

double chemin_lerner_norm(std::span<const SpectralField> states, double s) {
  if (states.empty()) throw DomainError("Chemin-Lerner norm of an empty trajectory");
  const auto range = active_blocks(states.front().domain());
  double total = 0.0;
  for (int j = range.lo; j <= range.hi; ++j) {
    double sup = 0.0;
    for (const auto& state : states) sup = std::max(sup, phi_block(state, j).l2_norm());
    total += std::exp2(s * j) * sup;
  }
  return total;
}

}  // namespace sqgcrit
