#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqgcrit/ensemble.hpp"
#include "sqgcrit/field.hpp"
#include "sqgcrit/spectral.hpp"

// Measured-constant verification of the analytic estimates.
//
// Every check reports ratios LHS / RHS. Constants are never asserted as
// universal numbers; a check passes when the ratios are finite and stable
// under refinement (and under mu -> 0 where the estimate claims uniformity).

namespace sqgcrit {

/// Summary row: max ratio over the ensemble for one (inequality, N, mu).
struct ReportRow {
  std::string inequality_id;
  int modes = 0;
  std::optional<double> mu;
  double max_ratio = 0.0;
};

/// One measured ratio. `block` is the dyadic index when the ratio is blockwise.
struct Measurement {
  std::string inequality_id;
  int modes = 0;
  std::optional<double> mu;
  int sample = 0;
  std::optional<int> block;
  double ratio = 0.0;
};

struct VerificationReport {
  std::string id;
  std::vector<ReportRow> rows;
  std::vector<Measurement> measurements;
  std::size_t skipped = 0;  // guarded denominators and excluded samples
  bool pass = true;
  std::string note;
  double elapsed_seconds = 0.0;  // wall time; never serialized

  double max_ratio() const;
  /// Rows for one inequality id, in insertion order.
  std::vector<ReportRow> rows_for(const std::string& inequality_id) const;
};

struct Tolerances {
  double resolution_slack = 1.5;  // max ratio at finer N <= slack * coarsest
  double mu_spread = 2.0;         // max/min over mu of the max ratio
  double denominator_guard = 1e-14;
  double equivalence_window = 50.0;  // C/c for the norm equivalence
  double psi_constant = 4.0;         // single C for the resolvent bounds
  double scaling_slack = 0.1;        // exponent slack for the mu-scaling fit
};

/// ||grad^alpha phi_j f||_{L^p} <= C 2^{alpha j + 2(1/r - 1/p) j} ||phi_j f||_{L^r}.
/// Throws DomainError unless 1 <= r <= p and alpha in {0, 1, 2}.
VerificationReport check_bernstein(const EnsembleSpec& e, double p, double r, int alpha,
                                   const Tolerances& tol = {});

/// Single-field ratios of check_bernstein for each active block (0 where the
/// block vanishes). Exposed for scalar oracles.
std::vector<double> bernstein_ratios(const SpectralField& f, double p, double r, int alpha,
                                     double guard = 1e-14);

/// Operator bounds for psi_j over the occupied spectrum of `domain`, as exact
/// suprema over eigenvalues for j in [j_lo, j_hi]:
///   psi_bound_1   sup psi_j / sup psi_j^{1/2}
///   psi_bound_2   sup sqrt(a) psi_j / (2^j sup psi_j^{1/2})
///   psi_bound_3   sup sqrt(a psi_j) / 2^j
///   psi_bound_4   sup 2^{-j} sqrt(a) / (1 + 2^{-2j} a) / sup psi_j^{1/2}
/// Passes when every ratio is <= tol.psi_constant (bound 1 must be <= 1).
VerificationReport check_psi_bounds(const DomainSpec& domain, int j_lo, int j_hi, const Tolerances& tol = {});
VerificationReport check_psi_bounds(const DomainSpec& domain, const Tolerances& tol = {});

struct BilinearSpec {
  int alpha = 0;
  int beta = 0;
  double gamma = 0.25;
  double p1 = 2.0, p2 = kInfinity, p3 = kInfinity, p4 = 2.0;
};

/// ||(grad^alpha f)(grad^beta g)||_{B^gamma_{2,1}} against
/// ||f||_{B^{alpha+gamma}_{p1,1}} ||g||_{B^beta_{p2,1}} + ||f||_{B^alpha_{p3,1}} ||g||_{B^{beta+gamma}_{p4,1}}.
/// f is ensemble sample k, g is sample k + count. Throws DomainError when
/// 1/p1 + 1/p2 != 1/2, 1/p3 + 1/p4 != 1/2, gamma outside (0, 1/2), or
/// alpha, beta outside {0, 1, 2}.
VerificationReport check_bilinear(const EnsembleSpec& e, const BilinearSpec& b, const Tolerances& tol = {});

/// Ratio of check_bilinear for one pair (0 when f or g vanishes).
double bilinear_ratio(const SpectralField& f, const SpectralField& g, const BilinearSpec& b);

/// Blockwise sums
///   low : sum_j |<Delta N_mu(S_j th, th), psi_j Delta th>| / ||psi_j^{1/2} Delta th||
///   high: sum_j |<Delta N_mu((1-S_j) th, th), psi_j Delta th>| / ||psi_j^{1/2} Delta th||
/// divided by ||th||^2_{B^2_{2,1}}.
struct NonlinearSums {
  double low = 0.0;
  double high = 0.0;
  std::size_t skipped = 0;  // blocks dropped by the denominator guard
};
NonlinearSums nonlinear_sum_ratios(const SpectralField& theta, double mu, double guard = 1e-14);

/// Runs nonlinear_sum_ratios over the ensemble for every mu. Passes when all
/// ratios are finite, max/min over mu is <= tol.mu_spread per (sum, N), and
/// the resolution slack holds per (sum, mu). Zero samples are skipped.
VerificationReport check_nonlinear_sums(const EnsembleSpec& e, const std::vector<double>& mus,
                                        const Tolerances& tol = {});

/// Ratios ||N_mu(th, th)||_{B^2_{2,1}} / (mu^{-1+gamma/2} ||th||^2) per mu, with the
/// least-squares log-log slope and its residual in the note. Passes when the
/// ratios are finite and the slope between the two smallest mu is
/// >= -1 + gamma/2 - tol.scaling_slack. Throws DomainError for fewer than
/// three mu values. Identically zero norms pass trivially.
VerificationReport check_regularized_scaling(const SpectralField& theta, double gamma,
                                             const std::vector<double>& mus, const Tolerances& tol = {});

/// besov_norm_equiv / besov_norm over the ensemble. Rows "norm_equiv_upper"
/// (max ratio) and "norm_equiv_lower" (max inverse ratio) per N. Passes when
/// upper * lower <= tol.equivalence_window and both are resolution-stable.
VerificationReport check_norm_equivalence(const EnsembleSpec& e, double s = 2.0, const Tolerances& tol = {});

/// ||f||_{B^s_{p,q}} / ||f||_{B^{s+s0}_{p,q0}} over the ensemble, s0 >= 0.
VerificationReport check_embedding(const EnsembleSpec& e, double s, double s0, double p, double q, double q0,
                                   const Tolerances& tol = {});

/// Canonical suite: every check above on the default parameter grid. `gamma`
/// is the exponent of the mu-scaling check.
std::vector<VerificationReport> run_verification_suite(const EnsembleSpec& e, const std::vector<double>& mus,
                                                       const Tolerances& tol = {}, double gamma = 0.25);

}  // namespace sqgcrit
