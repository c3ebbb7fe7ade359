#pragma once

#include <span>
#include <vector>

#include "sqgcrit/field.hpp"
#include "sqgcrit/spectral.hpp"

// Littlewood-Paley calculus for the Dirichlet Laplacian.
//
// phi_j(lambda) = phi0(lambda / 2^j) with phi0(lambda) = chi(lambda) - chi(2 lambda),
// where chi is a smooth step equal to 1 on [0, 1] and 0 on [2, inf). The
// blocks are multipliers in Lambda_D = sqrt(A_D), so they are evaluated at the
// square root of each eigenvalue. Resolvent localization psi_j is a multiplier
// in the eigenvalue a itself.

namespace sqgcrit {

struct BesovIndex {
  double s = 0.0;
  double p = 2.0;  // integrability, [1, inf]
  double q = 1.0;  // summability, [1, inf]
};

/// Smooth step: 1 for x <= 1, 0 for x >= 2, exp-bump blend in between.
double dyadic_step(double x);
/// phi0(lambda) = chi(lambda) - chi(2 lambda), supported in [1/2, 2].
double dyadic_profile(double lambda);
/// phi_j(lambda).
double dyadic_block(int j, double lambda);
/// Symbol of S_j = sum_{k <= j} phi_k, evaluated at lambda.
double low_pass_symbol(int j, double lambda);

/// psi_j at eigenvalue a of A_D: (1+2^{-2j-2}a)^{-1} - (1+2^{-2j}a)^{-1},
/// evaluated in the cancellation-free product form.
double psi_symbol(int j, double a);

/// Integer block range outside of which phi_j vanishes on the truncated spectrum.
struct BlockRange {
  int lo;
  int hi;
};
BlockRange active_blocks(const DomainSpec& domain);

SpectralField phi_block(const SpectralField& f, int j);
/// S_j f.
SpectralField low_pass(const SpectralField& f, int j);
/// (1 - S_j) f.
SpectralField high_pass(const SpectralField& f, int j);
SpectralField psi_block(const SpectralField& f, int j);
SpectralField psi_sqrt_block(const SpectralField& f, int j);

/// Per-block values 2^{sj} ||phi_j f||_{L^p} over the active range.
std::vector<double> besov_blocks(const SpectralField& f, double s, double p);

/// ell^q over the active blocks of 2^{sj} ||phi_j f||_{L^p}.
double besov_norm(const SpectralField& f, const BesovIndex& idx);

/// Besov norm of a tensor-valued field given by its components; the L^p norm
/// is taken of the pointwise Euclidean magnitude.
double besov_norm(std::span<const SpectralField> components, const BesovIndex& idx);

/// Number of blocks added on each side of the active range when summing the
/// resolvent-localized norms; psi_j has geometric tails in j.
inline constexpr int kPsiTailBlocks = 40;

/// Tail length for besov_norm_equiv at regularity s: the terms decay like
/// 2^{-min(s-1, 3-s)|j|} away from the spectrum, so this many blocks bring the
/// truncated tail below double-precision round-off. At least kPsiTailBlocks.
int psi_tail_blocks(double s);

/// ell^q over j of 2^{(s-2)j} ||psi_j^{1/2} Delta f||_{L^p}. Requires |s-2| < 1.
double besov_norm_equiv(const SpectralField& f, const BesovIndex& idx);

/// sum_j 2^{sj} max_t ||phi_j theta(t)||_{L^2} over the given states.
double chemin_lerner_norm(std::span<const SpectralField> states, double s);

/// ell^q sum helper (q = inf gives the max).
double lq_sum(std::span<const double> values, double q);

}  // namespace sqgcrit
