#pragma once

#include <filesystem>
#include <span>

#include "sqgcrit/estimates.hpp"
#include "sqgcrit/evolution.hpp"
#include "sqgcrit/trajectory.hpp"

// Binary layouts are little-endian regardless of host.
//
// Checkpoint: "SQGC0001" | u32 version | u32 N | u32 G | u32 quadrature
//             | f64 t | f64 mu | N*N f64 coefficients (row-major modes)
// Trajectory: "SQGT0001" | u32 version | u32 N | u32 G | u32 quadrature
//             | f64 mu | u64 states | states * (f64 t, N*N f64)
//             | u64 windows | windows * u32 picard iterations

namespace sqgcrit {

inline constexpr std::uint32_t kFormatVersion = 1;

struct Checkpoint {
  SpectralField field;
  double time = 0.0;
  double mu = 0.0;
};

void write_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);
/// Throws FormatError on bad magic, version mismatch or truncation.
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Throws DomainError for an empty trajectory.
void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);
/// Diagnostics are recomputed from the stored coefficients.
Trajectory read_trajectory(const std::filesystem::path& path);

/// CSV "inequality_id,N,mu,max_ratio"; mu is empty when not applicable.
void write_report(std::span<const VerificationReport> reports, const std::filesystem::path& path);
void write_report(const VerificationReport& report, const std::filesystem::path& path);

/// CSV "time,l2_norm,besov_2_2_1,grad_linf".
void write_norm_series(const Trajectory& traj, const std::filesystem::path& path);

/// CSV "mu,chemin_lerner,distance_to_next,distance_to_zero".
void write_sweep(const SweepReport& report, const std::filesystem::path& path);

/// CSV "time,ratio,grad_integral,envelope".
void write_growth(const GrowthReport& report, const std::filesystem::path& path);

/// Writes text atomically (temporary file + rename). Throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sqgcrit
