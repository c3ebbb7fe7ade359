#include "sqgcrit/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <string_view>

#include "sqgcrit/error.hpp"

namespace sqgcrit {
namespace {

constexpr std::string_view kCheckpointMagic = "SQGC0001";
constexpr std::string_view kTrajectoryMagic = "SQGT0001";

class Writer {
 public:
  void bytes(std::string_view s) { buf_.append(s); }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) buf_.push_back(static_cast<char>((v >> (8 * k)) & 0xffu));
  }
  void u64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) buf_.push_back(static_cast<char>((v >> (8 * k)) & 0xffu));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string data, std::string origin) : data_(std::move(data)), origin_(std::move(origin)) {}

  void magic(std::string_view expected) {
    if (data_.size() < expected.size() || std::string_view(data_).substr(0, expected.size()) != expected) {
      throw FormatError(origin_ + ": bad magic, expected " + std::string(expected));
    }
    pos_ = expected.size();
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + k])) << (8 * k);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + k])) << (8 * k);
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  void finish() const {
    if (pos_ != data_.size()) throw FormatError(origin_ + ": trailing bytes after payload");
  }
  const std::string& origin() const { return origin_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw FormatError(origin_ + ": truncated payload");
  }
  std::string data_;
  std::string origin_;
  std::size_t pos_ = 0;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_bytes(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void header(Writer& w, std::string_view magic, const DomainSpec& d) {
  w.bytes(magic);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(d.modes));
  w.u32(static_cast<std::uint32_t>(d.grid));
  w.u32(d.quadrature == Quadrature::midpoint ? 1u : 0u);
}

DomainSpec read_header(Reader& r, std::string_view magic) {
  r.magic(magic);
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw FormatError(fmt::format("{}: version {} not supported (expected {})", r.origin(), version, kFormatVersion));
  }
  const std::uint32_t n = r.u32(), g = r.u32(), q = r.u32();
  if (q > 1) throw FormatError(r.origin() + ": unknown quadrature code");
  if (n == 0 || n > 1u << 15 || g < n || g > 1u << 16) throw FormatError(r.origin() + ": invalid N or G in header");
  return DomainSpec::make(static_cast<int>(n), static_cast<int>(g), q == 1 ? Quadrature::midpoint : Quadrature::trapezoid);
}

void coefficients(Writer& w, const SpectralField& f) {
  for (double c : f.coefficients()) w.f64(c);
}

SpectralField coefficients(Reader& r, const DomainSpec& d) {
  SpectralField f(d);
  for (double& c : f.coefficients()) c = r.f64();
  return f;
}

std::string number(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

void write_checkpoint(const Checkpoint& cp, const std::filesystem::path& path) {
  Writer w;
  header(w, kCheckpointMagic, cp.field.domain());
  w.f64(cp.time);
  w.f64(cp.mu);
  coefficients(w, cp.field);
  write_bytes(path, w.data());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  Reader r(slurp(path), path.string());
  const DomainSpec d = read_header(r, kCheckpointMagic);
  Checkpoint cp;
  cp.time = r.f64();
  cp.mu = r.f64();
  cp.field = coefficients(r, d);
  r.finish();
  return cp;
}

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  if (traj.empty()) throw DomainError("cannot write an empty trajectory");
  Writer w;
  header(w, kTrajectoryMagic, traj.domain);
  w.f64(traj.mu);
  w.u64(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (!(traj.states[k].domain() == traj.domain)) throw DomainError("trajectory states span different domains");
    w.f64(traj.times[k]);
    coefficients(w, traj.states[k]);
  }
  w.u64(traj.picard_iterations.size());
  for (int it : traj.picard_iterations) w.u32(static_cast<std::uint32_t>(it));
  write_bytes(path, w.data());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  Reader r(slurp(path), path.string());
  Trajectory traj;
  traj.domain = read_header(r, kTrajectoryMagic);
  traj.mu = r.f64();
  const std::uint64_t count = r.u64();
  if (count == 0) throw FormatError(path.string() + ": trajectory has no states");
  for (std::uint64_t k = 0; k < count; ++k) {
    const double t = r.f64();
    try {
      traj.push(t, coefficients(r, traj.domain));
    } catch (const DomainError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  }
  const std::uint64_t windows = r.u64();
  for (std::uint64_t k = 0; k < windows; ++k) traj.picard_iterations.push_back(static_cast<int>(r.u32()));
  r.finish();
  return traj;
}

void write_report(std::span<const VerificationReport> reports, const std::filesystem::path& path) {
  std::string out = "inequality_id,N,mu,max_ratio\n";
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      out += fmt::format("{},{},{},{}\n", row.inequality_id, row.modes, row.mu ? number(*row.mu) : "",
                         number(row.max_ratio));
    }
  }
  write_text(path, out);
}

void write_report(const VerificationReport& report, const std::filesystem::path& path) {
  write_report(std::span<const VerificationReport>(&report, 1), path);
}

void write_norm_series(const Trajectory& traj, const std::filesystem::path& path) {
  std::string out = "time,l2_norm,besov_2_2_1,grad_linf\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& d = traj.diagnostics[k];
    out += fmt::format("{},{},{},{}\n", number(traj.times[k]), number(d.l2_norm), number(d.besov_2_2_1),
                       number(d.grad_linf));
  }
  write_text(path, out);
}

void write_sweep(const SweepReport& report, const std::filesystem::path& path) {
  std::string out = "mu,chemin_lerner,distance_to_next,distance_to_zero\n";
  for (std::size_t k = 0; k < report.mus.size(); ++k) {
    const bool last = k + 1 == report.mus.size();
    out += fmt::format("{},{},{},{}\n", number(report.mus[k]), number(report.chemin_lerner[k]),
                       k < report.consecutive_distance.size() ? number(report.consecutive_distance[k]) : "",
                       last && report.has_zero_limit ? number(report.zero_limit_distance) : "");
  }
  write_text(path, out);
}

void write_growth(const GrowthReport& report, const std::filesystem::path& path) {
  std::string out = "time,ratio,grad_integral,envelope\n";
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    out += fmt::format("{},{},{},{}\n", number(report.times[k]), number(report.ratio[k]),
                       number(report.grad_integral[k]),
                       number(std::exp(report.fitted_constant * report.grad_integral[k])));
  }
  write_text(path, out);
}

void write_text(const std::filesystem::path& path, const std::string& text) { write_bytes(path, text); }

}  // namespace sqgcrit
