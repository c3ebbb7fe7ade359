#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "sqgcrit/error.hpp"
#include "sqgcrit/io.hpp"
#include "support.hpp"

using namespace sqgcrit;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("sqgcrit_unit_" + name)) {
    fs::remove_all(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_all(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

Trajectory sample_trajectory(int modes, int states) {
  Trajectory t;
  t.domain = ensemble_domain(modes);
  t.mu = 1e-3;
  for (int k = 0; k < states; ++k) t.push(0.01 * k, testing::random(modes, k));
  t.picard_iterations = {4, 5, 3};
  return t;
}

}  // namespace

TEST_CASE("checkpoint round trip is bit exact and little-endian") {
  Scratch s("checkpoint");
  const auto f = testing::random(16, 3, Normalization::none);
  write_checkpoint({f, 0.25, 1e-2}, s.dir / "sub" / "a.chk");
  const auto back = read_checkpoint(s.dir / "sub" / "a.chk");
  CHECK(back.time == 0.25);
  CHECK(back.mu == 1e-2);
  CHECK(back.field.domain() == f.domain());
  CHECK((back.field - f).l2_norm() == 0.0);

  const std::string bytes = read_all(s.dir / "sub" / "a.chk");
  CHECK(bytes.size() == 8 + 4 * 4 + 2 * 8 + 16 * 16 * 8);
  CHECK(bytes.substr(0, 8) == "SQGC0001");
  CHECK(static_cast<unsigned char>(bytes[12]) == 16);  // N, low byte first
  CHECK(bytes[13] == 0);
  double first = 0.0;
  std::memcpy(&first, bytes.data() + 40, 8);
  CHECK(first == f.at(1, 1));
}

TEST_CASE("trajectory round trip over 100 states at N = 64") {
  Scratch s("trajectory");
  const auto t = sample_trajectory(64, 100);
  write_trajectory(t, s.dir / "t.bin");
  const auto back = read_trajectory(s.dir / "t.bin");
  REQUIRE(back.size() == 100);
  CHECK(back.mu == t.mu);
  CHECK(back.domain == t.domain);
  CHECK(back.picard_iterations == t.picard_iterations);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(back.times[k] == t.times[k]);
    CHECK((back.states[k] - t.states[k]).l2_norm() == 0.0);
    CHECK(back.diagnostics[k].besov_2_2_1 == t.diagnostics[k].besov_2_2_1);
  }
}

TEST_CASE("malformed files raise format errors") {
  Scratch s("malformed");
  const auto t = sample_trajectory(8, 3);
  write_trajectory(t, s.dir / "t.bin");
  const std::string good = read_all(s.dir / "t.bin");

  write_all(s.dir / "short.bin", good.substr(0, good.size() - 5));
  CHECK_THROWS_AS(read_trajectory(s.dir / "short.bin"), FormatError);

  write_all(s.dir / "long.bin", good + "x");
  CHECK_THROWS_AS(read_trajectory(s.dir / "long.bin"), FormatError);

  std::string version = good;
  version[8] = 2;
  write_all(s.dir / "version.bin", version);
  try {
    read_trajectory(s.dir / "version.bin");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("version 2") != std::string::npos);
  }

  CHECK_THROWS_AS(read_checkpoint(s.dir / "t.bin"), FormatError);  // wrong magic
  CHECK_THROWS_AS(read_checkpoint(s.dir / "missing.chk"), IoError);
}

TEST_CASE("empty trajectories are not written") {
  Scratch s("empty");
  CHECK_THROWS_AS(write_trajectory(Trajectory{}, s.dir / "e.bin"), DomainError);
  CHECK_FALSE(fs::exists(s.dir / "e.bin"));
}

TEST_CASE("CSV outputs: headers, empty reports and determinism") {
  Scratch s("csv");
  write_report(std::span<const VerificationReport>{}, s.dir / "empty.csv");
  CHECK(read_all(s.dir / "empty.csv") == "inequality_id,N,mu,max_ratio\n");

  VerificationReport r;
  r.rows.push_back({"x", 32, std::nullopt, 0.5});
  r.rows.push_back({"y", 48, 1e-2, 1.0 / 3.0});
  write_report(r, s.dir / "r.csv");
  CHECK(read_all(s.dir / "r.csv") ==
        "inequality_id,N,mu,max_ratio\nx,32,,0.5\ny,48,0.01,0.33333333333333331\n");

  const auto t = sample_trajectory(8, 4);
  write_norm_series(t, s.dir / "n1.csv");
  write_norm_series(t, s.dir / "n2.csv");
  const std::string n1 = read_all(s.dir / "n1.csv");
  CHECK(n1 == read_all(s.dir / "n2.csv"));
  CHECK(n1.rfind("time,l2_norm,besov_2_2_1,grad_linf\n", 0) == 0);
  CHECK(std::count(n1.begin(), n1.end(), '\n') == 5);

  SweepReport sw;
  sw.mus = {1e-1, 1e-2};
  sw.chemin_lerner = {1.0, 1.0};
  sw.consecutive_distance = {1e-6};
  sw.zero_limit_distance = 2e-7;
  sw.has_zero_limit = true;
  write_sweep(sw, s.dir / "sweep.csv");
  CHECK(read_all(s.dir / "sweep.csv") ==
        "mu,chemin_lerner,distance_to_next,distance_to_zero\n0.10000000000000001,1,9.9999999999999995e-07,\n"
        "0.01,1,,1.9999999999999999e-07\n");

  GrowthReport g;
  g.times = {0.0};
  g.ratio = {1.0};
  g.grad_integral = {0.0};
  write_growth(g, s.dir / "g.csv");
  CHECK(read_all(s.dir / "g.csv") == "time,ratio,grad_integral,envelope\n0,1,0,1\n");
}
