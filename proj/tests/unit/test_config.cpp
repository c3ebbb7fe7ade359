#include <doctest.h>

#include <cstdlib>

#include "sqgcrit/config.hpp"
#include "sqgcrit/error.hpp"
#include "sqgcrit/io.hpp"

using namespace sqgcrit;

namespace {

std::string failing_key(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("defaults are valid and N alone implies the dealiased grid") {
  const auto c = parse_config("");
  CHECK(c.domain.modes == 32);
  CHECK(c.domain.grid == 48);
  CHECK(c.solver.window == c.solver.horizon);
  CHECK(parse_config("[domain]\nN = 20\n").domain.grid == 30);
  CHECK(parse_config("[solver]\nT = 0.5\n").solver.window == 0.5);
}

TEST_CASE("constraint violations name the offending key") {
  CHECK(failing_key("[domain]\nN = 16\nG = 8\n") == "domain.G");
  CHECK(failing_key("[domain]\nN = 16\nG = 20\n") == "domain.G");  // below 3N/2 with dealiasing on
  CHECK(failing_key("[domain]\nN = 16\nG = 20\n[nonlinearity]\ndealias = none\n") == "<accepted>");
  CHECK(failing_key("[solver]\ndt = -1e-3\n") == "solver.dt");
  CHECK(failing_key("[solver]\ndt = 0.05\nwindow = 0.01\n") == "solver.window");
  CHECK(failing_key("[nonlinearity]\nmu_list = 1e-2, 1e-1\n") == "nonlinearity.mu_list");
  CHECK(failing_key("[initial]\nkind = mode\nm = 40\n") == "initial.m");
  CHECK(failing_key("[verify]\ngamma = 0.5\n") == "verify.gamma");
  CHECK(failing_key("[solver]\nstepper = euler\n") == "solver.stepper");
  CHECK(failing_key("[solver]\ndt = fast\n") == "solver.dt");
  CHECK(failing_key("[experiment]\nid = a/b\n") == "experiment.id");
}

TEST_CASE("unknown sections and keys are rejected") {
  CHECK(failing_key("[domain]\nM = 3\n") == "domain.M");
  CHECK(failing_key("[solvr]\ndt = 1\n") == "solvr");
  CHECK(failing_key("", {"solver.dtt=1"}) == "solver.dtt");
}

TEST_CASE("syntax errors carry the line number") {
  try {
    parse_config("[domain]\nN = 8\n[broken\n", {}, "run.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("run.ini:3") != std::string::npos);
  }
}

TEST_CASE("overrides apply after the file and are re-validated") {
  const auto c = parse_config("[solver]\ndt = 1e-3\n", {"solver.dt=2e-3", "nonlinearity.mu=0", "domain.N=8"});
  CHECK(c.solver.dt == 2e-3);
  CHECK(c.mu == 0.0);
  CHECK(c.domain.modes == 8);
  CHECK(c.domain.grid == 12);
  CHECK(failing_key("", {"solver.dt=-1"}) == "solver.dt");
  CHECK_THROWS_AS(parse_config("", {"no_dot=1"}), ConfigError);
}

TEST_CASE("rendering round-trips every field") {
  const auto c = parse_config(
      "[domain]\nN = 12\nquadrature = midpoint\n[solver]\nT = 0.2\ndt = 0.01\nwindow = 0.05\nstepper = rk4\n"
      "[nonlinearity]\nmu = 0.003\nmu_list = 0.5, 0.05\n[initial]\nkind = mode\nm = 2\nn = 3\namplitude = 0.1\n"
      "[ensemble]\ncount = 7\nresolutions = 12, 24\nnormalization = besov\n[besov]\ns = 1.5\np = inf\nq = 2\n"
      "[gronwall]\nresolutions = 12\n[experiment]\nid = rt\nseed = 5\njobs = 2\n");
  const auto again = parse_config(render_config(c));
  CHECK(render_config(again) == render_config(c));
  CHECK(again.domain.quadrature == Quadrature::midpoint);
  CHECK(again.solver.window == 0.05);
  CHECK(again.solver.stepper == Stepper::rk4);
  CHECK(again.mus == std::vector<double>{0.5, 0.05});
  CHECK(std::isinf(again.besov.p));
  CHECK(again.ensemble.seed == 5);
  CHECK(again.ensemble.resolutions == std::vector<int>{12, 24});
  CHECK(again.jobs == 2);
}

TEST_CASE("automatic horizon follows the existence window") {
  auto c = parse_config("[solver]\nT = auto\ndt = 1e-3\nhorizon_constant = 0.05\n[initial]\nnormalization = besov\n");
  CHECK(c.horizon_auto);
  const auto theta = initial_field(c);
  const auto solver = resolve_solver(c, 2.0 * theta);
  CHECK(solver.horizon == doctest::Approx(0.025));
  CHECK(solver.window == solver.horizon);
  CHECK_THROWS_AS(resolve_solver(c, SpectralField::zero(c.domain)), ConfigError);
}

TEST_CASE("initial data sources") {
  auto c = parse_config("[domain]\nN = 8\n[initial]\nkind = mode\nm = 2\nn = 1\namplitude = 3\n");
  const auto mode = initial_field(c);
  CHECK(mode.at(2, 1) == 3.0);
  CHECK(mode.l2_norm() == 3.0);

  const auto dir = std::filesystem::temp_directory_path() / "sqgcrit_unit_config";
  std::filesystem::remove_all(dir);
  write_checkpoint({mode, 0.0, 0.0}, dir / "m.chk");
  c = parse_config("[domain]\nN = 8\n[initial]\nkind = checkpoint\npath = " + (dir / "m.chk").string() + "\n");
  CHECK((initial_field(c) - mode).l2_norm() == 0.0);
  c = parse_config("[domain]\nN = 10\n[initial]\nkind = checkpoint\npath = " + (dir / "m.chk").string() + "\n");
  CHECK_THROWS_AS(initial_field(c), ConfigError);
  std::filesystem::remove_all(dir);

  c = parse_config("[initial]\nkind = random\namplitude = 5\nnormalization = l2\n");
  CHECK(initial_field(c).l2_norm() == doctest::Approx(5.0));
}

TEST_CASE("run directory precedence: explicit, environment, default") {
  auto c = parse_config("[experiment]\nid = demo\n");
  ::unsetenv("SQGCRIT_OUTPUT_ROOT");
  CHECK(run_directory(c) == std::filesystem::path("runs") / "demo");
  ::setenv("SQGCRIT_OUTPUT_ROOT", "/tmp/root", 1);
  CHECK(run_directory(c) == std::filesystem::path("/tmp/root") / "demo");
  c = parse_config("[experiment]\nid = demo\noutput = /tmp/explicit\n");
  CHECK(run_directory(c) == std::filesystem::path("/tmp/explicit"));
  ::unsetenv("SQGCRIT_OUTPUT_ROOT");
}
