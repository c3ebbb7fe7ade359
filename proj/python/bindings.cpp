#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

#include "sqgcrit/dyadic.hpp"
#include "sqgcrit/ensemble.hpp"
#include "sqgcrit/error.hpp"
#include "sqgcrit/estimates.hpp"
#include "sqgcrit/evolution.hpp"
#include "sqgcrit/nonlinear.hpp"
#include "sqgcrit/spectral.hpp"

namespace py = pybind11;
using namespace sqgcrit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Coefficients as an (N, N) array indexed [m-1, n-1]; always a copy.
Array coefficients(const SpectralField& f) {
  const py::ssize_t n = f.modes();
  Array out({n, n});
  std::copy(f.coefficients().begin(), f.coefficients().end(), out.mutable_data());
  return out;
}

SpectralField field_from(const DomainSpec& d, const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != d.modes || a.shape(1) != d.modes) {
    throw DomainError("coefficient array must have shape (N, N)");
  }
  return SpectralField(d, std::vector<double>(a.data(), a.data() + a.size()));
}

Array grid_values(const GridField& g) {
  const py::ssize_t n = g.stride();
  Array out({n, n});
  std::copy(g.values().begin(), g.values().end(), out.mutable_data());
  return out;
}

GridField grid_from(const DomainSpec& d, const Array& a) {
  const py::ssize_t n = d.closed_points();
  if (a.ndim() != 2 || a.shape(0) != n || a.shape(1) != n) {
    throw DomainError("grid array must have shape (G+2, G+2)");
  }
  GridField g(d);
  std::copy(a.data(), a.data() + a.size(), g.values().begin());
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dirichlet sine-basis SQG solver and Besov estimate checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::enum_<Quadrature>(m, "Quadrature")
      .value("midpoint", Quadrature::midpoint)
      .value("trapezoid", Quadrature::trapezoid);
  py::enum_<Dealias>(m, "Dealias").value("three_halves", Dealias::three_halves).value("none", Dealias::none);
  py::enum_<Normalization>(m, "Normalization")
      .value("none", Normalization::none)
      .value("l2", Normalization::l2)
      .value("besov", Normalization::besov_2_2_1);
  py::enum_<Stepper>(m, "Stepper").value("picard", Stepper::picard).value("rk4", Stepper::rk4);

  py::class_<DomainSpec>(m, "DomainSpec")
      .def(py::init([](int modes, std::optional<int> grid, Quadrature q) {
             return DomainSpec::make(modes, grid.value_or(DomainSpec::dealiased_grid(modes)), q);
           }),
           py::arg("modes"), py::arg("grid") = py::none(), py::arg("quadrature") = Quadrature::trapezoid)
      .def_readonly("modes", &DomainSpec::modes)
      .def_readonly("grid", &DomainSpec::grid)
      .def_readonly("quadrature", &DomainSpec::quadrature)
      .def_property_readonly("dealiased", &DomainSpec::dealiased)
      .def("__eq__", [](const DomainSpec& a, const DomainSpec& b) { return a == b; })
      .def("__repr__", [](const DomainSpec& d) {
        return "DomainSpec(modes=" + std::to_string(d.modes) + ", grid=" + std::to_string(d.grid) + ")";
      });

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init([](const DomainSpec& d) { return SpectralField::zero(d); }), py::arg("domain"))
      .def(py::init(&field_from), py::arg("domain"), py::arg("coefficients"))
      .def_static("mode", &SpectralField::mode, py::arg("domain"), py::arg("m"), py::arg("n"),
                  py::arg("amplitude") = 1.0)
      .def_property_readonly("domain", &SpectralField::domain)
      .def_property_readonly("coefficients", &coefficients)
      .def("l2_norm", &SpectralField::l2_norm)
      .def("__add__", [](const SpectralField& a, const SpectralField& b) { return a + b; })
      .def("__sub__", [](const SpectralField& a, const SpectralField& b) { return a - b; })
      .def("__mul__", [](const SpectralField& a, double s) { return s * a; })
      .def("__rmul__", [](const SpectralField& a, double s) { return s * a; });

  m.def("to_grid", [](const SpectralField& f) { return grid_values(to_grid(f)); }, py::arg("field"),
        "Closed-grid samples, shape (G+2, G+2), boundary rows and columns zero.");
  m.def("from_grid", [](const DomainSpec& d, const Array& a) { return from_grid(grid_from(d, a)); },
        py::arg("domain"), py::arg("values"));
  m.def("random_field",
        [](const DomainSpec& d, int sample, std::uint64_t seed, Normalization norm, double decay) {
          EnsembleSpec e;
          e.seed = seed;
          e.normalization = norm;
          e.decay_rate = decay;
          e.resolutions = {d.modes};
          e.count = sample + 1;
          return random_field(d, e, sample);
        },
        py::arg("domain"), py::arg("sample") = 0, py::arg("seed") = EnsembleSpec{}.seed,
        py::arg("normalization") = Normalization::l2, py::arg("decay") = 3.0);

  m.def("besov_norm", [](const SpectralField& f, double s, double p, double q) { return besov_norm(f, {s, p, q}); },
        py::arg("field"), py::arg("s"), py::arg("p") = 2.0, py::arg("q") = 1.0);
  m.def("besov_norm_equiv",
        [](const SpectralField& f, double s, double q) { return besov_norm_equiv(f, {s, 2.0, q}); }, py::arg("field"),
        py::arg("s") = 2.0, py::arg("q") = 1.0);
  m.def("phi_block", &phi_block, py::arg("field"), py::arg("j"));
  m.def("psi_block", &psi_block, py::arg("field"), py::arg("j"));
  m.def("dyadic_block", &dyadic_block, py::arg("j"), py::arg("lam"));
  m.def("active_blocks", [](const DomainSpec& d) {
    const auto r = active_blocks(d);
    return py::make_tuple(r.lo, r.hi);
  });

  m.def("advection", &advection, py::arg("theta"), py::arg("transported"), py::arg("dealias") = Dealias::three_halves);
  m.def("regularized", &regularized, py::arg("theta"), py::arg("transported"), py::arg("mu"),
        py::arg("dealias") = Dealias::three_halves);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](double T, double dt, std::optional<double> window, Stepper stepper, int stride) {
             SolverConfig c;
             c.horizon = T;
             c.dt = dt;
             c.window = window.value_or(T);
             c.stepper = stepper;
             c.store_stride = stride;
             c.validate();
             return c;
           }),
           py::arg("T") = 0.1, py::arg("dt") = 1e-3, py::arg("window") = py::none(),
           py::arg("stepper") = Stepper::picard, py::arg("store_stride") = 1)
      .def_readwrite("T", &SolverConfig::horizon)
      .def_readwrite("dt", &SolverConfig::dt)
      .def_readwrite("window", &SolverConfig::window)
      .def_readwrite("picard_tol", &SolverConfig::picard_tol)
      .def_readwrite("picard_max_iter", &SolverConfig::picard_max_iter)
      .def_readwrite("grad_ceiling", &SolverConfig::grad_ceiling);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("mu", &Trajectory::mu)
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("picard_iterations", &Trajectory::picard_iterations)
      .def_property_readonly("final_state", &Trajectory::final_state)
      .def_property_readonly("l2_norms",
                             [](const Trajectory& t) {
                               std::vector<double> v;
                               for (const auto& d : t.diagnostics) v.push_back(d.l2_norm);
                               return v;
                             })
      .def("__len__", &Trajectory::size);

  m.def("picard_solve", &picard_solve, py::arg("theta0"), py::arg("mu"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("rk4_solve", &rk4_solve, py::arg("theta0"), py::arg("mu"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("chemin_lerner_norm", py::overload_cast<const Trajectory&, double>(&chemin_lerner_norm), py::arg("trajectory"),
        py::arg("s") = 2.0);

  py::class_<SweepReport>(m, "SweepReport")
      .def_readonly("mus", &SweepReport::mus)
      .def_readonly("chemin_lerner", &SweepReport::chemin_lerner)
      .def_readonly("consecutive_distance", &SweepReport::consecutive_distance)
      .def_readonly("zero_limit_distance", &SweepReport::zero_limit_distance)
      .def_readonly("cl_spread", &SweepReport::cl_spread)
      .def_property_readonly("passed", &SweepReport::pass);
  m.def("mu_sweep", &mu_sweep, py::arg("theta0"), py::arg("mus"), py::arg("config"), py::arg("compare_zero") = true,
        py::arg("spread_limit") = 2.0, py::call_guard<py::gil_scoped_release>());

  py::class_<ReportRow>(m, "ReportRow")
      .def_readonly("inequality_id", &ReportRow::inequality_id)
      .def_readonly("modes", &ReportRow::modes)
      .def_readonly("mu", &ReportRow::mu)
      .def_readonly("max_ratio", &ReportRow::max_ratio);
  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("id", &VerificationReport::id)
      .def_readonly("rows", &VerificationReport::rows)
      .def_readonly("passed", &VerificationReport::pass)
      .def_readonly("note", &VerificationReport::note)
      .def("max_ratio", &VerificationReport::max_ratio);

  auto ensemble = [](int count, std::vector<int> resolutions) {
    EnsembleSpec e;
    e.count = count;
    e.resolutions = std::move(resolutions);
    e.validate();
    return e;
  };
  m.def("check_norm_equivalence",
        [ensemble](int count, std::vector<int> resolutions, double s) {
          return check_norm_equivalence(ensemble(count, std::move(resolutions)), s);
        },
        py::arg("count") = 10, py::arg("resolutions") = std::vector<int>{16, 24}, py::arg("s") = 2.0);
  m.def("check_bernstein",
        [ensemble](int count, std::vector<int> resolutions, double p, double r, int alpha) {
          return check_bernstein(ensemble(count, std::move(resolutions)), p, r, alpha);
        },
        py::arg("count") = 10, py::arg("resolutions") = std::vector<int>{16, 24}, py::arg("p") = 2.0,
        py::arg("r") = 2.0, py::arg("alpha") = 1);
  m.def("check_psi_bounds", [](const DomainSpec& d) { return check_psi_bounds(d); }, py::arg("domain"));
}
