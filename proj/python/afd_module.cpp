// Python bindings. Grid functions cross the boundary as 1-D float arrays whose
// length is the grid size.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "afd/diagnostics.hpp"
#include "afd/errors.hpp"
#include "afd/grid.hpp"
#include "afd/models.hpp"
#include "afd/timestep.hpp"
#include "afd/trialgen.hpp"

namespace py = pybind11;
using namespace afd;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridFunction to_grid_function(const Array& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a 1-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return GridFunction(Grid(n), std::vector<double>(a.data(), a.data() + n));
}

Array to_array(const GridFunction& f) {
  return py::array_t<double>(static_cast<py::ssize_t>(f.size()), f.values().data());
}

Model make_model(const std::string& name, double epsilon, double kappa, int hilbert_sign,
                 double positivity_floor) {
  Model m{parse_model_kind(name), {}};
  m.params.epsilon = epsilon;
  m.params.kappa = kappa;
  m.params.hilbert_sign = hilbert_sign;
  m.params.positivity_floor = positivity_floor;
  m.params.validate(m.kind);
  return m;
}

py::dict inequality_dict(const InequalityReport& r) {
  py::dict d;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["margin"] = r.margin;
  d["normalized_input"] = r.normalized_input;
  d["degenerate"] = r.status == InequalityStatus::DegenerateInput;
  return d;
}

// Column name and accessor of every diagnostics field, in CSV order.
const std::vector<std::pair<const char*, double DiagnosticsRecord::*>> kRecordFields = {
    {"t", &DiagnosticsRecord::t},
    {"mass", &DiagnosticsRecord::mass},
    {"min_u", &DiagnosticsRecord::min_u},
    {"max_u", &DiagnosticsRecord::max_u},
    {"l2_dist", &DiagnosticsRecord::l2_dist},
    {"entropy", &DiagnosticsRecord::entropy},
    {"entropy_dissipation", &DiagnosticsRecord::entropy_dissipation},
    {"energy_dissipation", &DiagnosticsRecord::energy_dissipation},
    {"lyapunov", &DiagnosticsRecord::lyapunov},
    {"theta_linf", &DiagnosticsRecord::theta_linf},
    {"a1_norm", &DiagnosticsRecord::a1_norm},
    {"a3_norm", &DiagnosticsRecord::a3_norm},
    {"dt_used", &DiagnosticsRecord::dt_used},
};

py::dict simulate(const Array& u0, const std::string& model, double t_end, double cfl,
                  double record_every, std::size_t max_steps, double epsilon, double kappa,
                  int hilbert_sign, double positivity_floor) {
  const auto u = to_grid_function(u0);
  const auto m = make_model(model, epsilon, kappa, hilbert_sign, positivity_floor);
  SolverConfig c;
  c.t_end = t_end;
  c.cfl = cfl;
  c.record_every = record_every;
  c.max_steps = max_steps;
  c.positivity_floor = positivity_floor;
  Trajectory traj;
  {
    py::gil_scoped_release release;
    traj = integrate(u, m, c);
  }

  const auto rows = static_cast<py::ssize_t>(traj.entries.size());
  const auto n = static_cast<py::ssize_t>(u.size());
  py::array_t<double> states({rows, n});
  auto s = states.mutable_unchecked<2>();
  py::dict records;
  for (const auto& [name, field] : kRecordFields) {
    py::array_t<double> col(rows);
    auto c_ = col.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < rows; ++i) c_(i) = traj.entries[i].record.*field;
    records[name] = col;
  }
  for (py::ssize_t i = 0; i < rows; ++i) {
    for (py::ssize_t j = 0; j < n; ++j) s(i, j) = traj.entries[i].u[j];
  }

  py::dict out;
  out["t"] = records["t"];
  out["u"] = states;
  out["records"] = records;
  out["termination"] = std::string(to_string(traj.termination));
  out["message"] = traj.message;
  out["entropy_residual"] = py::none();
  out["energy_residual"] = py::none();
  if (traj.entries.size() >= 3) {
    const auto r = balance_residuals(traj);
    out["entropy_residual"] = r.entropy;
    out["energy_residual"] = r.energy;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_afd, m) {
  m.doc() = "Spectral solver and diagnostics for arctan-type fast diffusion on the circle";

  auto base = py::register_exception<Error>(m, "AfdError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<PositivityViolation>(m, "PositivityViolation", base.ptr());
  py::register_exception<SlopeBlowup>(m, "SlopeBlowup", base.ptr());
  py::register_exception<InsufficientRecords>(m, "InsufficientRecords", base.ptr());
  py::register_exception<InvalidPreset>(m, "InvalidPreset", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("grid_points", [](std::size_t n) { return Grid(n).points(); }, py::arg("n"));

  m.def(
      "derivative", [](const Array& u, int order) { return to_array(derivative(to_grid_function(u), order)); },
      py::arg("u"), py::arg("order") = 1);
  m.def("fd_derivative", [](const Array& u) { return to_array(fd_derivative(to_grid_function(u))); },
        py::arg("u"));
  m.def("hilbert", [](const Array& u) { return to_array(hilbert(to_grid_function(u))); }, py::arg("u"));
  m.def(
      "heat_mollify",
      [](const Array& u, double kappa) { return to_array(heat_mollify(to_grid_function(u), kappa)); },
      py::arg("u"), py::arg("kappa"));
  m.def("quadrature", [](const Array& u) { return quadrature(to_grid_function(u)); }, py::arg("u"));
  m.def("w11_seminorm", [](const Array& u) { return w11_seminorm(to_grid_function(u)); }, py::arg("u"));
  m.def(
      "wiener_norm", [](const Array& u, double alpha) { return wiener_norm(to_grid_function(u), alpha); },
      py::arg("u"), py::arg("alpha"));

  m.def(
      "rhs",
      [](const Array& u, const std::string& model, double epsilon, double kappa, int hilbert_sign,
         double positivity_floor) {
        return to_array(evaluate_rhs(to_grid_function(u),
                                     make_model(model, epsilon, kappa, hilbert_sign, positivity_floor)));
      },
      py::arg("u"), py::arg("model") = "arctan_local", py::arg("epsilon") = 0.0, py::arg("kappa") = 0.0,
      py::arg("hilbert_sign") = 1, py::arg("positivity_floor") = kDefaultPositivityFloor);
  m.def("theta_from_u", [](const Array& u) { return to_array(theta_from_u(to_grid_function(u))); },
        py::arg("u"));
  m.def(
      "rhs_theta",
      [](const Array& theta, const Array& u) {
        return to_array(rhs_theta(to_grid_function(theta), to_grid_function(u)));
      },
      py::arg("theta"), py::arg("u"));
  m.def(
      "stable_dt",
      [](const Array& u, const std::string& model, double cfl, double epsilon, double kappa) {
        return stable_dt(to_grid_function(u), make_model(model, epsilon, kappa, 1, kDefaultPositivityFloor),
                         cfl);
      },
      py::arg("u"), py::arg("model") = "arctan_local", py::arg("cfl") = 0.25, py::arg("epsilon") = 0.0,
      py::arg("kappa") = 0.0);

  m.def("entropy", [](const Array& u) { return entropy(to_grid_function(u)); }, py::arg("u"));
  m.def("entropy_dissipation", [](const Array& u) { return entropy_dissipation(to_grid_function(u)); },
        py::arg("u"));
  m.def("energy_dissipation", [](const Array& u) { return energy_dissipation(to_grid_function(u)); },
        py::arg("u"));
  m.def("lyapunov", [](const Array& u) { return lyapunov(to_grid_function(u)); }, py::arg("u"));
  m.def("theta_linf", [](const Array& u) { return theta_linf(to_grid_function(u)); }, py::arg("u"));
  m.def(
      "check_inequality_1",
      [](const Array& u) { return inequality_dict(check_inequality_1(to_grid_function(u))); },
      py::arg("u"));
  m.def(
      "check_inequality_2",
      [](const Array& u) { return inequality_dict(check_inequality_2(to_grid_function(u))); },
      py::arg("u"));
  m.def(
      "decay_bound", [](const Array& u0, double t) { return decay_bound(to_grid_function(u0), t); },
      py::arg("u0"), py::arg("t"));

  m.def(
      "preset", [](const std::string& spec, std::size_t n) { return to_array(preset(parse_preset(spec), Grid(n))); },
      py::arg("spec"), py::arg("n") = 256);
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : preset_catalog()) names.push_back(p.name);
    return names;
  });
  m.def(
      "random_positive_density",
      [](std::uint64_t seed, std::size_t n, int max_mode, double min_floor, double amplitude_decay) {
        TrialConfig c;
        c.seed = seed;
        c.max_mode = max_mode;
        c.min_floor = min_floor;
        c.amplitude_decay = amplitude_decay;
        return to_array(random_positive_density(c, Grid(n)));
      },
      py::arg("seed"), py::arg("n") = 512, py::arg("max_mode") = 8, py::arg("min_floor") = 0.05,
      py::arg("amplitude_decay") = 1.0);

  m.def("simulate", &simulate, py::arg("u0"), py::arg("model") = "arctan_local", py::arg("t_end") = 1.0,
        py::arg("cfl") = 0.25, py::arg("record_every") = 1e-2, py::arg("max_steps") = 100'000'000,
        py::arg("epsilon") = 0.0, py::arg("kappa") = 0.0, py::arg("hilbert_sign") = 1,
        py::arg("positivity_floor") = kDefaultPositivityFloor);
}
