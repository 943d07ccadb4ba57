// Python bindings for the solver core: paths, fields, kernels, one-step maps,
// trajectories, and the convergence-study harness.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdnls/harness.hpp"
#include "sdnls/io.hpp"

namespace py = pybind11;
using namespace sdnls;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resonance-based solver suite for the cubic Schrodinger equation with white noise dispersion";
  m.attr("__version__") = kVersion;
  m.attr("NO_TRUNCATION") = kNoTruncation;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

  py::class_<BrownianPath, std::shared_ptr<BrownianPath>>(m, "BrownianPath")
      .def_readonly("seed", &BrownianPath::seed)
      .def_readonly("horizon", &BrownianPath::horizon)
      .def_readonly("h_fine", &BrownianPath::h_fine)
      .def_readonly("samples", &BrownianPath::samples)
      .def("value_at", &BrownianPath::value_at, py::arg("t"));

  m.def(
      "sample_brownian",
      [](std::uint64_t seed, double T, double h_fine) {
        return std::make_shared<BrownianPath>(sample_brownian(seed, T, h_fine));
      },
      py::arg("seed"), py::arg("T"), py::arg("h_fine"));
  m.def("truncate_value", &truncate_value, py::arg("w"), py::arg("t"), py::arg("R"));
  m.def("mc_path_error", &mc_path_error, py::arg("delta"), py::arg("R"), py::arg("t"),
        py::arg("n_samples"), py::arg("master_seed"), py::arg("h_fine"));

  py::class_<WongZakaiPath>(m, "WongZakaiPath")
      .def(py::init([](std::shared_ptr<BrownianPath> base, double delta, double R) {
             return WongZakaiPath(std::shared_ptr<const BrownianPath>(std::move(base)), delta, R);
           }),
           py::arg("base"), py::arg("delta"), py::arg("R") = kNoTruncation)
      .def("eval", &WongZakaiPath::eval, py::arg("t"))
      .def("increment", &WongZakaiPath::increment, py::arg("s"), py::arg("t"))
      .def_property_readonly("delta", &WongZakaiPath::delta)
      .def_property_readonly("R", &WongZakaiPath::truncation)
      .def_property_readonly("horizon", &WongZakaiPath::horizon);

  py::class_<TorusField>(m, "TorusField")
      .def(py::init<int>(), py::arg("bandwidth"))
      .def(py::init<int, std::vector<Complex>>(), py::arg("bandwidth"), py::arg("coeffs"))
      .def_property_readonly("bandwidth", &TorusField::bandwidth)
      .def("at", &TorusField::at, py::arg("k"))
      .def("set", &TorusField::set, py::arg("k"), py::arg("value"))
      .def_property_readonly("coeffs", [](const TorusField& f) { return f.coeffs(); });

  m.def("to_physical", &to_physical, py::arg("field"), py::arg("grid_size"));
  m.def(
      "to_spectral",
      [](const std::vector<Complex>& values, int N) { return to_spectral(values, N); },
      py::arg("values"), py::arg("bandwidth"));
  m.def("galerkin_project", &galerkin_project, py::arg("field"), py::arg("cutoff"));
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
  m.def("l2_norm", &l2_norm, py::arg("field"));
  m.def("free_propagate", &free_propagate, py::arg("field"), py::arg("b"));
  m.def("cubic", &cubic, py::arg("field"));
  m.def("apply_multiplier", &apply_multiplier, py::arg("field"), py::arg("multiplier"));
  m.def("conjugate_field", &conjugate_field, py::arg("field"));
  m.def("phi1", &phi1, py::arg("z"));
  m.def("hs_distance", &hs_distance, py::arg("a"), py::arg("b"), py::arg("s"));

  py::class_<KernelTable>(m, "KernelTable")
      .def_readonly("N", &KernelTable::N)
      .def_readonly("t_n", &KernelTable::t_n)
      .def_readonly("tau", &KernelTable::tau)
      .def_readonly("delta", &KernelTable::delta)
      .def_readonly("values", &KernelTable::values)
      .def("at", &KernelTable::at, py::arg("k"));

  m.def("sdlri_kernel", &sdlri_kernel, py::arg("path"), py::arg("t_n"), py::arg("tau"), py::arg("N"));
  m.def("expeuler_kernel", &expeuler_kernel, py::arg("path"), py::arg("t_n"), py::arg("tau"), py::arg("N"));
  m.def("kernel_oracle", &kernel_oracle, py::arg("path"), py::arg("t_n"), py::arg("tau"), py::arg("k"),
        py::arg("phase_factor"));

  py::enum_<Scheme>(m, "Scheme")
      .value("sdlri", Scheme::sdlri)
      .value("lie", Scheme::lie)
      .value("expeuler", Scheme::expeuler)
      .value("relaxed_cn", Scheme::relaxed_cn)
      .value("splitstep_ref", Scheme::splitstep_ref);
  py::enum_<PathSource>(m, "PathSource")
      .value("wong_zakai", PathSource::wong_zakai)
      .value("raw_brownian", PathSource::raw_brownian);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init<>())
      .def_readwrite("scheme", &SchemeConfig::scheme)
      .def_readwrite("T", &SchemeConfig::T)
      .def_readwrite("tau", &SchemeConfig::tau)
      .def_readwrite("delta", &SchemeConfig::delta)
      .def_readwrite("R", &SchemeConfig::R)
      .def_readwrite("N", &SchemeConfig::N)
      .def_readwrite("lam", &SchemeConfig::lambda)
      .def_readwrite("path_source", &SchemeConfig::path_source)
      .def_readwrite("cn_tol", &SchemeConfig::cn_tol)
      .def_readwrite("cn_max_iter", &SchemeConfig::cn_max_iter)
      .def("validate", &SchemeConfig::validate, py::arg("h_fine"));

  py::class_<TrajectoryResult>(m, "TrajectoryResult")
      .def_readonly("final_state", &TrajectoryResult::final_state)
      .def_readonly("steps", &TrajectoryResult::steps)
      .def_readonly("mass_drift", &TrajectoryResult::mass_drift);

  m.def(
      "run_trajectory",
      [](const SchemeConfig& cfg, std::shared_ptr<BrownianPath> path, const TorusField& u0) {
        return run_trajectory(cfg, std::shared_ptr<const BrownianPath>(std::move(path)), u0);
      },
      py::arg("config"), py::arg("path"), py::arg("u0"));
  m.def("step_sdlri", &step_sdlri, py::arg("u"), py::arg("kernel"), py::arg("db"), py::arg("lam"));
  m.def("step_lie", &step_lie, py::arg("u"), py::arg("psi_tau"), py::arg("tau"), py::arg("lam"));
  m.def("step_expeuler", &step_expeuler, py::arg("u"), py::arg("kernel"), py::arg("psi_tau"),
        py::arg("lam"));

  py::enum_<DataLabel>(m, "DataLabel")
      .value("H2", DataLabel::H2)
      .value("H3", DataLabel::H3)
      .value("H4", DataLabel::H4)
      .value("Cinf", DataLabel::Cinf);

  py::class_<InitialDataSpec>(m, "InitialDataSpec")
      .def_static("make", &InitialDataSpec::make, py::arg("N"), py::arg("label"), py::arg("target_l2"),
                  py::arg("seed"))
      .def_readwrite("N", &InitialDataSpec::N)
      .def_readwrite("label", &InitialDataSpec::label)
      .def_readwrite("theta", &InitialDataSpec::theta)
      .def_readwrite("target_l2", &InitialDataSpec::target_l2)
      .def_readwrite("seed", &InitialDataSpec::seed);
  m.def("make_initial_data", &make_initial_data, py::arg("spec"));

  py::class_<ErrorRow>(m, "ErrorRow")
      .def_readonly("scheme", &ErrorRow::scheme)
      .def_readonly("tau", &ErrorRow::tau)
      .def_readonly("delta", &ErrorRow::delta)
      .def_readonly("N", &ErrorRow::N)
      .def_readonly("s", &ErrorRow::s)
      .def_readonly("samples", &ErrorRow::samples)
      .def_readonly("error", &ErrorRow::error)
      .def_readonly("seed", &ErrorRow::seed)
      .def_readonly("valid", &ErrorRow::valid);

  py::class_<ErrorTable>(m, "ErrorTable")
      .def_readonly("rows", &ErrorTable::rows)
      .def_readonly("ref_self_error", &ErrorTable::ref_self_error);

  py::class_<StudyParams>(m, "StudyParams")
      .def(py::init<>())
      .def_readwrite("schemes", &StudyParams::schemes)
      .def_readwrite("tau_grid", &StudyParams::tau_grid)
      .def_readwrite("delta_grid", &StudyParams::delta_grid)
      .def_readwrite("delta", &StudyParams::delta)
      .def_readwrite("N", &StudyParams::N)
      .def_readwrite("N_ref", &StudyParams::N_ref)
      .def_readwrite("samples", &StudyParams::samples)
      .def_readwrite("s", &StudyParams::s)
      .def_readwrite("master_seed", &StudyParams::master_seed)
      .def_readwrite("data", &StudyParams::data)
      .def_readwrite("T", &StudyParams::T)
      .def_readwrite("lam", &StudyParams::lambda)
      .def_readwrite("R", &StudyParams::R)
      .def_readwrite("h_fine", &StudyParams::h_fine)
      .def_readwrite("tau_ref", &StudyParams::tau_ref)
      .def_readwrite("workers", &StudyParams::workers);

  m.def("strong_error_study", &strong_error_study, py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("pathwise_study", &pathwise_study, py::arg("params"), py::call_guard<py::gil_scoped_release>());
  m.def("delta_study", &delta_study, py::arg("params"), py::call_guard<py::gil_scoped_release>());

  py::enum_<SweepVar>(m, "SweepVar").value("tau", SweepVar::tau).value("delta", SweepVar::delta);
  py::class_<SlopeFit>(m, "SlopeFit")
      .def_readonly("slope", &SlopeFit::slope)
      .def_readonly("residual", &SlopeFit::residual)
      .def_readonly("points", &SlopeFit::points);
  m.def("fit_slope", &fit_slope, py::arg("table"), py::arg("scheme"), py::arg("var"));
  m.def("scheme_name", &scheme_name, py::arg("scheme"));
}
