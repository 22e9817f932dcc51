#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitstab/imex.hpp"
#include "splitstab/modeq.hpp"
#include "splitstab/models.hpp"
#include "splitstab/smallmat.hpp"

namespace py = pybind11;
using namespace splitstab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "IMEX flux-splitting stability toolkit";

  py::register_exception<NumericalError>(m, "NumericalError");

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("values", &Spectrum::values)
      .def_readonly("max_real", &Spectrum::max_real);

  m.def("eig", py::overload_cast<const MatC&>(&eig));
  m.def("commutator", &commutator);
  m.def("solve_linear", &solve_linear);

  py::class_<SystemSpec>(m, "SystemSpec")
      .def_readonly("name", &SystemSpec::name)
      .def_readonly("dim", &SystemSpec::dim)
      .def_readonly("params", &SystemSpec::params)
      .def("matrix", [](const SystemSpec& s, double eps) { return s.build(eps); })
      .def("advective_speed", &SystemSpec::advective_speed);

  py::enum_<SplitKind>(m, "SplitKind")
      .value("characteristic", SplitKind::characteristic)
      .value("general", SplitKind::general);

  py::class_<FluxSplitting>(m, "FluxSplitting")
      .def_readonly("system", &FluxSplitting::system)
      .def_readonly("kind", &FluxSplitting::kind)
      .def("hat", [](const FluxSplitting& sp, double eps) { return sp.build_hat(eps); })
      .def("tilde",
           [](const FluxSplitting& sp, double eps) { return sp.build_tilde(eps); });

  py::class_<AdmissibilityReport>(m, "AdmissibilityReport")
      .def_readonly("eps_samples", &AdmissibilityReport::eps_samples)
      .def_readonly("hyperbolic_hat", &AdmissibilityReport::hyperbolic_hat)
      .def_readonly("hyperbolic_tilde", &AdmissibilityReport::hyperbolic_tilde)
      .def_readonly("hat_eig_sup", &AdmissibilityReport::hat_eig_sup)
      .def_readonly("verdict", &AdmissibilityReport::verdict);

  m.def("prototype_system", &prototype_system, py::arg("a"));
  m.def("prototype_characteristic_splitting", &prototype_characteristic_splitting,
        py::arg("a"));
  m.def("prototype_noncommuting_splitting", &prototype_noncommuting_splitting,
        py::arg("a"));
  m.def("euler_linearized_system", &euler_linearized_system,
        py::arg("gamma") = 1.4);
  m.def("euler_paper_splitting", &euler_paper_splitting);
  m.def("euler_characteristic_splitting", &euler_characteristic_splitting);
  m.def("check_admissible", &check_admissible);
  m.def("splitting_by_name", &splitting_by_name, py::arg("name"),
        py::arg("a") = 2.0);
  m.def("catalog_names", &catalog_names);

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init([](double dx, double dt, double alpha_hat, double alpha_tilde) {
             return SchemeParams{dx, dt, alpha_hat, alpha_tilde};
           }),
           py::arg("dx"), py::arg("dt"), py::arg("alpha_hat") = 0.0,
           py::arg("alpha_tilde") = 0.0)
      .def_readwrite("dx", &SchemeParams::dx)
      .def_readwrite("dt", &SchemeParams::dt)
      .def_readwrite("alpha_hat", &SchemeParams::alpha_hat)
      .def_readwrite("alpha_tilde", &SchemeParams::alpha_tilde);

  py::enum_<Verdict>(m, "Verdict")
      .value("stable", Verdict::stable)
      .value("marginal", Verdict::marginal)
      .value("unstable", Verdict::unstable);

  py::enum_<AlphaTildeRule>(m, "AlphaTildeRule")
      .value("zero", AlphaTildeRule::zero)
      .value("stiff_eig", AlphaTildeRule::stiff_eig);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("k_list", &StabilityReport::k_list)
      .def_readonly("spectra", &StabilityReport::spectra)
      .def_readonly("max_real_overall", &StabilityReport::max_real_overall)
      .def_readonly("verdict", &StabilityReport::verdict)
      .def_readonly("witness_k", &StabilityReport::witness_k);

  py::class_<CflBounds>(m, "CflBounds")
      .def_readonly("nu1", &CflBounds::nu1)
      .def_readonly("phi", &CflBounds::phi)
      .def_readonly("psi", &CflBounds::psi)
      .def_readonly("nu2", &CflBounds::nu2);

  m.def("viscosity_matrix", &viscosity_matrix);
  m.def("frequency_matrix", &frequency_matrix);
  m.def("stability_scan", &stability_scan, py::arg("splitting"), py::arg("eps"),
        py::arg("params"), py::arg("k_max") = 64);
  m.def("char_real_parts", [](double a, double eps, const SchemeParams& p, int k) {
    const CharRealParts r = char_real_parts(a, eps, p, k);
    return py::make_tuple(r.mu0, r.mu_plus, r.mu_minus);
  });
  m.def("cfl_bounds", &cfl_bounds);
  m.def("default_alpha_hat", &default_alpha_hat);
  m.def("alpha_tilde_for", &alpha_tilde_for);
  m.def("max_stable_ratio", &max_stable_ratio, py::arg("splitting"),
        py::arg("eps"), py::arg("dx"), py::arg("rule"), py::arg("nu_hi"),
        py::arg("k_max") = 8);
  m.def("discrete_symbol", &discrete_symbol);

  py::class_<Grid>(m, "Grid")
      .def(py::init<int>(), py::arg("num_cells"))
      .def_readonly("num_cells", &Grid::num_cells)
      .def("dx", &Grid::dx)
      .def("center", &Grid::center);

  py::class_<GridField>(m, "GridField")
      .def(py::init<Grid, int>())
      .def_readonly("grid", &GridField::grid)
      .def_readonly("dim", &GridField::dim)
      .def_readwrite("values", &GridField::values)
      .def("l2_norm", &GridField::l2_norm);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("final", &RunResult::final)
      .def_readonly("l2_history", &RunResult::l2_history)
      .def_readonly("growth", &RunResult::growth)
      .def_readonly("blew_up", &RunResult::blew_up);

  m.def("init_fourier", &init_fourier);
  m.def("step",
        py::overload_cast<const GridField&, const FluxSplitting&, double,
                          const SchemeParams&>(&step));
  m.def("run", &run, py::arg("u0"), py::arg("splitting"), py::arg("eps"),
        py::arg("params"), py::arg("t_end"), py::arg("blowup_threshold") = 1e3);
  m.def("solve_periodic_block_tridiagonal", &solve_periodic_block_tridiagonal);
  m.def("convergence_study", &convergence_study, py::arg("splitting"),
        py::arg("eps"), py::arg("base"), py::arg("levels"), py::arg("t_end"));
}
