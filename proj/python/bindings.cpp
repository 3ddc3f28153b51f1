#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "q3d/assembly/kron.hpp"
#include "q3d/io/csv.hpp"
#include "q3d/materials/material_set.hpp"
#include "q3d/model/wire_benchmark.hpp"
#include "q3d/solver/transient.hpp"
#include "q3d/spectral/chebyshev.hpp"
#include "q3d/spectral/lobatto.hpp"
#include "q3d/spectral/quadrature.hpp"
#include "q3d/spectral/reference_tensors.hpp"

namespace py = pybind11;
using namespace q3d;

PYBIND11_MODULE(_core, m) {
    m.doc() = "quasi-3D magneto-thermal quench solver";

    // spectral primitives
    m.def("gauss_legendre", [](int n) {
        const auto rule = gauss_legendre(n);
        return py::make_tuple(rule.nodes, rule.weights);
    });
    m.def("lobatto_shape", &lobatto_shape, py::arg("q"), py::arg("xi"));
    m.def("lobatto_shape_deriv", &lobatto_shape_deriv, py::arg("q"), py::arg("xi"));
    m.def("chebyshev", &chebyshev, py::arg("m"), py::arg("x"));
    m.def("chebyshev_points", &chebyshev_points, py::arg("order"));
    m.def("chebyshev_coeffs", &chebyshev_coeffs, py::arg("samples"));
    m.def("chebyshev_eval", &chebyshev_eval, py::arg("coeffs"), py::arg("x"));

    py::class_<ReferenceTensorSet>(m, "ReferenceTensorSet")
        .def_property_readonly("max_basis_order", &ReferenceTensorSet::max_basis_order)
        .def_property_readonly("max_cheb_order", &ReferenceTensorSet::max_cheb_order)
        .def("K", &ReferenceTensorSet::K, py::arg("m"))
        .def("M", &ReferenceTensorSet::M, py::arg("m"))
        .def("D", &ReferenceTensorSet::D, py::arg("m"));
    m.def("build_reference_tensors", &build_reference_tensors, py::arg("max_basis_order"),
          py::arg("max_cheb_order"));
    m.def("load_or_build_reference_tensors", &load_or_build_reference_tensors,
          py::arg("max_basis_order"), py::arg("max_cheb_order"), py::arg("cache_dir"));

    m.def("kron_dense", [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        return Eigen::MatrixXd(kron_sparse(a.sparseView(), b.sparseView()));
    });

    // materials
    py::class_<QuenchParams>(m, "QuenchParams")
        .def(py::init([](double cs, double crit, double tau) {
                 QuenchParams p{cs, crit, tau};
                 p.validate();
                 return p;
             }),
             py::arg("theta_cs") = 6.5, py::arg("theta_crit") = 9.2, py::arg("tau_sc") = 0.010)
        .def_readwrite("theta_cs", &QuenchParams::theta_cs)
        .def_readwrite("theta_crit", &QuenchParams::theta_crit)
        .def_readwrite("tau_sc", &QuenchParams::tau_sc);
    m.def("quench_flag", &quench_flag, py::arg("theta"), py::arg("params"));
    m.def(
        "effective_materials",
        [](double theta, const QuenchParams& params, double rrr) {
            const auto sigma = MaterialCurve::copper_conductivity(rrr);
            const auto rho = MaterialCurve::copper_resistivity(rrr);
            const auto eff = effective_materials(theta, params, sigma, rho);
            return py::make_tuple(eff.tau, eff.sigma, eff.rho);
        },
        py::arg("theta"), py::arg("params"), py::arg("rrr") = 100.0);
    m.def("copper_resistivity", &copper_resistivity_fit, py::arg("theta"), py::arg("rrr"));

    // benchmark model and transient solve
    py::class_<WireModelParams>(m, "WireModelParams")
        .def(py::init<>())
        .def_readwrite("wire_lx", &WireModelParams::wire_lx)
        .def_readwrite("wire_ly", &WireModelParams::wire_ly)
        .def_readwrite("length", &WireModelParams::length)
        .def_readwrite("air_scale", &WireModelParams::air_scale)
        .def_readwrite("wire_nx", &WireModelParams::wire_nx)
        .def_readwrite("wire_ny", &WireModelParams::wire_ny)
        .def_readwrite("air_nx", &WireModelParams::air_nx)
        .def_readwrite("air_ny", &WireModelParams::air_ny)
        .def_readwrite("se_elements", &WireModelParams::se_elements)
        .def_readwrite("se_order", &WireModelParams::se_order)
        .def_readwrite("rrr", &WireModelParams::rrr)
        .def_readwrite("copper_fraction", &WireModelParams::copper_fraction)
        .def_readwrite("quench", &WireModelParams::quench)
        .def_readwrite("engineering_current_density",
                       &WireModelParams::engineering_current_density)
        .def_readwrite("bath_temperature", &WireModelParams::bath_temperature)
        .def_readwrite("peak_temperature", &WireModelParams::peak_temperature)
        .def_readwrite("bump_width_fraction", &WireModelParams::bump_width_fraction);

    py::class_<TransientConfig>(m, "TransientConfig")
        .def(py::init<>())
        .def_readwrite("t_end", &TransientConfig::t_end)
        .def_readwrite("steps", &TransientConfig::steps)
        .def_readwrite("picard_tol", &TransientConfig::picard_tol)
        .def_readwrite("picard_max_iters", &TransientConfig::picard_max_iters)
        .def_readwrite("regularization_scale", &TransientConfig::regularization_scale)
        .def_readwrite("material_cheb_order", &TransientConfig::material_cheb_order)
        .def_readwrite("adapt", &TransientConfig::adapt);

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("t", &StepRecord::t)
        .def_readonly("e_mag", &StepRecord::e_mag)
        .def_readonly("e_th", &StepRecord::e_th)
        .def_readonly("picard_iters", &StepRecord::picard_iters)
        .def_readonly("front_lo", &StepRecord::front_lo)
        .def_readonly("front_hi", &StepRecord::front_hi)
        .def("__repr__", [](const StepRecord& r) { return "<StepRecord " + csv_row(r) + ">"; });

    py::class_<CoupledSolver>(m, "Solver")
        .def(py::init([](const WireModelParams& params, const TransientConfig& config,
                         const ReferenceTensorSet& tensors) {
                 return std::make_unique<CoupledSolver>(build_wire_benchmark(params), tensors,
                                                        config);
             }),
             py::arg("params"), py::arg("config"), py::arg("tensors"), py::keep_alive<1, 4>())
        .def("run_transient", [](CoupledSolver& s) { return s.run_transient(); })
        .def("static_magnetic_energy", &CoupledSolver::static_magnetic_energy,
             py::arg("eps_factor") = 1.0)
        .def_property_readonly("thermal_dofs", &CoupledSolver::thermal_dofs)
        .def_property_readonly("magnetic_dofs", &CoupledSolver::magnetic_dofs)
        .def_property_readonly("temperature_field", &CoupledSolver::temperature_field)
        .def_property_readonly("magnetic_field", &CoupledSolver::magnetic_field);

    m.def("csv_string", &csv_string, py::arg("records"));
}
