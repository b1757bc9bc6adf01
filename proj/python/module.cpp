// pybind11 bindings exposing the main operations of the delayed Duffing
// toolkit: elliptic primitives, reference orbits, the DDE integrator, the
// Floquet machinery, and the trajectory diagnostics.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "duffing/dde.hpp"
#include "duffing/diagnostics.hpp"
#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"
#include "duffing/floquet_analytic.hpp"
#include "duffing/floquet_numeric.hpp"
#include "duffing/orbit.hpp"

namespace py = pybind11;
using namespace duffing;

PYBIND11_MODULE(pyduffing, m) {
    m.doc() = "rapidly oscillating periodic solutions of the delayed "
              "Duffing oscillator x'' + a x + b x(t-T) + x^3 = 0";

    // elliptic
    m.def("complete_K", &complete_K, py::arg("m"),
          "complete elliptic integral of the first kind, parameter "
          "convention m = k^2");
    m.def("cn", &cn, py::arg("u"), py::arg("m"));
    m.def(
        "sn_dn",
        [](double u, double mm) {
            const auto v = sn_dn(u, mm);
            return py::make_tuple(v.sn, v.dn);
        },
        py::arg("u"), py::arg("m"));
    m.def(
        "jacobi",
        [](double u, double mm) {
            const auto v = jacobi(u, mm);
            return py::make_tuple(v.sn, v.cn, v.dn);
        },
        py::arg("u"), py::arg("m"), "returns (sn, cn, dn)");
    m.def("p_star", &p_star, "4 K(1/2), the limiting rescaled period");

    // orbit
    py::class_<DuffingParams>(m, "DuffingParams")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"),
             py::arg("T"))
        .def_readwrite("a", &DuffingParams::a)
        .def_readwrite("b", &DuffingParams::b)
        .def_readwrite("T", &DuffingParams::T)
        .def("alpha", &DuffingParams::alpha, py::arg("n"));

    py::class_<PeriodicOrbit>(m, "PeriodicOrbit")
        .def_readonly("n", &PeriodicOrbit::n)
        .def_readonly("alpha", &PeriodicOrbit::alpha)
        .def_readonly("amplitude", &PeriodicOrbit::amplitude)
        .def_readonly("omega", &PeriodicOrbit::omega)
        .def_readonly("m", &PeriodicOrbit::m)
        .def_readonly("period", &PeriodicOrbit::period)
        .def_readonly("energy", &PeriodicOrbit::energy);

    m.def("hamiltonian", &hamiltonian, py::arg("alpha"), py::arg("x"),
          py::arg("xdot"));
    m.def("period_of_amplitude", &period_of_amplitude, py::arg("alpha"),
          py::arg("A"));
    m.def("solve_amplitude", &solve_amplitude, py::arg("params"), py::arg("n"));
    m.def("orbit_state", &orbit_state, py::arg("orbit"), py::arg("t"));

    // dde
    py::class_<State>(m, "State")
        .def_readonly("x", &State::x)
        .def_readonly("xdot", &State::xdot);

    py::class_<HistoryFunction>(m, "HistoryFunction")
        .def_static("elliptic", &HistoryFunction::elliptic, py::arg("amplitude"),
                    py::arg("alpha"))
        .def_static("orbit", &HistoryFunction::orbit, py::arg("orbit"),
                    py::arg("phase") = 0.0)
        .def("__call__", &HistoryFunction::operator(), py::arg("t"));

    py::class_<IntegratorOptions>(m, "IntegratorOptions")
        .def(py::init<>())
        .def_readwrite("max_step", &IntegratorOptions::max_step)
        .def_readwrite("tolerance", &IntegratorOptions::tolerance)
        .def_readwrite("abs_floor", &IntegratorOptions::abs_floor);

    py::class_<Trajectory>(m, "Trajectory")
        .def("evaluate", &Trajectory::evaluate, py::arg("t"))
        .def_property_readonly("t_end", &Trajectory::t_end)
        .def_property_readonly("delay", &Trajectory::delay)
        .def_property_readonly("knot_count", &Trajectory::knot_count);

    m.def("integrate", &integrate, py::arg("params"), py::arg("history"),
          py::arg("t_end"), py::arg("options") = IntegratorOptions{},
          py::call_guard<py::gil_scoped_release>());

    // floquet
    py::enum_<Parity>(m, "Parity")
        .value("even", Parity::even)
        .value("odd", Parity::odd);

    py::class_<WronskiMatrix>(m, "WronskiMatrix")
        .def_readonly("w00", &WronskiMatrix::w00)
        .def_readonly("w01", &WronskiMatrix::w01)
        .def_readonly("w10", &WronskiMatrix::w10)
        .def_readonly("w11", &WronskiMatrix::w11)
        .def("trace", &WronskiMatrix::trace)
        .def("det", &WronskiMatrix::det);

    m.def(
        "wronskian",
        [](double epsilon, cplx sigma, double alpha, double t1, double t0) {
            return wronskian(epsilon, sigma, alpha, t1, t0);
        },
        py::arg("epsilon"), py::arg("sigma"), py::arg("alpha"), py::arg("t1"),
        py::arg("t0") = 0.0);
    m.def(
        "trace_tau",
        [](double epsilon, cplx sigma, Parity parity, double b) {
            return trace_tau(epsilon, sigma, parity, b);
        },
        py::arg("epsilon"), py::arg("sigma"), py::arg("parity"), py::arg("b"));
    m.def("trace_tau_limit", &trace_tau_limit, py::arg("epsilon"),
          py::arg("sigma"), py::arg("parity"), py::arg("b"));

    py::class_<CharacteristicSolution>(m, "CharacteristicSolution")
        .def_readonly("mu", &CharacteristicSolution::mu)
        .def_readonly("sigma", &CharacteristicSolution::sigma)
        .def_readonly("eta", &CharacteristicSolution::eta)
        .def_readonly("n", &CharacteristicSolution::n)
        .def_readonly("epsilon", &CharacteristicSolution::epsilon)
        .def_readonly("root_ambiguity", &CharacteristicSolution::root_ambiguity);

    m.def("solve_characteristic", &solve_characteristic, py::arg("params"),
          py::arg("n"), py::call_guard<py::gil_scoped_release>());

    m.def("tau_star", &tau_star, py::arg("b"), py::arg("parity"));
    m.def("eta_star",
          py::overload_cast<const DuffingParams&, int>(&eta_star),
          py::arg("params"), py::arg("n"));
    m.def("sigma_star", &sigma_star, py::arg("params"), py::arg("n"));

    py::enum_<Verdict>(m, "Verdict")
        .value("stable", Verdict::stable)
        .value("unstable", Verdict::unstable)
        .value("beyond_validity", Verdict::beyond_validity);

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_readonly("verdict", &StabilityVerdict::verdict)
        .def_readonly("condition_value", &StabilityVerdict::condition_value)
        .def_readonly("boundary", &StabilityVerdict::boundary)
        .def_readonly("predicted_exponent",
                      &StabilityVerdict::predicted_exponent)
        .def_readonly("asymptotic_regime", &StabilityVerdict::asymptotic_regime);

    m.def("classify", &classify, py::arg("params"), py::arg("n"));

    py::class_<TorusBoundary>(m, "TorusBoundary")
        .def_readonly("T", &TorusBoundary::T)
        .def_readonly("omega", &TorusBoundary::omega);
    m.def("torus_boundary", &torus_boundary, py::arg("b"), py::arg("parity"),
          py::arg("k") = 1);

    py::class_<PyragasCoefficients>(m, "PyragasCoefficients")
        .def_readonly("a", &PyragasCoefficients::a)
        .def_readonly("b", &PyragasCoefficients::b);
    m.def("pyragas_map", &pyragas_map, py::arg("alpha_physical"),
          py::arg("kappa"), py::arg("n"));

    py::class_<DelayReplica>(m, "DelayReplica")
        .def_readonly("T", &DelayReplica::T)
        .def_readonly("n", &DelayReplica::n);
    m.def("replicate_delays", &replicate_delays, py::arg("T"), py::arg("n"),
          py::arg("k"));

    // diagnostics
    py::class_<DeviationSample>(m, "DeviationSample")
        .def_readonly("t", &DeviationSample::t)
        .def_readonly("value", &DeviationSample::value);

    m.def("track_hamiltonian", &track_hamiltonian, py::arg("trajectory"),
          py::arg("orbit"), py::arg("sample_dt"));

    py::class_<SlopeFit>(m, "SlopeFit")
        .def_readonly("slope", &SlopeFit::slope)
        .def_readonly("intercept", &SlopeFit::intercept)
        .def_readonly("t_lo", &SlopeFit::t_lo)
        .def_readonly("t_hi", &SlopeFit::t_hi)
        .def_readonly("residual_rms", &SlopeFit::residual_rms)
        .def_readonly("n_points", &SlopeFit::n_points)
        .def_readonly("noise_floor", &SlopeFit::noise_floor);
    m.def("fit_exponent", &fit_exponent, py::arg("series"));

    py::class_<TorusReport>(m, "TorusReport")
        .def_readonly("sustained", &TorusReport::sustained)
        .def_readonly("oscillation_period", &TorusReport::oscillation_period)
        .def_readonly("relative_amplitude", &TorusReport::relative_amplitude)
        .def_readonly("transient_end", &TorusReport::transient_end);
    m.def("detect_torus", &detect_torus, py::arg("series"), py::arg("T"));

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NoRootError>(m, "NoRootError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                             PyExc_ArithmeticError);
}
