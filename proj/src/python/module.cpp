// module.cpp — Python bindings for the main operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cgsme/analysis.hpp"
#include "cgsme/config.hpp"
#include "cgsme/dephasing.hpp"
#include "cgsme/expint.hpp"

namespace py = pybind11;
using namespace cgsme;

namespace {

ConvolutionScheme scheme_from(const std::string& s) {
    if (s == "trapezoid") return ConvolutionScheme::trapezoid;
    if (s == "riemann") return ConvolutionScheme::riemann;
    throw DomainError("scheme must be 'trapezoid' or 'riemann'");
}

RateConvention convention_from(const std::string& s) {
    if (s == "analytic") return RateConvention::analytic;
    if (s == "benchmark") return RateConvention::benchmark;
    throw DomainError("rates convention must be 'analytic' or 'benchmark'");
}

py::tuple trajectory_to_arrays(const Trajectory& traj) {
    py::array_t<double> times(static_cast<py::ssize_t>(traj.size()));
    auto* tptr = times.mutable_data();
    py::array_t<std::complex<double>> states(
        {static_cast<py::ssize_t>(traj.size()), py::ssize_t(3), py::ssize_t(3)});
    auto s = states.mutable_unchecked<3>();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        tptr[i] = traj.times[i];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) s(static_cast<py::ssize_t>(i), r, c) = traj.states[i](r, c);
    }
    return py::make_tuple(times, states);
}

Trajectory trajectory_from_arrays(const py::array_t<double>& times,
                                  const py::array_t<std::complex<double>>& states,
                                  const std::string& picture) {
    Trajectory traj;
    traj.picture = picture == "schroedinger" ? Picture::schroedinger : Picture::interaction;
    const auto t = times.unchecked<1>();
    const auto s = states.unchecked<3>();
    traj.times.resize(static_cast<std::size_t>(t.shape(0)));
    traj.states.resize(traj.times.size());
    for (py::ssize_t i = 0; i < t.shape(0); ++i) {
        traj.times[static_cast<std::size_t>(i)] = t(i);
        DensityMatrix3 rho;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) rho(r, c) = s(i, r, c);
        traj.states[static_cast<std::size_t>(i)] = rho;
    }
    return traj;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coarse-grained vs rotating-wave Markovian master equations for a "
              "V-type three-level system";

    py::register_exception<Error>(m, "Error");

    py::class_<BathSpec>(m, "BathSpec")
        .def(py::init([](double eta, double omega_c, double g, double beta) {
                 BathSpec b{eta, omega_c, g, beta};
                 b.validate();
                 return b;
             }),
             py::arg("eta") = 1.0, py::arg("omega_c") = 1.0, py::arg("g") = 0.001,
             py::arg("beta") = std::numeric_limits<double>::infinity())
        .def_readwrite("eta", &BathSpec::eta)
        .def_readwrite("omega_c", &BathSpec::omega_c)
        .def_readwrite("g", &BathSpec::g)
        .def_readwrite("beta", &BathSpec::beta);

    py::class_<VSystemSpec>(m, "VSystemSpec")
        .def(py::init([](double w1, double w2) {
                 VSystemSpec s{w1, w2};
                 s.validate();
                 return s;
             }),
             py::arg("omega1") = 0.095, py::arg("omega2") = 0.105)
        .def_readwrite("omega1", &VSystemSpec::omega1)
        .def_readwrite("omega2", &VSystemSpec::omega2);

    py::class_<RateTensor>(m, "RateTensor")
        .def_property_readonly("gamma", [](const RateTensor& r) { return r.gamma; })
        .def_property_readonly("lamb", [](const RateTensor& r) { return r.lamb; })
        .def_readonly("dt", &RateTensor::dt)
        .def("min_gamma_eigenvalue", &RateTensor::min_gamma_eigenvalue);

    m.def("expint_ei", &expint_ei, py::arg("z"), "Exponential integral Ei on the principal branch");
    m.def("spectral_density", &spectral_density, py::arg("bath"), py::arg("omega"));
    m.def("corr_zero_t", &corr_zero_t, py::arg("bath"), py::arg("t"));
    m.def("exact_kernel", &exact_kernel, py::arg("bath"), py::arg("omega_j"), py::arg("t"));
    m.def("gamma_rwa", &gamma_rwa, py::arg("bath"), py::arg("omega"));
    m.def("lamb_rwa", &lamb_rwa, py::arg("bath"), py::arg("omega"));
    m.def("dephasing_weight", &dephasing_weight, py::arg("bath"), py::arg("omega"), py::arg("t"));

    m.def("rate_i1", &rate_i1, py::arg("bath"), py::arg("omega"));
    m.def("rate_i2", &rate_i2, py::arg("bath"), py::arg("omega"), py::arg("t"));
    m.def("b_diag", &b_diag, py::arg("bath"), py::arg("omega"), py::arg("t"));
    m.def("b_offdiag", &b_offdiag, py::arg("bath"), py::arg("omega"), py::arg("omega_p"),
          py::arg("t"));
    m.def("s_diag", &s_diag, py::arg("bath"), py::arg("omega"), py::arg("t"));
    m.def("s_offdiag", &s_offdiag, py::arg("bath"), py::arg("omega"), py::arg("omega_p"),
          py::arg("t"));
    m.def("b_quadrature_oracle", &b_quadrature_oracle, py::arg("bath"), py::arg("omega"),
          py::arg("omega_p"), py::arg("t"), py::arg("rel_tol") = 1e-10);
    m.def(
        "rate_tensor",
        [](const BathSpec& bath, const VSystemSpec& sys, double dt, const std::string& rates) {
            return rate_tensor(bath, sys, dt, convention_from(rates));
        },
        py::arg("bath"), py::arg("sys"), py::arg("dt"), py::arg("rates") = "analytic");

    m.def(
        "build_cg_generator",
        [](const VSystemSpec& sys, const BathSpec& bath, double dt, const std::string& rates) {
            return Eigen::MatrixXcd(build_cg_generator(sys, bath, dt, convention_from(rates))
                                        .full_matrix());
        },
        py::arg("sys"), py::arg("bath"), py::arg("dt"), py::arg("rates") = "analytic",
        "Frame-complete 9x9 generator (includes -i[H_S, .])");
    m.def(
        "build_rwa_generator",
        [](const VSystemSpec& sys, const BathSpec& bath) {
            return Eigen::MatrixXcd(build_rwa_generator(sys, bath).full_matrix());
        },
        py::arg("sys"), py::arg("bath"),
        "Frame-complete 9x9 generator (includes -i[H_S, .])");

    m.def(
        "propagate",
        [](const Eigen::MatrixXcd& gen, const DensityMatrix3& rho0,
           const std::vector<double>& times) {
            if (gen.rows() != 9 || gen.cols() != 9)
                throw DomainError("propagate: generator must be 9x9");
            Superoperator L;
            L.matrix = gen; // zero energies: plain exp(L t) evolution
            return trajectory_to_arrays(propagate(L, rho0, times));
        },
        py::arg("generator"), py::arg("rho0"), py::arg("times"),
        "Plain exp(generator·t) evolution; returns (times, states[n,3,3])");

    m.def(
        "cg_trajectory",
        [](const VSystemSpec& sys, const BathSpec& bath, double dt,
           const DensityMatrix3& rho0, const std::vector<double>& times,
           const std::string& rates) {
            const auto gen = build_cg_generator(sys, bath, dt, convention_from(rates));
            return trajectory_to_arrays(propagate(gen, rho0, times));
        },
        py::arg("sys"), py::arg("bath"), py::arg("dt"), py::arg("rho0"), py::arg("times"),
        py::arg("rates") = "analytic",
        "Interaction-picture CG trajectory, comparable with solve_exact output");

    m.def(
        "rwa_trajectory",
        [](const VSystemSpec& sys, const BathSpec& bath, const DensityMatrix3& rho0,
           const std::vector<double>& times) {
            return trajectory_to_arrays(propagate(build_rwa_generator(sys, bath), rho0, times));
        },
        py::arg("sys"), py::arg("bath"), py::arg("rho0"), py::arg("times"),
        "Interaction-picture RWA trajectory, comparable with solve_exact output");

    m.def(
        "solve_exact",
        [](const VSystemSpec& sys, const BathSpec& bath, std::complex<double> c0,
           std::complex<double> c1, std::complex<double> c2, double t_max, double step,
           const std::string& scheme, int subsample) {
            SolverSettings settings{step, scheme_from(scheme), subsample};
            return trajectory_to_arrays(
                solve_exact(sys, bath, AmplitudeState{c0, c1, c2}, t_max, settings));
        },
        py::arg("sys"), py::arg("bath"), py::arg("c0"), py::arg("c1"), py::arg("c2"),
        py::arg("t_max"), py::arg("step") = 0.05, py::arg("scheme") = "trapezoid",
        py::arg("subsample") = 100, "Returns (times, states[n,3,3])");

    m.def("trace_distance", &trace_distance, py::arg("a"), py::arg("b"));
    m.def(
        "integrated_distance",
        [](const py::array_t<double>& times, const py::array_t<std::complex<double>>& a,
           const py::array_t<std::complex<double>>& b) {
            return integrated_distance(trajectory_from_arrays(times, a, "interaction"),
                                       trajectory_from_arrays(times, b, "interaction"));
        },
        py::arg("times"), py::arg("states_a"), py::arg("states_b"));

    m.def(
        "optimize_dt",
        [](const VSystemSpec& sys, const BathSpec& bath, double t_max,
           const DensityMatrix3& rho0, double lo, double hi, int n_grid, double step,
           const std::string& scheme, int subsample, const std::string& cache_dir,
           const std::string& rates) {
            SolverSettings settings{step, scheme_from(scheme), subsample};
            const auto res = optimize_dt(sys, bath, t_max, rho0, SearchWindow{lo, hi, n_grid},
                                         settings,
                                         cache_dir.empty() ? default_cache_dir() : cache_dir,
                                         convention_from(rates));
            py::dict d;
            d["dt_opt"] = res.dt_opt;
            d["objective"] = res.objective;
            d["bracket"] = py::make_tuple(res.bracket_lo, res.bracket_hi);
            d["evaluations"] = res.evaluations;
            return d;
        },
        py::arg("sys"), py::arg("bath"), py::arg("t_max"), py::arg("rho0"), py::arg("lo"),
        py::arg("hi"), py::arg("n_grid") = 40, py::arg("step") = 0.05,
        py::arg("scheme") = "trapezoid", py::arg("subsample") = 100, py::arg("cache_dir") = "",
        py::arg("rates") = "analytic");

    py::class_<TwoLevelSpec>(m, "TwoLevelSpec")
        .def(py::init([](double omega0, const BathSpec& bath) {
                 return TwoLevelSpec{omega0, bath};
             }),
             py::arg("omega0"), py::arg("bath"))
        .def_readwrite("omega0", &TwoLevelSpec::omega0)
        .def_readwrite("bath", &TwoLevelSpec::bath);

    m.def("gamma_exact_2l", &gamma_exact_2l, py::arg("spec"), py::arg("t"));
    m.def("gamma_cg_2l", &gamma_cg_2l, py::arg("spec"), py::arg("t"), py::arg("dt"));
    m.def("gamma_rwa_2l", &gamma_rwa_2l, py::arg("spec"));

    m.attr("__version__") = "0.1.0";
}
