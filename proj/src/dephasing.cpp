// dephasing.cpp

#include "cgsme/dephasing.hpp"

#include <cmath>

#include "cgsme/quad.hpp"

namespace cgsme {

namespace {

using Complex = std::complex<double>;

// ∫_0^∞ dephasing_weight dw with interval splits at the coth kink (1/beta)
// and the cutoff; the budget grows with t to resolve the 1 - cos(wt)
// oscillation.
template <class Integrate>
double weight_integral(const TwoLevelSpec& spec, double t, Integrate&& integrate) {
    const BathSpec& bath = spec.bath;
    auto f = [&](double w) { return dephasing_weight(bath, w, t); };
    const double upper = 60.0 * bath.omega_c;
    double split = bath.omega_c;
    if (!bath.zero_temperature()) split = std::min(split, 1.0 / bath.beta);
    return integrate(f, 0.0, split) + integrate(f, split, upper);
}

} // namespace

double gamma_exact_2l(const TwoLevelSpec& spec, double t) {
    spec.validate();
    if (!(t >= 0.0)) throw DomainError("gamma_exact_2l: t must be >= 0");
    if (t == 0.0) return 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-10; // absolute target; integrand is eta-scaled
    opt.rel_tol = 1e-9;
    opt.max_intervals = 400000 + static_cast<long>(60.0 * t * spec.bath.omega_c);
    auto gauss = [&](auto&& f, double a, double b) { return quad::integrate_real(f, a, b, opt); };
    return -4.0 * spec.bath.g * weight_integral(spec, t, gauss);
}

double gamma_exact_2l_simpson(const TwoLevelSpec& spec, double t) {
    spec.validate();
    if (t == 0.0) return 0.0;
    auto simpson = [&](auto&& f, double a, double b) {
        return quad::integrate_simpson([&](double w) { return Complex(f(w), 0.0); }, a, b,
                                       1e-12, 60)
            .real();
    };
    return -4.0 * spec.bath.g * weight_integral(spec, t, simpson);
}

double gamma_cg_2l(const TwoLevelSpec& spec, double t, double dt) {
    if (!(dt > 0.0)) throw DomainError("gamma_cg_2l: dt must be > 0");
    if (!(t >= 0.0)) throw DomainError("gamma_cg_2l: t must be >= 0");
    return (t / dt) * gamma_exact_2l(spec, dt);
}

double gamma_rwa_2l(const TwoLevelSpec& spec) {
    spec.validate();
    if (spec.bath.zero_temperature()) return 0.0; // lim J(w)/(1-e^{-bw}) -> 0
    return 4.0 * M_PI * spec.bath.g * spec.bath.eta / spec.bath.beta;
}

Eigen::Matrix2cd evolve_dephasing(const TwoLevelSpec& spec, const Eigen::Matrix2cd& rho0,
                                  double t, DephasingMethod method, double dt) {
    if (!(t >= 0.0)) throw DomainError("evolve_dephasing: t must be >= 0");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-9 ||
        std::abs(rho0.trace() - Complex(1.0, 0.0)) > 1e-9)
        throw DomainError("evolve_dephasing: rho0 is not a density matrix");

    double exponent = 0.0;
    switch (method) {
    case DephasingMethod::exact: exponent = gamma_exact_2l(spec, t); break;
    case DephasingMethod::cg: exponent = gamma_cg_2l(spec, t, dt); break;
    case DephasingMethod::rwa: exponent = -gamma_rwa_2l(spec) * t; break;
    }

    Eigen::Matrix2cd rho = rho0;
    const Complex factor = std::exp(Complex(exponent, -spec.omega0 * t));
    rho(0, 1) = factor * rho0(0, 1);
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

} // namespace cgsme
