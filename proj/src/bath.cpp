// bath.cpp

#include "cgsme/bath.hpp"

#include <cmath>

#include "cgsme/expint.hpp"

namespace cgsme {

using Complex = std::complex<double>;

double spectral_density(const BathSpec& spec, double omega) {
    if (omega < 0.0) return 0.0;
    return spec.eta * omega * std::exp(-omega / spec.omega_c);
}

Complex corr_zero_t(const BathSpec& spec, double t) {
    const Complex a(1.0 / spec.omega_c, t);
    return spec.eta / (a * a);
}

Complex exact_kernel(const BathSpec& spec, double omega_j, double t) {
    const Complex phase(std::cos(omega_j * t), std::sin(omega_j * t));
    return spec.g * phase * corr_zero_t(spec, t);
}

double gamma_rwa(const BathSpec& spec, double omega) {
    if (omega <= 0.0) return 0.0; // no excitations to absorb at T = 0
    return 2.0 * M_PI * spec.g * spectral_density(spec, omega);
}

double lamb_rwa(const BathSpec& spec, double omega) {
    if (!(omega > 0.0)) throw DomainError("lamb_rwa: omega must be > 0");
    const double shift = -spec.eta * spec.omega_c +
                         spectral_density(spec, omega) *
                             expint_ei(Complex(omega / spec.omega_c, 0.0)).real();
    return spec.g * shift;
}

double dephasing_weight(const BathSpec& spec, double omega, double t) {
    if (omega < 0.0) return 0.0;
    if (omega == 0.0) {
        if (spec.zero_temperature()) return 0.0;
        return spec.eta * t * t / spec.beta;
    }
    // J(w)(1-cos wt)/w² = eta e^{-w/wc} · 2 sin²(wt/2) / w
    const double envelope = spec.eta * std::exp(-omega / spec.omega_c);
    const double s = std::sin(0.5 * omega * t);
    double coth = 1.0;
    if (!spec.zero_temperature()) {
        const double x = 0.5 * spec.beta * omega;
        // series below the kink scale keeps the w→0 limit smooth
        coth = (x < 1e-3) ? 1.0 / x + x / 3.0 - x * x * x / 45.0 : 1.0 / std::tanh(x);
    }
    return envelope * coth * 2.0 * s * s / omega;
}

} // namespace cgsme
