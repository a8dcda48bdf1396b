// oracles.hpp — test-side reference evaluations: contour quadrature for the
// exponential integral, a one-sided Fourier transform of the bath kernel,
// and a deterministic RNG shared by the property tests.

#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "cgsme/bath.hpp"
#include "cgsme/quad.hpp"

namespace cgsme::testing {

using Complex = std::complex<double>;

// Straight-line integral of e^{-z}/z between two complex points.
inline Complex segment_integral(Complex from, Complex to, double tol = 1e-13) {
    quad::Options opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    const Complex dir = to - from;
    return quad::integrate(
        [&](double s) {
            const Complex zeta = from + s * dir;
            return std::exp(-zeta) / zeta * dir;
        },
        0.0, 1.0, opt);
}

// Ei(z) = -∫_{-z}^{∞} e^{-ζ}/ζ dζ evaluated directly: principal value on the
// real line, otherwise a pole-avoiding polyline to the real axis plus the
// (negligible) truncated tail. Independent of the library implementation.
inline Complex ei_quadrature_oracle(Complex z) {
    const double R = std::max(48.0, z.real() + 45.0);
    if (z.imag() == 0.0 && z.real() > 0.0) {
        // PV across the pole with a symmetric window and a series remainder
        const double x = z.real();
        const double d = 0.5 * std::min(1.0, x);
        quad::Options opt;
        opt.abs_tol = 1e-14;
        opt.rel_tol = 1e-13;
        auto f = [](double u) { return Complex(std::exp(-u) / u, 0.0); };
        Complex acc = quad::integrate(f, -x, -d, opt) + quad::integrate(f, d, R, opt);
        // ∫_{-d}^{d} (e^{-u} - 1)/u du
        acc += quad::integrate(
            [](double u) { return Complex(u == 0.0 ? -1.0 : std::expm1(-u) / u, 0.0); }, -d, d,
            opt);
        return -acc;
    }
    const Complex start = -z;
    const double lift = std::copysign(std::max(1.0, std::abs(start.imag())), start.imag());
    const Complex corner1(start.real(), lift);
    const Complex corner2(R, lift);
    const Complex end(R, 0.0);
    // The polyline equals -E1(-z); the principal branch is the analytic
    // continuation through the positive real axis, which adds the
    // half-residue picked up when the PV ray rotates off the axis.
    return -(segment_integral(start, corner1) + segment_integral(corner1, corner2) +
             segment_integral(corner2, end)) +
           Complex(0.0, z.imag() > 0.0 ? M_PI : -M_PI);
}

// One-sided Fourier transform ∫_0^∞ B(t,0) e^{iωt} dt with a two-term
// integration-by-parts tail correction.
inline Complex gamma_plus_oracle(const BathSpec& bath, double omega, double T = 4000.0) {
    quad::Options opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-11;
    const Complex head = quad::integrate(
        [&](double t) {
            return corr_zero_t(bath, t) * std::exp(Complex(0.0, omega * t));
        },
        0.0, T, opt);
    // tail: -B(T)e^{iωT}/(iω) - B'(T)e^{iωT}/(iω)² + O(B''/ω³)
    const Complex iw(0.0, omega);
    const Complex a(1.0 / bath.omega_c, T);
    const Complex b_t = bath.eta / (a * a);
    const Complex b_dt = Complex(0.0, -2.0) * bath.eta / (a * a * a);
    const Complex phase = std::exp(Complex(0.0, omega * T));
    return head - b_t * phase / iw - b_dt * phase / (iw * iw);
}

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed5u);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng());
}

} // namespace cgsme::testing
