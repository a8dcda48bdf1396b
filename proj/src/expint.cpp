// expint.cpp — Ei via power series / continued fraction / asymptotic expansion.
//
// Region map (z off the cut, Im z ≥ 0; conjugate symmetry handles Im z < 0):
//   series:     |z| ≤ 6, or Re z ≥ 0 with |z| - Re z ≤ 10 and |z| ≤ 44
//               (no destructive cancellation near the positive real axis)
//   asymptotic: |z| ≥ 34 elsewhere (optimally truncated divergent series)
//   fraction:   remaining annulus, via E1(-z) whose argument stays away
//               from the E1 cut exactly where the series cancels
// Switch radii chosen so neighbouring methods overlap at ≤1e-13 relative.

#include "cgsme/expint.hpp"

#include <cmath>
#include <limits>

#include "cgsme/errors.hpp"

namespace cgsme {

namespace {

using Complex = std::complex<double>;

constexpr double kEulerGamma = 0.5772156649015328606065120900824024;
constexpr double kOverflowRe = 705.0;

// Ei(z) = γ + ln z + Σ_{k≥1} z^k / (k·k!)
Complex ei_series(Complex z) {
    Complex term(1.0, 0.0);
    Complex sum(0.0, 0.0);
    for (int k = 1; k < 600; ++k) {
        term *= z / static_cast<double>(k);
        const Complex add = term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return kEulerGamma + std::log(z) + sum;
}

// Optimally truncated Ei(z) ~ e^z/z · Σ k!/z^k  (+ iπ sgn Im z off the axis).
Complex ei_asymptotic(Complex z) {
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 120; ++k) {
        term *= static_cast<double>(k) / z;
        const double mag = std::abs(term);
        if (mag > prev) break; // divergence onset
        sum += term;
        if (mag < 1e-18) break;
        prev = mag;
    }
    Complex value = std::exp(z) / z * sum;
    if (z.imag() > 0.0)
        value += Complex(0.0, M_PI);
    else if (z.imag() < 0.0)
        value -= Complex(0.0, M_PI);
    return value;
}

// E1(w) by the standard continued fraction (modified Lentz); valid off the
// negative real w axis, fastest for Re w > 0.
Complex e1_fraction(Complex w) {
    const double tiny = 1e-290;
    Complex f(w.real() + 1.0, w.imag());
    if (std::abs(f) < tiny) f = tiny;
    Complex C = f;
    Complex D(0.0, 0.0);
    for (int k = 1; k < 2000; ++k) {
        const double a = -static_cast<double>(k) * k;
        const Complex b = w + static_cast<double>(2 * k + 1);
        D = b + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = b + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const Complex delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return std::exp(-w) / f;
    }
    throw ConvergenceError("expint_ei: continued fraction failed to converge");
}

double ei_real_positive(double x) {
    if (x <= 40.0) return ei_series(Complex(x, 0.0)).real();
    double sum = 1.0, term = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 120; ++k) {
        term *= k / x;
        if (std::abs(term) > prev) break;
        sum += term;
        if (std::abs(term) < 1e-18) break;
        prev = std::abs(term);
    }
    return std::exp(x) / x * sum;
}

// Ei(x) for x < 0 equals -E1(-x); real-valued principal value.
double ei_real_negative(double x) {
    const double y = -x;
    if (y <= 1.0) {
        // E1 series: -γ - ln y + Σ (-1)^{k+1} y^k/(k·k!)
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            term *= -y / k;
            sum += -term / k;
            if (std::abs(term) < 1e-18) break;
        }
        return -(-kEulerGamma - std::log(y) + sum);
    }
    return -e1_fraction(Complex(y, 0.0)).real();
}

Complex ei_upper_half(Complex z) {
    const double r = std::abs(z);
    const bool series_ok =
        r <= 6.0 || (z.real() >= 0.0 && r - z.real() <= 10.0 && r <= 44.0);
    if (series_ok) return ei_series(z);
    if (r >= 34.0) return ei_asymptotic(z);
    // Ei(z) = -E1(-z) + iπ for Im z > 0
    return -e1_fraction(-z) + Complex(0.0, M_PI);
}

} // namespace

Complex expint_ei(Complex z) {
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
        throw DomainError("expint_ei: non-finite argument");
    if (z.real() == 0.0 && z.imag() == 0.0)
        throw DomainError("expint_ei: z = 0 is a branch point");
    if (z.real() > kOverflowRe)
        throw OverflowError("expint_ei: e^z/z exceeds double range for Re z > 705");

    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x > 0.0) return Complex(ei_real_positive(x), 0.0);
        return Complex(ei_real_negative(x), M_PI); // cut value, limit from above
    }
    if (z.imag() < 0.0) return std::conj(ei_upper_half(std::conj(z)));
    return ei_upper_half(z);
}

} // namespace cgsme
