// bath.hpp — Ohmic spectral density, zero-temperature correlation function,
// and the one-sided Fourier-transform rates feeding the RWA generator.

#pragma once

#include <complex>
#include <limits>

#include "cgsme/errors.hpp"

namespace cgsme {

// Ohmic bath J(w) = eta·w·exp(-w/omega_c) with effective coupling g.
// All internal frequencies are in units of omega_c and times in 1/omega_c;
// omega_c is kept for I/O scaling. The single prefactor g multiplies every
// bath integral (exact kernel, gamma, S, b), so the exact model and both
// master equations share one coupling knob.
struct BathSpec {
    double eta = 1.0;     // time^2; default omega_c^-2
    double omega_c = 1.0; // cutoff frequency
    double g = 0.001;     // effective coupling
    double beta = std::numeric_limits<double>::infinity(); // inverse temperature

    bool zero_temperature() const { return std::isinf(beta); }

    void validate() const {
        if (!(eta > 0.0)) throw ConfigError("BathSpec: eta must be > 0");
        if (!(omega_c > 0.0)) throw ConfigError("BathSpec: omega_c must be > 0");
        if (!(g >= 0.0)) throw ConfigError("BathSpec: g must be >= 0");
        if (!(beta > 0.0)) throw ConfigError("BathSpec: beta must be > 0 or infinite");
    }
};

// J(w) for w >= 0, exactly 0 for w < 0.
double spectral_density(const BathSpec& spec, double omega);

// Zero-temperature correlation kernel B(t,0) = ∫_0^∞ J(w) e^{-iwt} dw,
// in closed form eta/(1/omega_c + it)^2. No special functions required.
std::complex<double> corr_zero_t(const BathSpec& spec, double t);

// Convolution kernel of the exact Volterra equations:
// f_j(t) = g · e^{i omega_j t} · B(t,0).
std::complex<double> exact_kernel(const BathSpec& spec, double omega_j, double t);

// T = 0 golden-rule rate 2π·g·J(w) for w > 0, zero otherwise.
double gamma_rwa(const BathSpec& spec, double omega);

// Energy shift from the imaginary part of the one-sided Fourier transform:
// g·[-eta·omega_c + J(w)·Ei(w/omega_c)]. The sign of the eta·omega_c term
// follows the principal-value integral, verified against quadrature.
double lamb_rwa(const BathSpec& spec, double omega);

// Integrand J(w)·coth(beta·w/2)·(1-cos wt)/w² of the dephasing rates, with
// the removable w→0 singularity handled analytically.
double dephasing_weight(const BathSpec& spec, double omega, double t);

} // namespace cgsme
