// dephasing.hpp — analytic two-level pure-dephasing benchmark where the
// coarse-grained and RWA generators can be compared against the exact
// decoherence function in closed form.

#pragma once

#include <Eigen/Dense>

#include "cgsme/bath.hpp"

namespace cgsme {

struct TwoLevelSpec {
    double omega0 = 1.0; // level splitting
    BathSpec bath;       // finite beta allowed here

    void validate() const { bath.validate(); }
};

// Exact decoherence exponent
//   Gamma_exact(t) = -4 g ∫ J(w) coth(beta w/2) (1 - cos wt)/w² dw,
// nonpositive, via adaptive quadrature split at the coth kink.
double gamma_exact_2l(const TwoLevelSpec& spec, double t);

// Markovian coarse-grained exponent, linear in t:
// Gamma_CG(t, dt) = (t/dt)·Gamma_exact(dt).
double gamma_cg_2l(const TwoLevelSpec& spec, double t, double dt);

// RWA dephasing rate r with Gamma_RWA(t) = -r t; equals 4π g eta/beta for
// the Ohmic bath, and exactly 0 at T = 0.
double gamma_rwa_2l(const TwoLevelSpec& spec);

enum class DephasingMethod { exact, cg, rwa };

// Populations constant, rho01(t) = e^{-i w0 t} e^{Gamma(t)} rho01(0)
// (Schroedinger picture). `dt` is only consulted for the cg method.
Eigen::Matrix2cd evolve_dephasing(const TwoLevelSpec& spec, const Eigen::Matrix2cd& rho0,
                                  double t, DephasingMethod method, double dt = 0.0);

// Second quadrature family (adaptive Simpson) for oracle cross-checks.
double gamma_exact_2l_simpson(const TwoLevelSpec& spec, double t);

} // namespace cgsme
