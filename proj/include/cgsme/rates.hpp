// rates.hpp — coarse-graining rate tensor b_ww'(t) and Lamb-shift tensor
// S_ww'(t) for the zero-temperature Ohmic bath, in closed form via the
// exponential integral, plus direct quadrature oracles.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cgsme/bath.hpp"
#include "cgsme/model.hpp"

namespace cgsme {

// 2x2 dissipator matrix gamma_jk = g·b(w_j, w_k, dt)/dt and Hermitian
// Lamb-shift matrix S_jk = g·S(w_j, w_k, dt)/dt for the two transition
// frequencies of the V system.
struct RateTensor {
    Eigen::Matrix2cd gamma;
    Eigen::Matrix2cd lamb;
    double dt = 0.0;
    std::array<double, 2> frequencies{0.0, 0.0};

    // Smallest eigenvalue of the Hermitian gamma matrix (>= -1e-12·trace
    // for any valid tensor).
    double min_gamma_eigenvalue() const;
};

// Principal-value integrals I1(w) = PV ∫ J(v)/(w-v) dv and
// I2(w,t) = PV ∫ J(v) e^{ivt}/(w-v) dv, eta-scaled (g applied at assembly).
double rate_i1(const BathSpec& spec, double omega);
std::complex<double> rate_i2(const BathSpec& spec, double omega, double t);

// Off-diagonal closed form; throws DegenerateFrequencies when
// |w - w'| <= 1e-6·max(w, w') (callers route to the Taylor fallback).
std::complex<double> b_offdiag(const BathSpec& spec, double omega, double omega_p, double t);
std::complex<double> s_offdiag(const BathSpec& spec, double omega, double omega_p, double t);

// Diagonal closed forms; b_diag equals 2∫_{-w}^∞ J(v+w)(1-cos vt)/v² dv,
// s_diag equals t·I1(w) + I3(w,t).
double b_diag(const BathSpec& spec, double omega, double t);
double s_diag(const BathSpec& spec, double omega, double t);

// Dispatching entries with a first-order Taylor expansion in (w'-w) below
// the degeneracy threshold; used by rate_tensor.
std::complex<double> b_entry(const BathSpec& spec, double omega, double omega_p, double t);
std::complex<double> s_entry(const BathSpec& spec, double omega, double omega_p, double t);

// Diagonal-rate convention. `analytic` evaluates the quadrature-exact
// closed form of b_ww. `benchmark` adds the oscillatory term
// 8·eta·sin²(w·dt/2), the variant consistent with the published benchmark
// table of optimal coarse-graining times; the two agree as dt -> infinity
// and wherever w·dt is a multiple of 2π.
enum class RateConvention { analytic, benchmark };

// Assemble gamma and S for the two system frequencies at coarse-graining
// time dt. gamma is Hermitian PSD, S Hermitian.
RateTensor rate_tensor(const BathSpec& spec, const VSystemSpec& sys, double dt,
                       RateConvention convention = RateConvention::analytic);

// --------------------------- quadrature oracles -----------------------------
// Direct numeric evaluation of the defining double integrals, reduced to one
// dimension through the homogeneity of the correlation kernel. Used to pin
// the closed forms; rel_tol is the quadrature target.

std::complex<double> b_quadrature_oracle(const BathSpec& spec, double omega, double omega_p,
                                         double t, double rel_tol = 1e-10);
std::complex<double> s_quadrature_oracle(const BathSpec& spec, double omega, double omega_p,
                                         double t, double rel_tol = 1e-10);

// One-sided integral B_ww' (upper limit s' <= s); satisfies
// B_ww' + conj(B_w'w) = b_ww'.
std::complex<double> b_oneside_oracle(const BathSpec& spec, double omega, double omega_p,
                                      double t, double rel_tol = 1e-10);

// Brute-force 2-D tensor-panel evaluation retained for cross-validation of
// the reduced oracle.
std::complex<double> b_quadrature_oracle_2d(const BathSpec& spec, double omega, double omega_p,
                                            double t);

// PV quadrature versions of I1/I2.
double i1_pv_oracle(const BathSpec& spec, double omega, double rel_tol = 1e-11);
std::complex<double> i2_pv_oracle(const BathSpec& spec, double omega, double t,
                                  double rel_tol = 1e-11);

// gamma/S scan over coarse-graining times (rate-function plots).
struct RateScanPoint {
    double dt;
    Eigen::Matrix2cd gamma;
    Eigen::Matrix2cd lamb;
};
std::vector<RateScanPoint> rate_scan(const BathSpec& spec, const VSystemSpec& sys,
                                     const std::vector<double>& dts,
                                     RateConvention convention = RateConvention::analytic);

} // namespace cgsme
