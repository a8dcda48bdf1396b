// lindblad.hpp — CG and RWA semigroup generators for the V system, built on
// the column-stacking identity vec(ABC) = (C^T ⊗ A) vec(B), and trajectory
// propagation through the matrix exponential.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cgsme/bath.hpp"
#include "cgsme/model.hpp"
#include "cgsme/rates.hpp"

namespace cgsme {

using Matrix9 = Eigen::Matrix<std::complex<double>, 9, 9>;
using Vector9 = Eigen::Matrix<std::complex<double>, 9, 1>;

// 9x9 generator acting on vec(rho) with column stacking, basis order
// (|0>, |1>, |2>).
//
// `matrix` holds the dissipator plus Lamb shift with constant coefficients,
// the form in which the rates are derived. With cross-frequency terms that
// equation is autonomous only in the frame that includes H_S, so the level
// energies ride along: propagation exponentiates matrix - i[H_S, ·] and
// rotates each output state back to the interaction picture.
struct Superoperator {
    Matrix9 matrix = Matrix9::Zero();
    std::array<double, 3> energies{0.0, 0.0, 0.0}; // (0, omega1, omega2)
    Picture picture = Picture::interaction;

    // matrix - i[H_S, ·]; the operator actually exponentiated
    Matrix9 full_matrix() const;
};

Vector9 vec(const DensityMatrix3& rho);
DensityMatrix3 unvec(const Vector9& v);

// Interaction-picture generator with the full 2x2 rate and Lamb-shift
// tensors; the free parameter dt is the coarse-graining timescale.
Superoperator build_cg_generator(const VSystemSpec& sys, const BathSpec& bath, double dt,
                                 RateConvention convention = RateConvention::analytic);
Superoperator build_cg_generator(const RateTensor& rates);

// Interaction-picture generator with decoupled channels a_1, a_2 and
// diagonal rates gamma(w_j), shifts S(w_j).
Superoperator build_rwa_generator(const VSystemSpec& sys, const BathSpec& bath);

// Interaction-picture trajectory from the frame-complete exponential:
// rho_s(t) = exp(full t) rho(0) followed by the inverse H_S rotation.
// Eigendecomposition route with a scaling-and-squaring fallback when the
// eigenvector basis is ill-conditioned.
Trajectory propagate(const Superoperator& L, const DensityMatrix3& rho0,
                     const std::vector<double>& times);

// Conjugation by exp(-i H_S t): populations unchanged, coherence jk gains
// phase e^{-i(e_j - e_k) t} with the ground-state energy fixed at 0.
Trajectory to_schroedinger(const Trajectory& traj, const VSystemSpec& sys);

// Diagnostics for the generator invariants.
double trace_row_residual(const Superoperator& L);       // |vec(I)† L|
std::vector<std::complex<double>> superop_spectrum(const Superoperator& L);

// Scaling-and-squaring Padé-13 exponential; exposed for cross-checks.
Matrix9 matrix_exponential(const Matrix9& A);

} // namespace cgsme
