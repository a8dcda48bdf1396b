// exact3.hpp — exact zero-temperature dynamics of the V system from the
// convolution Volterra equations for the single-excitation amplitudes.

#pragma once

#include <vector>

#include "cgsme/bath.hpp"
#include "cgsme/model.hpp"

namespace cgsme {

// Quadrature rule for the memory integral. `riemann` reproduces the
// left-Riemann sum at the step width (first order); `trapezoid` is the
// second-order default.
enum class ConvolutionScheme { riemann, trapezoid };

struct SolverSettings {
    double step = 0.05;                                    // RK4 step, units 1/omega_c
    ConvolutionScheme scheme = ConvolutionScheme::trapezoid;
    int subsample = 100;                                   // store every k-th state
};

// Integrates
//   c1' = -f1*c1 - e^{i(w1-w2)t} f2*c2,   c2' = -f2*c2 - e^{i(w2-w1)t} f1*c1
// with kernels f_j(t) = g e^{i w_j t} B(t,0) by fixed-step RK4; the memory
// integral keeps the full history (O(N²) work). Emits interaction-picture
// density matrices on the subsampled grid.
//
// Throws StepSizeError when step > 0.1/max(w1, w2, omega_c) and
// NonUnitaryError if the amplitude norm leaves the physical sector.
Trajectory solve_exact(const VSystemSpec& sys, const BathSpec& bath,
                       const AmplitudeState& psi0, double t_max,
                       const SolverSettings& settings = {},
                       std::vector<AmplitudeState>* amplitudes_out = nullptr);

} // namespace cgsme
