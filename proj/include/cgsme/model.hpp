// model.hpp — shared domain types: system specs, states, trajectories

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cgsme/errors.hpp"

namespace cgsme {

using Complex = std::complex<double>;
using DensityMatrix3 = Eigen::Matrix3cd;

enum class Picture { interaction, schroedinger };

// V-type three-level system: ground state at energy 0, excited levels at
// omega1 and omega2, both radiatively coupled to the ground state only.
struct VSystemSpec {
    double omega1 = 0.095;
    double omega2 = 0.105;

    double mean() const { return 0.5 * (omega1 + omega2); }
    double splitting() const { return omega2 - omega1; }

    void validate() const {
        if (!(omega1 > 0.0)) throw ConfigError("VSystemSpec: omega1 must be > 0");
        if (!(omega2 > 0.0)) throw ConfigError("VSystemSpec: omega2 must be > 0");
    }
};

// Single-excitation-sector amplitudes (c0, c1, c2); the remainder of the
// norm lives in the bath modes and never needs to be materialized.
struct AmplitudeState {
    Complex c0{0.0, 0.0};
    Complex c1{1.0, 0.0};
    Complex c2{0.0, 0.0};

    double excited_norm2() const { return std::norm(c1) + std::norm(c2); }
    double total_norm2() const { return std::norm(c0) + excited_norm2(); }
};

// Reduced density matrix of the exact single-excitation wavefunction.
// Trace is exactly 1 by construction; the bath population sits in rho00.
DensityMatrix3 amplitudes_to_density(const AmplitudeState& c);

// Time grid plus states, the unit of comparison for trace-norm distances.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix3> states;
    Picture picture = Picture::interaction;

    std::size_t size() const { return times.size(); }
};

// Hermiticity / trace / positivity diagnostics used by invariants and tests.
double trace_deviation(const DensityMatrix3& rho);    // |tr rho - 1|
double min_eigenvalue(const DensityMatrix3& rho);     // smallest eigenvalue of (rho+rho†)/2
double hermiticity_deviation(const DensityMatrix3& rho);

} // namespace cgsme
