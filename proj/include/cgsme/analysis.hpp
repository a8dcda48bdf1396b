// analysis.hpp — trace-norm distances, the integrated objective, and the
// coarse-graining-timescale optimizer against the exact reference dynamics.

#pragma once

#include <string>
#include <vector>

#include "cgsme/exact3.hpp"
#include "cgsme/lindblad.hpp"
#include "cgsme/model.hpp"

namespace cgsme {

// ½‖a - b‖₁ from the eigenvalues of the Hermitian difference; in [0, 1].
double trace_distance(const DensityMatrix3& a, const DensityMatrix3& b);

// Trapezoidal time average of trace_distance over a shared grid:
// (1/2 t_max) ∫ ‖a(t) - b(t)‖₁ dt. Throws GridMismatch on differing grids
// or pictures.
double integrated_distance(const Trajectory& a, const Trajectory& b);

struct SearchWindow {
    double lo = 1.0;
    double hi = 500.0;
    int n_grid = 40; // log-spaced coarse scan before golden-section refinement
};

struct OptimizerResult {
    double dt_opt = 0.0;
    double objective = 0.0;       // integrated distance at dt_opt
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int evaluations = 0;          // objective evaluations (scan + refinement)
};

// Default horizon: n relaxation times of the mean transition frequency.
double relaxation_horizon(const VSystemSpec& sys, const BathSpec& bath, double n_times = 3.0);

// Default search window [1/omega_c, 0.5/g].
SearchWindow default_search_window(const BathSpec& bath);

// Directory used to cache exact reference trajectories between runs;
// honours the CGSME_CACHE_DIR environment variable.
std::string default_cache_dir();

// Exact reference with in-memory and on-disk caching keyed by the full
// parameter set. rho0 must be (numerically) a pure state in the
// single-excitation sector.
const Trajectory& exact_reference(const VSystemSpec& sys, const BathSpec& bath,
                                  const DensityMatrix3& rho0, double t_max,
                                  const SolverSettings& settings,
                                  const std::string& cache_dir = default_cache_dir());

// Minimize dt -> integrated_distance(CG(dt), exact) by a coarse log-grid
// scan followed by golden-section refinement inside the best bracket.
// Deterministic; ties break toward smaller dt. Throws BoundaryError when
// the scan minimum sits on the window edge.
OptimizerResult optimize_dt(const VSystemSpec& sys, const BathSpec& bath, double t_max,
                            const DensityMatrix3& rho0, const SearchWindow& window,
                            const SolverSettings& settings = {},
                            const std::string& cache_dir = default_cache_dir(),
                            RateConvention convention = RateConvention::analytic);

struct ScanRow {
    double dt;
    double objective;
    double rwa_objective; // constant across the scan, repeated for plotting
};

// Objective curve over the given dt values plus the RWA objective for the
// same horizon.
std::vector<ScanRow> robustness_scan(const VSystemSpec& sys, const BathSpec& bath,
                                     double t_max, const DensityMatrix3& rho0,
                                     const std::vector<double>& dt_values,
                                     const SolverSettings& settings = {},
                                     const std::string& cache_dir = default_cache_dir(),
                                     RateConvention convention = RateConvention::analytic);

// Pure-state amplitudes of a rank-1 density matrix in the N <= 1 sector;
// throws DomainError when rho0 is not (numerically) pure.
AmplitudeState amplitudes_from_density(const DensityMatrix3& rho0);

// Log-spaced grid helper shared by the optimizer, scans and the CLI.
std::vector<double> log_grid(double lo, double hi, int n);

} // namespace cgsme
