// analysis.cpp

#include "cgsme/analysis.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace cgsme {

namespace {

using Complex = std::complex<double>;

// FNV-1a over the run-defining parameters; keys both caches.
struct Hasher {
    std::uint64_t h = 1469598103934665603ull;
    void add_bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    }
    void add(double v) { add_bytes(&v, sizeof v); }
    void add(int v) { add_bytes(&v, sizeof v); }
};

std::uint64_t solve_hash(const VSystemSpec& sys, const BathSpec& bath,
                         const AmplitudeState& psi0, double t_max,
                         const SolverSettings& s) {
    Hasher hsh;
    hsh.add(2); // format version
    hsh.add(sys.omega1);
    hsh.add(sys.omega2);
    hsh.add(bath.eta);
    hsh.add(bath.omega_c);
    hsh.add(bath.g);
    hsh.add(std::isinf(bath.beta) ? -1.0 : bath.beta);
    hsh.add(psi0.c0.real());
    hsh.add(psi0.c0.imag());
    hsh.add(psi0.c1.real());
    hsh.add(psi0.c1.imag());
    hsh.add(psi0.c2.real());
    hsh.add(psi0.c2.imag());
    hsh.add(t_max);
    hsh.add(s.step);
    hsh.add(s.scheme == ConvolutionScheme::trapezoid ? 1 : 0);
    hsh.add(s.subsample);
    return hsh.h;
}

constexpr std::uint64_t kCacheMagic = 0x43475345584143ull; // "CGSEXAC"

bool load_trajectory(const std::filesystem::path& file, Trajectory& out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return false;
    std::uint64_t magic = 0, count = 0;
    in.read(reinterpret_cast<char*>(&magic), sizeof magic);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || magic != kCacheMagic || count == 0 || count > (1u << 26)) return false;
    out.picture = Picture::interaction;
    out.times.resize(count);
    out.states.assign(count, DensityMatrix3::Zero());
    in.read(reinterpret_cast<char*>(out.times.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    for (auto& st : out.states)
        in.read(reinterpret_cast<char*>(st.data()), 9 * sizeof(Complex));
    return static_cast<bool>(in);
}

void store_trajectory(const std::filesystem::path& file, const Trajectory& traj) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) return; // cache only; never fatal
    const std::uint64_t count = traj.times.size();
    out.write(reinterpret_cast<const char*>(&kCacheMagic), sizeof kCacheMagic);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(traj.times.data()),
              static_cast<std::streamsize>(count * sizeof(double)));
    for (const auto& st : traj.states)
        out.write(reinterpret_cast<const char*>(st.data()), 9 * sizeof(Complex));
}

const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);

} // namespace

double trace_distance(const DensityMatrix3& a, const DensityMatrix3& b) {
    const DensityMatrix3 d = a - b;
    const DensityMatrix3 h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<DensityMatrix3> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double integrated_distance(const Trajectory& a, const Trajectory& b) {
    if (a.picture != b.picture)
        throw GridMismatch("integrated_distance: trajectories in different pictures");
    if (a.times.size() != b.times.size() || a.times.size() < 2)
        throw GridMismatch("integrated_distance: grids differ in size");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (std::abs(a.times[i] - b.times[i]) > 1e-9 * (1.0 + std::abs(a.times[i])))
            throw GridMismatch("integrated_distance: time grids differ");

    double acc = 0.0;
    double prev = trace_distance(a.states[0], b.states[0]);
    for (std::size_t i = 1; i < a.times.size(); ++i) {
        const double cur = trace_distance(a.states[i], b.states[i]);
        acc += 0.5 * (prev + cur) * (a.times[i] - a.times[i - 1]);
        prev = cur;
    }
    return acc / (a.times.back() - a.times.front());
}

double relaxation_horizon(const VSystemSpec& sys, const BathSpec& bath, double n_times) {
    const double rate = gamma_rwa(bath, sys.mean());
    if (!(rate > 0.0)) throw DomainError("relaxation_horizon: vanishing relaxation rate");
    return n_times / rate;
}

SearchWindow default_search_window(const BathSpec& bath) {
    SearchWindow w;
    w.lo = 1.0 / bath.omega_c;
    w.hi = bath.g > 0.0 ? 0.5 / bath.g : 1e4 / bath.omega_c;
    w.n_grid = 40;
    return w;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("CGSME_CACHE_DIR")) return env;
    return (std::filesystem::current_path() / ".cgsme-cache").string();
}

AmplitudeState amplitudes_from_density(const DensityMatrix3& rho0) {
    if (hermiticity_deviation(rho0) > 1e-9 || trace_deviation(rho0) > 1e-9)
        throw DomainError("amplitudes_from_density: rho0 is not a density matrix");
    Eigen::SelfAdjointEigenSolver<DensityMatrix3> es(0.5 * (rho0 + rho0.adjoint()));
    const auto& ev = es.eigenvalues();
    if (ev(2) < 1.0 - 1e-9 || ev(1) > 1e-9)
        throw DomainError("amplitudes_from_density: exact reference needs a pure initial state");
    const Eigen::Vector3cd v = es.eigenvectors().col(2);
    return AmplitudeState{v(0), v(1), v(2)};
}

const Trajectory& exact_reference(const VSystemSpec& sys, const BathSpec& bath,
                                  const DensityMatrix3& rho0, double t_max,
                                  const SolverSettings& settings, const std::string& cache_dir) {
    static std::map<std::uint64_t, Trajectory> memo;
    static std::mutex mu;

    const AmplitudeState psi0 = amplitudes_from_density(rho0);
    const std::uint64_t key = solve_hash(sys, bath, psi0, t_max, settings);

    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    char name[64];
    std::snprintf(name, sizeof name, "exact-%016llx.bin",
                  static_cast<unsigned long long>(key));
    const std::filesystem::path file = std::filesystem::path(cache_dir) / name;

    Trajectory traj;
    if (!load_trajectory(file, traj)) {
        traj = solve_exact(sys, bath, psi0, t_max, settings);
        store_trajectory(file, traj);
    }
    return memo.emplace(key, std::move(traj)).first->second;
}

namespace {

struct Objective {
    const VSystemSpec& sys;
    const BathSpec& bath;
    const DensityMatrix3& rho0;
    const Trajectory& exact;
    RateConvention convention;
    int evaluations = 0;

    double operator()(double dt) {
        ++evaluations;
        const Superoperator gen = build_cg_generator(sys, bath, dt, convention);
        return integrated_distance(propagate(gen, rho0, exact.times), exact);
    }
};

} // namespace

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo)) throw DomainError("log_grid: need 0 < lo < hi");
    if (n < 2) throw DomainError("log_grid: need at least two points");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

OptimizerResult optimize_dt(const VSystemSpec& sys, const BathSpec& bath, double t_max,
                            const DensityMatrix3& rho0, const SearchWindow& window,
                            const SolverSettings& settings, const std::string& cache_dir,
                            RateConvention convention) {
    if (!(window.lo > 0.0)) throw DomainError("optimize_dt: window.lo must be > 0");
    if (window.n_grid < 4) throw DomainError("optimize_dt: need at least 4 scan points");

    const Trajectory& exact = exact_reference(sys, bath, rho0, t_max, settings, cache_dir);
    Objective objective{sys, bath, rho0, exact, convention};

    const std::vector<double> grid = log_grid(window.lo, window.hi, window.n_grid);
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = objective(grid[i]);
        if (values[i] < best_val) { // strict: ties resolve toward smaller dt
            best_val = values[i];
            best = i;
        }
    }
    if (best == 0 || best + 1 == grid.size())
        throw BoundaryError("optimize_dt: minimum on the search-window edge; widen the bracket");

    // golden-section refinement inside the winning bracket
    double a = grid[best - 1];
    double b = grid[best + 1];
    const double tol = 1e-2 / bath.omega_c;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = objective(x2);
        }
    }

    OptimizerResult res;
    res.dt_opt = 0.5 * (a + b);
    res.objective = objective(res.dt_opt);
    res.bracket_lo = grid[best - 1];
    res.bracket_hi = grid[best + 1];
    res.evaluations = objective.evaluations;
    return res;
}

std::vector<ScanRow> robustness_scan(const VSystemSpec& sys, const BathSpec& bath,
                                     double t_max, const DensityMatrix3& rho0,
                                     const std::vector<double>& dt_values,
                                     const SolverSettings& settings,
                                     const std::string& cache_dir, RateConvention convention) {
    const Trajectory& exact = exact_reference(sys, bath, rho0, t_max, settings, cache_dir);
    const double rwa_obj =
        integrated_distance(propagate(build_rwa_generator(sys, bath), rho0, exact.times), exact);
    Objective objective{sys, bath, rho0, exact, convention};
    std::vector<ScanRow> rows;
    rows.reserve(dt_values.size());
    for (double dt : dt_values) rows.push_back({dt, objective(dt), rwa_obj});
    return rows;
}

} // namespace cgsme
