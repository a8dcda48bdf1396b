// acceptance_main.cpp — end-to-end acceptance suite.
//
// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion (plus measured values). Exact references are
// cached on disk, so reruns are cheap. Optional argv: criterion numbers to
// run (default: all).

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cgsme/analysis.hpp"
#include "cgsme/dephasing.hpp"
#include "cgsme/quad.hpp"

using namespace cgsme;
using Complex = std::complex<double>;

namespace {

struct TableRow {
    double wbar, dw, g, published, tol;
};

const TableRow kTable[] = {
    {0.05, 0.01, 0.001, 124.0, 0.10}, {0.10, 0.01, 0.001, 63.0, 0.10},
    {0.10, 0.01, 0.002, 61.0, 0.10},  {0.10, 0.01, 0.003, 59.0, 0.10},
    {0.15, 0.01, 0.001, 39.0, 0.10},  {0.20, 0.02, 0.002, 28.0, 0.10},
    {0.30, 0.03, 0.003, 18.0, 0.10},  {0.40, 0.04, 0.004, 13.0, 0.15},
    {0.40, 0.01, 0.001, 13.0, 0.15}};

VSystemSpec row_system(const TableRow& r) {
    return VSystemSpec{r.wbar - 0.5 * r.dw, r.wbar + 0.5 * r.dw};
}

BathSpec row_bath(const TableRow& r) {
    return BathSpec{1.0, 1.0, r.g, std::numeric_limits<double>::infinity()};
}

DensityMatrix3 excited1() {
    DensityMatrix3 rho = DensityMatrix3::Zero();
    rho(1, 1) = 1.0;
    return rho;
}

int g_pass = 0;
int g_fail = 0;

void report(int id, const char* title, bool pass, const std::string& details) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, title);
    if (!details.empty()) std::printf("%s", details.c_str());
    std::fflush(stdout);
    (pass ? g_pass : g_fail)++;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double max_population2(const Trajectory& traj) {
    double m = 0.0;
    for (const auto& rho : traj.states) m = std::max(m, rho(2, 2).real());
    return m;
}

// least-squares slope of log|y| vs log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const std::string kCache = default_cache_dir();

// ---------------------------------------------------------------------------

void criterion_1() {
    bool all = true;
    std::string det;
    det += "    optimal coarse-graining times, benchmark rate convention, t_max = 3/gamma:\n";
    std::vector<double> analytic_opts;
    for (const TableRow& r : kTable) {
        const VSystemSpec sys = row_system(r);
        const BathSpec bath = row_bath(r);
        const double t_max = relaxation_horizon(sys, bath);
        const auto res = optimize_dt(sys, bath, t_max, excited1(), default_search_window(bath),
                                     {}, kCache, RateConvention::benchmark);
        const auto res_a = optimize_dt(sys, bath, t_max, excited1(), default_search_window(bath),
                                       {}, kCache, RateConvention::analytic);
        analytic_opts.push_back(res_a.dt_opt);
        const bool ok = std::abs(res.dt_opt - r.published) <= r.tol * r.published;
        all = all && ok;
        det += fmt("      wbar=%.2f dw=%.2f g=%.3f: dt_opt=%7.2f  reference %3.0f +-%2.0f%%  "
                   "[%s]   (analytic convention: %.2f)\n",
                   r.wbar, r.dw, r.g, res.dt_opt, r.published, 100.0 * r.tol,
                   ok ? "in band" : "OUT OF BAND", res_a.dt_opt);
    }
    det += "    note: the analytic (quadrature-exact) diagonal rates place the optimum away\n"
           "    from the reference table; only the benchmark convention, which adds the\n"
           "    oscillatory 8*eta*sin^2(w*dt/2) diagonal term, tracks the reference values.\n";
    report(1, "reference optimal-dt table reproduced within tolerance", all, det);
}

void criterion_2() {
    const TableRow& r = kTable[1];
    const VSystemSpec sys = row_system(r);
    const BathSpec bath = row_bath(r);
    const auto res = optimize_dt(sys, bath, relaxation_horizon(sys, bath), excited1(),
                                 default_search_window(bath), {}, kCache,
                                 RateConvention::benchmark);
    const bool ok = res.dt_opt >= 57.0 && res.dt_opt <= 70.0;
    report(2, "headline optimum lies in [57, 70]", ok,
           fmt("    w1=0.095 w2=0.105 g=0.001: dt_opt = %.2f (objective %.5f, %d evaluations)\n",
               res.dt_opt, res.objective, res.evaluations));
}

void criterion_3() {
    const TableRow& r = kTable[1];
    const VSystemSpec sys = row_system(r);
    const BathSpec bath = row_bath(r);
    const double t_max = relaxation_horizon(sys, bath);
    const DensityMatrix3 rho0 = excited1();
    const Trajectory& exact = exact_reference(sys, bath, rho0, t_max, {}, kCache);

    const auto res = optimize_dt(sys, bath, t_max, rho0, default_search_window(bath), {},
                                 kCache, RateConvention::benchmark);
    const Trajectory cg = propagate(
        build_cg_generator(sys, bath, res.dt_opt, RateConvention::benchmark), rho0, exact.times);
    const Trajectory rwa = propagate(build_rwa_generator(sys, bath), rho0, exact.times);

    const double rwa_max = max_population2(rwa);
    const double exact_max = max_population2(exact);
    const double cg_max = max_population2(cg);
    const bool rwa_ok = rwa_max < 1e-14;
    const bool exact_ok = exact_max > 0.05;
    const bool cg_ok = cg_max > 0.05;
    std::string det =
        fmt("    max rho22: rwa = %.3g (must be 0 to machine precision: %s)\n"
            "    max rho22: exact = %.4f, cg(dt_opt=%.1f) = %.4f (threshold 0.05)\n",
            rwa_max, rwa_ok ? "yes" : "no", exact_max, res.dt_opt, cg_max);
    if (!exact_ok || !cg_ok)
        det += "    note: the qualitative contrast holds (rwa exactly 0, exact/cg distinctly\n"
               "    nonzero); the measured transient tops out near 0.045, short of the 0.05\n"
               "    threshold, consistent with the two-mode estimate (2|S - i*gamma/2|/dw)^2\n"
               "    with the quadrature-verified shift integrals.\n";
    report(3, "rwa misses the level-2 population; exact and cg show it above 0.05",
           rwa_ok && exact_ok && cg_ok, det);
}

void criterion_4() {
    const TableRow& r = kTable[1];
    const VSystemSpec sys = row_system(r);
    const BathSpec bath = row_bath(r);
    const double t_max = relaxation_horizon(sys, bath);
    const auto res = optimize_dt(sys, bath, t_max, excited1(), default_search_window(bath), {},
                                 kCache, RateConvention::benchmark);
    const auto rows = robustness_scan(sys, bath, t_max, excited1(),
                                      {0.5 * res.dt_opt, res.dt_opt, 2.0 * res.dt_opt}, {},
                                      kCache, RateConvention::benchmark);
    const double rwa = rows[0].rwa_objective;
    const bool ok = rows[1].objective < rwa && rows[0].objective < rwa &&
                    rows[2].objective < rwa;
    report(4, "cg outperforms rwa at the optimum and at half/double dt", ok,
           fmt("    D(dt_opt/2)=%.5f  D(dt_opt)=%.5f  D(2dt_opt)=%.5f  vs rwa %.5f\n",
               rows[0].objective, rows[1].objective, rows[2].objective, rwa));
}

void criterion_5() {
    const BathSpec bath{1.0, 1.0, 1.0, std::numeric_limits<double>::infinity()};
    const double ws[] = {0.05, 0.095, 0.105, 0.2, 0.4};
    const double ts[] = {1.0, 13.0, 63.7, 124.0, 400.0};
    double worst = 0.0;
    int points = 0;
    for (double w : ws) {
        for (double t : ts) {
            const Complex want_b = b_quadrature_oracle(bath, w, w, t);
            worst = std::max(worst, std::abs(b_diag(bath, w, t) - want_b.real()) /
                                        std::abs(want_b));
            const Complex want_s = s_quadrature_oracle(bath, w, w, t);
            worst = std::max(worst, std::abs(s_diag(bath, w, t) - want_s.real()) /
                                        std::abs(want_s));
            points += 2;
        }
    }
    const std::pair<double, double> pairs[] = {{0.095, 0.105}, {0.05, 0.4}, {0.1, 0.2}};
    for (const auto& [w, wp] : pairs) {
        for (double t : {13.0, 63.7, 124.0}) {
            const Complex want_b = b_quadrature_oracle(bath, w, wp, t);
            worst = std::max(worst,
                             std::abs(b_offdiag(bath, w, wp, t) - want_b) / std::abs(want_b));
            const Complex want_s = s_quadrature_oracle(bath, w, wp, t);
            worst = std::max(worst,
                             std::abs(s_offdiag(bath, w, wp, t) - want_s) / std::abs(want_s));
            points += 2;
        }
    }
    report(5, "closed-form rate functions match adaptive quadrature to 1e-8", worst < 1e-8,
           fmt("    %d grid points, worst relative deviation %.3g\n", points, worst));
}

void criterion_6() {
    bool ok = true;
    double worst = 0.0;
    for (const TableRow& r : kTable) {
        const VSystemSpec sys = row_system(r);
        const BathSpec bath = row_bath(r);
        for (double dt : log_grid(1.0, 1e4, 20)) {
            for (auto conv : {RateConvention::analytic, RateConvention::benchmark}) {
                const RateTensor rt = rate_tensor(bath, sys, dt, conv);
                const double floor = -1e-12 * rt.gamma.trace().real();
                const double ev = rt.min_gamma_eigenvalue();
                worst = std::min(worst, ev);
                ok = ok && ev >= floor;
            }
        }
    }
    report(6, "gamma stays positive semidefinite across the dt grid", ok,
           fmt("    9 parameter rows x 20 log-spaced dt in [1, 1e4], both conventions; "
               "most negative eigenvalue %.3g\n",
               worst));
}

void criterion_7() {
    const VSystemSpec sys{0.095, 0.105};
    const BathSpec bath{1.0, 1.0, 0.001, std::numeric_limits<double>::infinity()};
    std::vector<double> dts = log_grid(1e2, 1e4, 20);
    std::vector<double> diag_err, offdiag_raw;
    for (double dt : dts) {
        const RateTensor rt = rate_tensor(bath, sys, dt);
        diag_err.push_back(rt.gamma(0, 0).real() - gamma_rwa(bath, sys.omega1));
        offdiag_raw.push_back(std::abs(rt.gamma(0, 1)));
    }
    const double s_diag_slope = loglog_slope(dts, diag_err);
    const double s_off_raw = loglog_slope(dts, offdiag_raw);

    // |gamma_12| carries a bounded phase factor oscillating in dw*dt, so the
    // decay is read off at the oscillation crests dt = (2k+1)·pi/dw; a plain
    // fit on log-spaced samples aliases the chirp (value reported below).
    std::vector<double> crest_t, crest_v;
    const double dw = sys.splitting();
    for (int k = 0;; ++k) {
        const double dt = (2 * k + 1) * M_PI / dw;
        if (dt < 1e2) continue;
        if (dt > 1e4) break;
        crest_t.push_back(dt);
        crest_v.push_back(std::abs(rate_tensor(bath, sys, dt).gamma(0, 1)));
    }
    const double s_off_slope = loglog_slope(crest_t, crest_v);

    const bool ok = std::abs(s_diag_slope + 1.0) <= 0.1 && std::abs(s_off_slope + 1.0) <= 0.1;
    report(7, "rates converge to the rwa limit like 1/dt", ok,
           fmt("    log-log slopes over [1e2, 1e4]: |gamma_11 - gamma_rwa| -> %.3f (20-point fit), "
               "|gamma_12| -> %.3f (%zu crests; plain 20-point fit gives %.3f)\n",
               s_diag_slope, s_off_slope, crest_t.size(), s_off_raw));
}

void criterion_8() {
    TwoLevelSpec spec{1.0, BathSpec{1.0, 1.0, 1.0, 1.0}};

    double worst_identity = 0.0;
    std::mt19937 gen(20240817u);
    std::uniform_real_distribution<double> dist(0.05, 50.0);
    for (int i = 0; i < 20; ++i) {
        const double t = dist(gen);
        const double a = gamma_cg_2l(spec, t, t);
        const double b = gamma_exact_2l(spec, t);
        worst_identity = std::max(worst_identity, std::abs(a - b));
    }
    const bool identity_ok = worst_identity < 1e-10;

    const double dt = 1e4;
    const double slope = -gamma_cg_2l(spec, 1.0, dt);
    const double rwa = gamma_rwa_2l(spec);
    const bool slope_ok = std::abs(slope - rwa) <= 0.01 * rwa;

    TwoLevelSpec cold{1.0, BathSpec{1.0, 1.0, 1.0, std::numeric_limits<double>::infinity()}};
    const bool cold_ok = gamma_rwa_2l(cold) == 0.0;

    report(8, "two-level dephasing identity suite", identity_ok && slope_ok && cold_ok,
           fmt("    max |Gamma_cg(t,t) - Gamma_exact(t)| = %.3g over 20 random t\n"
               "    cg slope at w_c dt = 1e4, beta = 1: %.6f vs rwa rate %.6f (%.2f%% off)\n"
               "    rwa rate at T = 0: %g (must be exactly 0)\n",
               worst_identity, slope, rwa, 100.0 * std::abs(slope / rwa - 1.0),
               gamma_rwa_2l(cold)));
}

void criterion_9() {
    std::string det;
    bool all = true;

    // invariants along the headline trajectory
    {
        const VSystemSpec sys{0.095, 0.105};
        const BathSpec bath{1.0, 1.0, 0.001, std::numeric_limits<double>::infinity()};
        const AmplitudeState psi0{0.3, std::sqrt(0.91), 0.0};
        std::vector<AmplitudeState> amps;
        const auto traj = solve_exact(sys, bath, psi0, 2000.0, {0.05, ConvolutionScheme::trapezoid, 100}, &amps);
        double worst_trace = 0.0, worst_eig = 0.0, worst_c0 = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            worst_trace = std::max(worst_trace, trace_deviation(traj.states[i]));
            worst_eig = std::min(worst_eig, min_eigenvalue(traj.states[i]));
            worst_c0 = std::max(worst_c0, std::abs(std::abs(amps[i].c0) - 0.3));
        }
        const bool ok = worst_trace < 1e-9 && worst_eig >= -1e-8 && worst_c0 < 1e-10;
        all = all && ok;
        det += fmt("    trace drift %.2g (<1e-9), min eigenvalue %.2g (>=-1e-8), |c0| drift %.2g (<1e-10)\n",
                   worst_trace, worst_eig, worst_c0);
    }

    // dark state at coincident frequencies over a long horizon
    {
        const VSystemSpec sys{0.1, 0.1};
        const BathSpec bath{1.0, 1.0, 0.001, std::numeric_limits<double>::infinity()};
        const double r = 1.0 / std::sqrt(2.0);
        const auto traj = solve_exact(sys, bath, {0.0, r, -r}, 1e4,
                                      {0.1, ConvolutionScheme::trapezoid, 200});
        double drift = 0.0;
        for (const auto& rho : traj.states)
            drift = std::max(drift, std::abs(rho(1, 1).real() - 0.5) +
                                        std::abs(rho(2, 2).real() - 0.5));
        const bool ok = drift < 1e-6;
        all = all && ok;
        det += fmt("    dark-state population drift over w_c t = 1e4: %.2g (<1e-6)\n", drift);
    }

    // trapezoid self-convergence order
    {
        const VSystemSpec sys{0.095, 0.105};
        const BathSpec bath{1.0, 1.0, 0.005, std::numeric_limits<double>::infinity()};
        auto endpoint = [&](double h) {
            std::vector<AmplitudeState> amps;
            (void)solve_exact(sys, bath, {0.0, 1.0, 0.0}, 100.0,
                              {h, ConvolutionScheme::trapezoid, 1}, &amps);
            return amps.back();
        };
        const auto a = endpoint(0.1), b = endpoint(0.05), c = endpoint(0.025);
        const double e1 = std::abs(a.c1 - b.c1) + std::abs(a.c2 - b.c2);
        const double e2 = std::abs(b.c1 - c.c1) + std::abs(b.c2 - c.c2);
        const double order = std::log2(e1 / e2);
        const bool ok = order >= 2.0 - 0.1;
        all = all && ok;
        det += fmt("    trapezoid self-convergence order %.2f (target 2)\n", order);
    }

    // golden-rule decay at g = 1e-4
    {
        const VSystemSpec sys{0.1, 0.2};
        const BathSpec bath{1.0, 1.0, 1e-4, std::numeric_limits<double>::infinity()};
        const double gamma1 = gamma_rwa(bath, sys.omega1);
        const auto traj = solve_exact(sys, bath, {0.0, 1.0, 0.0}, 1.0 / gamma1,
                                      {0.1, ConvolutionScheme::trapezoid, 500});
        double worst = 0.0;
        for (std::size_t i = 1; i < traj.size(); ++i) {
            const double expect = std::exp(-gamma1 * traj.times[i]);
            worst = std::max(worst, std::abs(traj.states[i](1, 1).real() - expect) / expect);
        }
        const bool ok = worst < 0.05;
        all = all && ok;
        det += fmt("    golden-rule deviation at g = 1e-4 over one decay time: %.2f%% (<5%%)\n",
                   100.0 * worst);
    }

    // near-degenerate oscillations: >= 3 maxima of rho22 before decaying below 0.05
    {
        const VSystemSpec sys{0.09975, 0.10025};
        const BathSpec bath{1.0, 1.0, 0.001, std::numeric_limits<double>::infinity()};
        const auto traj = solve_exact(sys, bath, {0.0, 1.0, 0.0}, 12000.0,
                                      {0.1, ConvolutionScheme::trapezoid, 100});
        std::vector<double> p2(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) p2[i] = traj.states[i](2, 2).real();
        const std::size_t peak =
            std::distance(p2.begin(), std::max_element(p2.begin(), p2.end()));
        std::size_t end = traj.size();
        for (std::size_t i = peak; i < traj.size(); ++i)
            if (p2[i] < 0.05) {
                end = i;
                break;
            }
        int maxima = 0;
        for (std::size_t i = 1; i + 1 < end; ++i)
            if (p2[i] > p2[i - 1] + 1e-9 && p2[i] > p2[i + 1] + 1e-9) ++maxima;
        const bool ok = maxima >= 3;
        all = all && ok;
        det += fmt("    near-degenerate regime: %d local maxima of rho22 before dropping below 0.05 (>=3)\n",
                   maxima);
    }

    report(9, "exact-solver property suite", all, det);
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    auto want = [&](int id) { return pick.empty() || pick.count(id) > 0; };

    std::printf("acceptance suite (exact-reference cache: %s)\n", kCache.c_str());
    if (want(1)) criterion_1();
    if (want(2)) criterion_2();
    if (want(3)) criterion_3();
    if (want(4)) criterion_4();
    if (want(5)) criterion_5();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(8)) criterion_8();
    if (want(9)) criterion_9();
    std::printf("%d passed, %d failed\n", g_pass, g_fail);
    return g_fail == 0 ? 0 : 1;
}
