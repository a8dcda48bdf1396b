// run.cpp — task orchestration for the command-line front end.

#include "cgsme/config.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <thread>

#include "cgsme/analysis.hpp"
#include "cgsme/dephasing.hpp"
#include "cgsme/io.hpp"

namespace cgsme {

namespace {

using nlohmann::json;

const char* task_name(Task t) {
    switch (t) {
    case Task::exact: return "exact";
    case Task::cg: return "cg";
    case Task::rwa: return "rwa";
    case Task::compare: return "compare";
    case Task::optimize: return "optimize";
    case Task::rates_scan: return "rates-scan";
    case Task::dephasing: return "dephasing";
    }
    return "?";
}

Task task_from_name(const std::string& s) {
    if (s == "exact") return Task::exact;
    if (s == "cg") return Task::cg;
    if (s == "rwa") return Task::rwa;
    if (s == "compare") return Task::compare;
    if (s == "optimize") return Task::optimize;
    if (s == "rates-scan" || s == "rates_scan") return Task::rates_scan;
    if (s == "dephasing") return Task::dephasing;
    throw ConfigError("config: unknown task '" + s + "'");
}

const char* state_name(InitialState s) {
    switch (s) {
    case InitialState::excited1: return "excited1";
    case InitialState::excited2: return "excited2";
    case InitialState::plus: return "plus";
    case InitialState::minus: return "minus";
    case InitialState::ground: return "ground";
    }
    return "?";
}

InitialState state_from_name(const std::string& s) {
    if (s == "excited1") return InitialState::excited1;
    if (s == "excited2") return InitialState::excited2;
    if (s == "plus") return InitialState::plus;
    if (s == "minus") return InitialState::minus;
    if (s == "ground") return InitialState::ground;
    throw ConfigError("config: unknown rho0 '" + s + "'");
}

double beta_from_json(const json& v) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw ConfigError("config: bath.beta must be a number, null, or \"inf\"");
    }
    return v.get<double>();
}

BathSpec make_bath(const RunConfig& cfg) {
    BathSpec b;
    b.eta = cfg.effective_eta();
    b.omega_c = cfg.omega_c;
    b.g = cfg.g;
    b.beta = cfg.beta;
    return b;
}

VSystemSpec make_sys(const RunConfig& cfg) { return VSystemSpec{cfg.omega1, cfg.omega2}; }

DensityMatrix3 initial_density(InitialState s) {
    Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    switch (s) {
    case InitialState::excited1: v(1) = 1.0; break;
    case InitialState::excited2: v(2) = 1.0; break;
    case InitialState::plus: v(1) = r; v(2) = r; break;
    case InitialState::minus: v(1) = r; v(2) = -r; break;
    case InitialState::ground: v(0) = 1.0; break;
    }
    return v * v.adjoint();
}

double resolve_t_max(const RunConfig& cfg, const VSystemSpec& sys, const BathSpec& bath) {
    if (cfg.t_max > 0.0) return cfg.t_max;
    if (cfg.model == Model::twolevel) return 10.0 / cfg.omega_c;
    return relaxation_horizon(sys, bath);
}

SearchWindow resolve_window(const RunConfig& cfg, const BathSpec& bath) {
    SearchWindow w = default_search_window(bath);
    if (cfg.search_lo > 0.0) w.lo = cfg.search_lo;
    if (cfg.search_hi > 0.0) w.hi = cfg.search_hi;
    if (cfg.n_grid > 0) w.n_grid = cfg.n_grid;
    return w;
}

SolverSettings resolve_solver(const RunConfig& cfg) {
    SolverSettings s;
    s.step = cfg.step;
    s.scheme = cfg.scheme;
    s.subsample = cfg.subsample;
    return s;
}

std::string resolve_cache(const RunConfig& cfg) {
    return cfg.cache_dir.empty() ? default_cache_dir() : cfg.cache_dir;
}

// Same grid the exact solver emits, for standalone generator runs.
std::vector<double> sample_times(double t_max, double step, int subsample) {
    std::size_t n = static_cast<std::size_t>(std::ceil(t_max / step - 1e-12));
    const int k = std::max(1, subsample);
    n = ((n + k - 1) / k) * k;
    std::vector<double> times;
    times.reserve(n / k + 1);
    for (std::size_t i = 0; i <= n / k; ++i) times.push_back(static_cast<double>(i) * k * step);
    return times;
}

std::string grid_hash(const RunConfig& cfg) {
    const std::string dump = config_to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

io::Provenance provenance(const RunConfig& cfg) {
    return io::Provenance{kToolVersion, config_to_json(cfg), grid_hash(cfg)};
}

std::string with_suffix(const RunConfig& cfg, const std::string& tag) {
    const char* ext = cfg.format == OutputFormat::csv ? ".csv" : ".json";
    if (tag.empty()) return cfg.out;
    return cfg.out + "_" + tag + ext;
}

void write_traj(const RunConfig& cfg, const std::string& path, const Trajectory& traj) {
    if (cfg.format == OutputFormat::csv)
        io::write_trajectory_csv(path, traj, provenance(cfg));
    else
        io::write_json(path, io::trajectory_to_json(traj), provenance(cfg));
}

} // namespace

RunConfig config_from_json(const json& doc) {
    RunConfig cfg;
    if (doc.contains("model")) {
        const std::string m = doc["model"].get<std::string>();
        if (m == "vsystem") cfg.model = Model::vsystem;
        else if (m == "twolevel") cfg.model = Model::twolevel;
        else throw ConfigError("config: unknown model '" + m + "'");
    }
    if (doc.contains("task")) cfg.task = task_from_name(doc["task"].get<std::string>());
    if (doc.contains("system")) {
        const json& s = doc["system"];
        if (s.contains("omega1")) cfg.omega1 = s["omega1"].get<double>();
        if (s.contains("omega2")) cfg.omega2 = s["omega2"].get<double>();
        if (s.contains("omega0")) cfg.omega0 = s["omega0"].get<double>();
    }
    if (doc.contains("bath")) {
        const json& b = doc["bath"];
        if (b.contains("eta")) cfg.eta = b["eta"].get<double>();
        if (b.contains("omega_c")) cfg.omega_c = b["omega_c"].get<double>();
        if (b.contains("g")) cfg.g = b["g"].get<double>();
        if (b.contains("beta")) cfg.beta = beta_from_json(b["beta"]);
    }
    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        if (s.contains("t_max")) cfg.t_max = s["t_max"].get<double>();
        if (s.contains("step")) cfg.step = s["step"].get<double>();
        if (s.contains("scheme")) {
            const std::string sch = s["scheme"].get<std::string>();
            if (sch == "trapezoid") cfg.scheme = ConvolutionScheme::trapezoid;
            else if (sch == "riemann") cfg.scheme = ConvolutionScheme::riemann;
            else throw ConfigError("config: unknown scheme '" + sch + "'");
        }
        if (s.contains("subsample")) cfg.subsample = s["subsample"].get<int>();
    }
    if (doc.contains("dt")) cfg.dt = doc["dt"].get<double>();
    if (doc.contains("rates")) {
        const std::string r = doc["rates"].get<std::string>();
        if (r == "analytic") cfg.rates = RateConvention::analytic;
        else if (r == "benchmark") cfg.rates = RateConvention::benchmark;
        else throw ConfigError("config: unknown rates convention '" + r + "'");
    }
    if (doc.contains("search")) {
        const json& s = doc["search"];
        if (s.contains("lo")) cfg.search_lo = s["lo"].get<double>();
        if (s.contains("hi")) cfg.search_hi = s["hi"].get<double>();
        if (s.contains("n_grid")) cfg.n_grid = s["n_grid"].get<int>();
    }
    if (doc.contains("rho0")) cfg.rho0 = state_from_name(doc["rho0"].get<std::string>());
    if (doc.contains("output")) {
        const json& o = doc["output"];
        if (o.contains("path")) cfg.out = o["path"].get<std::string>();
        if (o.contains("format")) {
            const std::string f = o["format"].get<std::string>();
            if (f == "csv") cfg.format = OutputFormat::csv;
            else if (f == "json") cfg.format = OutputFormat::json;
            else throw ConfigError("config: unknown format '" + f + "'");
        }
        if (o.contains("cache_dir")) cfg.cache_dir = o["cache_dir"].get<std::string>();
    }
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json doc;
    doc["model"] = cfg.model == Model::vsystem ? "vsystem" : "twolevel";
    doc["task"] = task_name(cfg.task);
    if (cfg.model == Model::vsystem)
        doc["system"] = {{"omega1", cfg.omega1}, {"omega2", cfg.omega2}};
    else
        doc["system"] = {{"omega0", cfg.omega0}};
    doc["bath"] = {{"eta", cfg.eta},
                   {"omega_c", cfg.omega_c},
                   {"g", cfg.g},
                   {"beta", std::isinf(cfg.beta) ? json("inf") : json(cfg.beta)}};
    doc["solver"] = {{"t_max", cfg.t_max},
                     {"step", cfg.step},
                     {"scheme", cfg.scheme == ConvolutionScheme::trapezoid ? "trapezoid"
                                                                           : "riemann"},
                     {"subsample", cfg.subsample}};
    doc["dt"] = cfg.dt;
    doc["rates"] = cfg.rates == RateConvention::analytic ? "analytic" : "benchmark";
    doc["search"] = {{"lo", cfg.search_lo}, {"hi", cfg.search_hi}, {"n_grid", cfg.n_grid}};
    doc["rho0"] = state_name(cfg.rho0);
    doc["output"] = {{"path", cfg.out},
                     {"format", cfg.format == OutputFormat::csv ? "csv" : "json"},
                     {"cache_dir", cfg.cache_dir}};
    return doc;
}

ValidationReport validate(const RunConfig& cfg) {
    ValidationReport rep;
    auto err = [&](const std::string& m) { rep.errors.push_back(m); };

    if (!(cfg.omega_c > 0.0)) err("bath.omega_c: must be > 0");
    if (cfg.eta != 0.0 && !(cfg.eta > 0.0)) err("bath.eta: must be > 0 (or omitted)");
    if (!(cfg.g >= 0.0)) err("bath.g: must be >= 0");
    if (!(cfg.beta > 0.0)) err("bath.beta: must be > 0 or \"inf\"");

    const bool needs_vsystem = cfg.model == Model::vsystem;
    if (needs_vsystem) {
        if (!(cfg.omega1 > 0.0)) err("system.omega1: must be > 0");
        if (!(cfg.omega2 > 0.0)) err("system.omega2: must be > 0");
    }
    if (cfg.model == Model::twolevel && cfg.task != Task::dephasing)
        err("task: model 'twolevel' only supports the dephasing task");
    if (cfg.model == Model::vsystem && cfg.task == Task::dephasing)
        err("task: dephasing requires model 'twolevel'");

    if (!(cfg.step > 0.0)) err("solver.step: must be > 0");
    if (cfg.t_max != 0.0 && !(cfg.t_max > 0.0)) err("solver.t_max: must be > 0 (or omitted)");
    if (cfg.subsample < 1) err("solver.subsample: must be >= 1");

    const bool needs_exact =
        cfg.task == Task::exact || cfg.task == Task::compare || cfg.task == Task::optimize;
    if (needs_exact && needs_vsystem && cfg.omega1 > 0.0 && cfg.omega2 > 0.0 &&
        cfg.step > 0.0) {
        const double fmax = std::max({cfg.omega1, cfg.omega2, cfg.omega_c});
        if (cfg.step > 0.1 / fmax)
            err("solver.step: exceeds 0.1/max(omega1, omega2, omega_c)");
    }

    const bool needs_dt =
        cfg.task == Task::cg || cfg.task == Task::compare || cfg.task == Task::dephasing;
    if (needs_dt && !(cfg.dt > 0.0)) err("dt: required (> 0) for this task");

    if (cfg.search_lo != 0.0 && !(cfg.search_lo > 0.0)) err("search.lo: must be > 0");
    if (cfg.search_lo > 0.0 && cfg.search_hi > 0.0 && !(cfg.search_lo < cfg.search_hi))
        err("search: lo must be < hi");
    if (cfg.task == Task::optimize && cfg.n_grid != 0 && cfg.n_grid < 4)
        err("search.n_grid: must be >= 4");

    if (cfg.out.empty()) err("output.path: required");

    // advisory checks
    if (cfg.dt > 0.0 && cfg.g > 0.0) {
        const double wdt = cfg.omega_c * cfg.dt;
        if (!(1.0 < wdt && wdt < cfg.omega_c / cfg.g))
            rep.warnings.push_back(
                "dt: outside the timescale ordering 1 < omega_c*dt < omega_c/g");
    }
    if (cfg.task == Task::optimize && needs_vsystem && cfg.omega1 == cfg.omega2)
        rep.warnings.push_back(
            "system: omega1 == omega2 has a dark state; the objective is degenerate");
    return rep;
}

std::vector<std::string> run(const RunConfig& cfg) {
    const ValidationReport rep = validate(cfg);
    if (!rep.ok()) {
        std::string msg = "invalid config:";
        for (const auto& e : rep.errors) msg += "\n  " + e;
        throw ConfigError(msg);
    }

    const BathSpec bath = make_bath(cfg);
    std::vector<std::string> written;

    if (cfg.task == Task::dephasing) {
        TwoLevelSpec spec{cfg.omega0, bath};
        const double t_max = resolve_t_max(cfg, VSystemSpec{}, bath);
        const double rate = gamma_rwa_2l(spec);
        std::vector<io::DephasingRow> rows;
        for (double t : sample_times(t_max, cfg.step, cfg.subsample)) {
            const double ge = gamma_exact_2l(spec, t);
            rows.push_back({t, ge, gamma_cg_2l(spec, t, cfg.dt), -rate * t,
                            0.5 * std::exp(ge)});
        }
        io::write_dephasing_csv(cfg.out, rows, provenance(cfg));
        return {cfg.out};
    }

    const VSystemSpec sys = make_sys(cfg);
    const SolverSettings solver = resolve_solver(cfg);
    const double t_max = resolve_t_max(cfg, sys, bath);
    const DensityMatrix3 rho0 = initial_density(cfg.rho0);
    const std::string cache = resolve_cache(cfg);

    switch (cfg.task) {
    case Task::exact: {
        const Trajectory traj = solve_exact(sys, bath, amplitudes_from_density(rho0), t_max,
                                            solver);
        write_traj(cfg, cfg.out, traj);
        written.push_back(cfg.out);
        break;
    }
    case Task::cg: {
        const auto times = sample_times(t_max, cfg.step, cfg.subsample);
        write_traj(cfg, cfg.out, propagate(build_cg_generator(sys, bath, cfg.dt, cfg.rates), rho0, times));
        written.push_back(cfg.out);
        break;
    }
    case Task::rwa: {
        const auto times = sample_times(t_max, cfg.step, cfg.subsample);
        write_traj(cfg, cfg.out, propagate(build_rwa_generator(sys, bath), rho0, times));
        written.push_back(cfg.out);
        break;
    }
    case Task::compare: {
        const Trajectory& exact = exact_reference(sys, bath, rho0, t_max, solver, cache);
        const Trajectory cg = propagate(build_cg_generator(sys, bath, cfg.dt, cfg.rates), rho0, exact.times);
        const Trajectory rwa = propagate(build_rwa_generator(sys, bath), rho0, exact.times);
        std::vector<double> d_cg(exact.size()), d_rwa(exact.size());
        for (std::size_t i = 0; i < exact.size(); ++i) {
            d_cg[i] = trace_distance(cg.states[i], exact.states[i]);
            d_rwa[i] = trace_distance(rwa.states[i], exact.states[i]);
        }
        write_traj(cfg, with_suffix(cfg, "exact"), exact);
        write_traj(cfg, with_suffix(cfg, "cg"), cg);
        write_traj(cfg, with_suffix(cfg, "rwa"), rwa);
        const std::string dist = cfg.out + "_distance.csv";
        io::write_distance_csv(dist, exact.times, d_cg, d_rwa, provenance(cfg));
        written = {with_suffix(cfg, "exact"), with_suffix(cfg, "cg"), with_suffix(cfg, "rwa"),
                   dist};
        break;
    }
    case Task::optimize: {
        const SearchWindow window = resolve_window(cfg, bath);
        const OptimizerResult res =
            optimize_dt(sys, bath, t_max, rho0, window, solver, cache, cfg.rates);
        const Trajectory& exact = exact_reference(sys, bath, rho0, t_max, solver, cache);
        const double rwa_obj = integrated_distance(
            propagate(build_rwa_generator(sys, bath), rho0, exact.times), exact);
        nlohmann::json doc;
        doc["params"] = {{"omega1", sys.omega1}, {"omega2", sys.omega2},  {"g", bath.g},
                         {"eta", bath.eta},      {"omega_c", bath.omega_c}, {"t_max", t_max}};
        doc["dt_opt"] = res.dt_opt;
        doc["objective"] = res.objective;
        doc["rwa_objective"] = rwa_obj;
        doc["bracket"] = {res.bracket_lo, res.bracket_hi};
        doc["evaluations"] = res.evaluations;
        doc["grid"] = log_grid(window.lo, window.hi, window.n_grid);
        io::write_json(cfg.out, doc, provenance(cfg));
        written.push_back(cfg.out);

        // companion objective curve over the scan grid (robustness table)
        const auto scan = robustness_scan(sys, bath, t_max, rho0,
                                          log_grid(window.lo, window.hi, window.n_grid),
                                          solver, cache, cfg.rates);
        std::string scan_path = cfg.out;
        const std::size_t dot = scan_path.find_last_of('.');
        if (dot != std::string::npos && scan_path.find('/', dot) == std::string::npos)
            scan_path.resize(dot);
        scan_path += "_scan.csv";
        io::write_objective_scan_csv(scan_path, scan, provenance(cfg));
        written.push_back(scan_path);
        break;
    }
    case Task::rates_scan: {
        const SearchWindow window = resolve_window(cfg, bath);
        const auto dts = log_grid(window.lo, window.hi, window.n_grid);
        io::write_rate_scan_csv(cfg.out, rate_scan(bath, sys, dts, cfg.rates), provenance(cfg));
        written.push_back(cfg.out);
        break;
    }
    default:
        throw ConfigError("run: unhandled task");
    }
    return written;
}

std::vector<std::string> run_sweep(const json& doc, int jobs_override) {
    if (!doc.contains("runs") || !doc["runs"].is_array() || doc["runs"].empty())
        throw ConfigError("sweep: 'runs' must be a non-empty array of config overlays");
    const json base = doc.value("base", json::object());
    int jobs = jobs_override > 0 ? jobs_override : doc.value("jobs", 2);
    jobs = std::max(1, jobs);

    std::vector<json> merged;
    for (const auto& overlay : doc["runs"]) {
        json m = base;
        m.merge_patch(overlay);
        merged.push_back(std::move(m));
    }

    std::vector<std::string> written(merged.size());
    std::vector<std::string> failures(merged.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= merged.size()) return;
            try {
                const auto files = run(config_from_json(merged[i]));
                written[i] = files.empty() ? std::string() : files.front();
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string problems;
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty()) problems += "\n  run " + std::to_string(i) + ": " + failures[i];
    if (!problems.empty()) throw Error("sweep: some runs failed:" + problems);

    std::vector<std::string> out;
    for (auto& w : written)
        if (!w.empty()) out.push_back(std::move(w));
    return out;
}

} // namespace cgsme
