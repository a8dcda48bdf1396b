// config.hpp — run configuration: JSON ingestion, validation, and task
// orchestration behind the command-line front end.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cgsme/exact3.hpp"
#include "cgsme/rates.hpp"

namespace cgsme {

inline constexpr const char* kToolVersion = "cgsme 0.1.0";

enum class Model { vsystem, twolevel };
enum class Task { exact, cg, rwa, compare, optimize, rates_scan, dephasing };
enum class InitialState { excited1, excited2, plus, minus, ground };
enum class OutputFormat { csv, json };

struct RunConfig {
    Model model = Model::vsystem;
    Task task = Task::exact;

    // system
    double omega1 = 0.095;
    double omega2 = 0.105;
    double omega0 = 1.0; // two-level splitting

    // bath; eta <= 0 means "default to 1/omega_c^2"
    double eta = 0.0;
    double omega_c = 1.0;
    double g = 0.001;
    double beta = std::numeric_limits<double>::infinity();

    // solver; t_max <= 0 means "derive from the relaxation time"
    double t_max = 0.0;
    double step = 0.05;
    ConvolutionScheme scheme = ConvolutionScheme::trapezoid;
    int subsample = 100;

    double dt = 0.0; // coarse-graining timescale where required
    RateConvention rates = RateConvention::analytic;

    // search window; zeros mean defaults [1/omega_c, 0.5/g], 40 points
    double search_lo = 0.0;
    double search_hi = 0.0;
    int n_grid = 0;

    InitialState rho0 = InitialState::excited1;

    std::string out;
    OutputFormat format = OutputFormat::csv;
    std::string cache_dir; // empty -> default_cache_dir()

    double effective_eta() const { return eta > 0.0 ? eta : 1.0 / (omega_c * omega_c); }
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& cfg); // canonical echo, round-trips

// Violations that would make run() raise ConfigError, plus advisory
// warnings (timescale ordering, degenerate optimization target).
ValidationReport validate(const RunConfig& cfg);

// Dispatches the task and writes the artifact files; throws ConfigError on
// invalid configs and propagates numerical errors. Returns the list of
// files written.
std::vector<std::string> run(const RunConfig& cfg);

// Parameter-sweep driver: {"base": {...}, "runs": [{...}, ...], "jobs": n}.
// Each run overlays the base config and writes its own artifacts.
std::vector<std::string> run_sweep(const nlohmann::json& doc, int jobs_override = 0);

} // namespace cgsme
