// cgsme_main.cpp — command-line front end.
//
// Subcommands mirror the library tasks; a JSON config can seed any run and
// individual flags override it. Exit codes: 0 success, 2 config error,
// 3 numerical failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgsme/config.hpp"
#include "cgsme/errors.hpp"

namespace {

using cgsme::RunConfig;

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cgsme::ConfigError("cannot open config file " + path);
    nlohmann::json doc;
    in >> doc;
    return doc;
}

struct Flags {
    std::string config_path;
    double omega1 = 0, omega2 = 0, omega0 = 0, g = 0, eta = 0, omega_c = 0, beta = 0;
    std::string beta_str;
    double dt = 0, t_max = 0, step = 0, lo = 0, hi = 0;
    std::string rates;
    int subsample = 0, n_grid = 0;
    std::string scheme, out, format, rho0, cache_dir;
};

void add_common_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "JSON config file (flags override it)");
    sub->add_option("--omega1", f.omega1, "first transition frequency");
    sub->add_option("--omega2", f.omega2, "second transition frequency");
    sub->add_option("--omega0", f.omega0, "two-level splitting");
    sub->add_option("--g", f.g, "effective system-bath coupling");
    sub->add_option("--eta", f.eta, "Ohmic prefactor (default 1/omega_c^2)");
    sub->add_option("--omega-c", f.omega_c, "bath cutoff frequency");
    sub->add_option("--beta", f.beta_str, "inverse temperature (number or 'inf')");
    sub->add_option("--dt", f.dt, "coarse-graining timescale");
    sub->add_option("--rates", f.rates, "diagonal-rate convention: analytic|benchmark");
    sub->add_option("--t-max", f.t_max, "time horizon (default: 3 relaxation times)");
    sub->add_option("--step", f.step, "RK4 step");
    sub->add_option("--scheme", f.scheme, "convolution scheme: trapezoid|riemann");
    sub->add_option("--subsample", f.subsample, "store every k-th state");
    sub->add_option("--lo", f.lo, "search window lower edge");
    sub->add_option("--hi", f.hi, "search window upper edge");
    sub->add_option("--n-grid", f.n_grid, "coarse scan points");
    sub->add_option("--rho0", f.rho0, "initial state: excited1|excited2|plus|minus|ground");
    sub->add_option("--out", f.out, "output path (prefix for multi-file tasks)");
    sub->add_option("--format", f.format, "csv|json");
    sub->add_option("--cache-dir", f.cache_dir, "exact-reference cache directory");
}

RunConfig build_config(const CLI::App* sub, const Flags& f, const std::string& task) {
    nlohmann::json doc = f.config_path.empty() ? nlohmann::json::object()
                                               : load_json(f.config_path);
    doc["task"] = task;
    if (task == "dephasing") doc["model"] = "twolevel";

    auto set = [&](const char* opt, auto&& apply) {
        if (sub->count(opt)) apply();
    };
    set("--omega1", [&] { doc["system"]["omega1"] = f.omega1; });
    set("--omega2", [&] { doc["system"]["omega2"] = f.omega2; });
    set("--omega0", [&] { doc["system"]["omega0"] = f.omega0; });
    set("--g", [&] { doc["bath"]["g"] = f.g; });
    set("--eta", [&] { doc["bath"]["eta"] = f.eta; });
    set("--omega-c", [&] { doc["bath"]["omega_c"] = f.omega_c; });
    set("--beta", [&] {
        if (f.beta_str == "inf" || f.beta_str == "infinity") {
            doc["bath"]["beta"] = "inf";
        } else {
            try {
                std::size_t used = 0;
                const double v = std::stod(f.beta_str, &used);
                if (used != f.beta_str.size()) throw std::invalid_argument(f.beta_str);
                doc["bath"]["beta"] = v;
            } catch (const std::exception&) {
                throw cgsme::ConfigError("--beta must be a number or 'inf'");
            }
        }
    });
    set("--dt", [&] { doc["dt"] = f.dt; });
    set("--rates", [&] { doc["rates"] = f.rates; });
    set("--t-max", [&] { doc["solver"]["t_max"] = f.t_max; });
    set("--step", [&] { doc["solver"]["step"] = f.step; });
    set("--scheme", [&] { doc["solver"]["scheme"] = f.scheme; });
    set("--subsample", [&] { doc["solver"]["subsample"] = f.subsample; });
    set("--lo", [&] { doc["search"]["lo"] = f.lo; });
    set("--hi", [&] { doc["search"]["hi"] = f.hi; });
    set("--n-grid", [&] { doc["search"]["n_grid"] = f.n_grid; });
    set("--rho0", [&] { doc["rho0"] = f.rho0; });
    set("--out", [&] { doc["output"]["path"] = f.out; });
    set("--format", [&] { doc["output"]["format"] = f.format; });
    set("--cache-dir", [&] { doc["output"]["cache_dir"] = f.cache_dir; });
    return cgsme::config_from_json(doc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cgsme — coarse-grained vs rotating-wave master equations for a "
                 "V-type three-level system"};
    app.require_subcommand(1);

    const std::vector<std::string> tasks = {"exact",    "cg",         "rwa",      "compare",
                                            "optimize", "rates-scan", "dephasing"};
    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App*> subs;
    for (const auto& t : tasks) {
        CLI::App* sub = app.add_subcommand(t, t + " task");
        add_common_flags(sub, flags[t]);
        subs[t] = sub;
    }

    Flags validate_flags;
    CLI::App* validate_sub = app.add_subcommand("validate", "check a config and report issues");
    add_common_flags(validate_sub, validate_flags);
    std::string validate_task = "exact";
    validate_sub->add_option("--task", validate_task, "task the config is meant for");

    Flags sweep_flags;
    int sweep_jobs = 0;
    CLI::App* sweep_sub = app.add_subcommand("sweep", "fan out runs from a sweep config");
    sweep_sub->add_option("--config", sweep_flags.config_path, "sweep JSON file")->required();
    sweep_sub->add_option("--jobs", sweep_jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_sub->parsed()) {
            const RunConfig cfg = build_config(validate_sub, validate_flags, validate_task);
            const auto rep = cgsme::validate(cfg);
            for (const auto& e : rep.errors) std::cout << "error: " << e << '\n';
            for (const auto& w : rep.warnings) std::cout << "warning: " << w << '\n';
            if (!rep.ok()) return 2;
            std::cout << "ok\n";
            return 0;
        }
        if (sweep_sub->parsed()) {
            const auto files = cgsme::run_sweep(load_json(sweep_flags.config_path), sweep_jobs);
            for (const auto& fpath : files) std::cout << fpath << '\n';
            return 0;
        }
        for (const auto& t : tasks) {
            if (!subs[t]->parsed()) continue;
            const RunConfig cfg = build_config(subs[t], flags[t], t);
            for (const auto& w : cgsme::validate(cfg).warnings)
                std::cerr << "warning: " << w << '\n';
            const auto files = cgsme::run(cfg);
            for (const auto& fpath : files) std::cout << fpath << '\n';
            return 0;
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const cgsme::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
