// io.hpp — CSV/JSON artifact writers with provenance headers and
// shortest-round-trip number formatting (outputs are byte-stable for a
// fixed config and platform).

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cgsme/analysis.hpp"
#include "cgsme/model.hpp"
#include "cgsme/rates.hpp"

namespace cgsme::io {

std::string format_double(double v); // shortest decimal that round-trips

// Provenance block prepended to every artifact: tool version, the full
// config echo as compact JSON, and the grid hash.
struct Provenance {
    std::string tool;
    nlohmann::json config;
    std::string grid_hash;

    std::vector<std::string> header_lines() const;
};

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const Provenance& prov);
void write_distance_csv(const std::string& path, const std::vector<double>& times,
                        const std::vector<double>& d_cg, const std::vector<double>& d_rwa,
                        const Provenance& prov);
void write_rate_scan_csv(const std::string& path, const std::vector<RateScanPoint>& scan,
                         const Provenance& prov);
void write_objective_scan_csv(const std::string& path, const std::vector<ScanRow>& scan,
                              const Provenance& prov);

struct DephasingRow {
    double t;
    double gamma_exact;
    double gamma_cg;
    double gamma_rwa;
    double abs_rho12;
};
void write_dephasing_csv(const std::string& path, const std::vector<DephasingRow>& rows,
                         const Provenance& prov);

nlohmann::json trajectory_to_json(const Trajectory& traj);
void write_json(const std::string& path, const nlohmann::json& doc, const Provenance& prov);

// Reads the "# config: {...}" echo back out of a CSV artifact.
nlohmann::json read_config_echo(const std::string& path);

} // namespace cgsme::io
