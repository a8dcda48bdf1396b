// io.cpp

#include "cgsme/io.hpp"

#include <charconv>
#include <fstream>

#include "cgsme/errors.hpp"

namespace cgsme::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io: cannot open output file " + path);
    return out;
}

void write_header(std::ofstream& out, const Provenance& prov) {
    for (const auto& line : prov.header_lines()) out << line << '\n';
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> Provenance::header_lines() const {
    return {
        "# tool: " + (tool.empty() ? std::string("cgsme") : tool),
        "# config: " + config.dump(),
        "# grid: " + grid_hash,
    };
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "t,rho00,rho11,rho22,re_rho01,im_rho01,re_rho02,im_rho02,re_rho12,im_rho12\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& r = traj.states[i];
        out << format_double(traj.times[i]) << ',' << format_double(r(0, 0).real()) << ','
            << format_double(r(1, 1).real()) << ',' << format_double(r(2, 2).real()) << ','
            << format_double(r(0, 1).real()) << ',' << format_double(r(0, 1).imag()) << ','
            << format_double(r(0, 2).real()) << ',' << format_double(r(0, 2).imag()) << ','
            << format_double(r(1, 2).real()) << ',' << format_double(r(1, 2).imag()) << '\n';
    }
}

void write_distance_csv(const std::string& path, const std::vector<double>& times,
                        const std::vector<double>& d_cg, const std::vector<double>& d_rwa,
                        const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "t,dist_cg,dist_rwa\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        out << format_double(times[i]) << ',' << format_double(d_cg[i]) << ','
            << format_double(d_rwa[i]) << '\n';
}

void write_rate_scan_csv(const std::string& path, const std::vector<RateScanPoint>& scan,
                         const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "dt";
    const char* names[2][2] = {{"11", "12"}, {"21", "22"}};
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            out << ",re_gamma" << names[j][l] << ",im_gamma" << names[j][l];
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) out << ",re_s" << names[j][l] << ",im_s" << names[j][l];
    out << '\n';
    for (const auto& row : scan) {
        out << format_double(row.dt);
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                out << ',' << format_double(row.gamma(j, l).real()) << ','
                    << format_double(row.gamma(j, l).imag());
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                out << ',' << format_double(row.lamb(j, l).real()) << ','
                    << format_double(row.lamb(j, l).imag());
        out << '\n';
    }
}

void write_objective_scan_csv(const std::string& path, const std::vector<ScanRow>& scan,
                              const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "dt,objective,rwa_objective\n";
    for (const auto& row : scan)
        out << format_double(row.dt) << ',' << format_double(row.objective) << ','
            << format_double(row.rwa_objective) << '\n';
}

void write_dephasing_csv(const std::string& path, const std::vector<DephasingRow>& rows,
                         const Provenance& prov) {
    auto out = open_out(path);
    write_header(out, prov);
    out << "t,gamma_exact,gamma_cg,gamma_rwa,abs_rho12\n";
    for (const auto& r : rows)
        out << format_double(r.t) << ',' << format_double(r.gamma_exact) << ','
            << format_double(r.gamma_cg) << ',' << format_double(r.gamma_rwa) << ','
            << format_double(r.abs_rho12) << '\n';
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& r = traj.states[i];
        rows.push_back({traj.times[i], r(0, 0).real(), r(1, 1).real(), r(2, 2).real(),
                        r(0, 1).real(), r(0, 1).imag(), r(0, 2).real(), r(0, 2).imag(),
                        r(1, 2).real(), r(1, 2).imag()});
    }
    return {{"columns",
             {"t", "rho00", "rho11", "rho22", "re_rho01", "im_rho01", "re_rho02", "im_rho02",
              "re_rho12", "im_rho12"}},
            {"picture", traj.picture == Picture::interaction ? "interaction" : "schroedinger"},
            {"data", rows}};
}

void write_json(const std::string& path, const nlohmann::json& doc, const Provenance& prov) {
    auto out = open_out(path);
    nlohmann::json wrapped = doc;
    wrapped["meta"] = {{"tool", prov.tool}, {"config", prov.config}, {"grid", prov.grid_hash}};
    out << wrapped.dump(2) << '\n';
}

nlohmann::json read_config_echo(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io: cannot open " + path);
    std::string line;
    const std::string tag = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind(tag, 0) == 0) return nlohmann::json::parse(line.substr(tag.size()));
        if (!line.empty() && line[0] != '#') break;
    }
    throw Error("io: no config echo found in " + path);
}

} // namespace cgsme::io
