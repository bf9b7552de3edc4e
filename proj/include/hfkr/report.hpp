#pragma once

// JSON and CSV renderings of results, and atomic file output.

#include <hfkr/diffusion.hpp>
#include <hfkr/fractal.hpp>
#include <hfkr/keygen.hpp>
#include <hfkr/stats.hpp>
#include <hfkr/walk.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace hfkr {

using json = nlohmann::ordered_json;

#ifndef HFKR_VERSION
#define HFKR_VERSION "0.0.0"
#endif

inline constexpr std::string_view tool_version = HFKR_VERSION;

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline std::string_view to_string(map_mode m) noexcept {
    return m == map_mode::per_step_fresh ? "fresh" : "fixed";
}

inline std::string_view to_string(perturbation_mode m) noexcept {
    return m == perturbation_mode::point_nudge ? "nudge" : "reevolve";
}

inline json to_json(const lattice_point& p) { return json::array({p.x, p.y}); }

inline json to_json(const walk_config& c) {
    json j;
    j["x0"] = to_json(c.x0);
    j["rho_min"] = c.rho_min;
    j["rho_max"] = c.rho_max;
    j["b_min"] = c.b_min;
    j["b_max"] = c.b_max;
    j["epsilon"] = c.epsilon;
    j["n"] = c.n;
    j["seed"] = c.seed;
    j["map_mode"] = to_string(c.mode);
    j["map_count"] = c.map_count;
    return j;
}

inline json to_json(const geometry_report& g) {
    json j;
    j["total_path_length"] = g.total_path_length;
    j["bbox_width"] = g.bbox_width;
    j["bbox_height"] = g.bbox_height;
    j["unique_points"] = g.unique_points;
    j["density"] = g.density;
    return j;
}

inline json to_json(const dimension_estimate& d) {
    json j;
    j["box_sizes"] = d.box_sizes;
    j["counts"] = d.counts;
    j["dimension"] = d.dimension;
    j["r_squared"] = d.r_squared;
    j["degenerate"] = d.degenerate;
    return j;
}

inline json to_json(const chi_square_result& r) {
    json j;
    j["mode"] = to_string(r.mode);
    j["statistic"] = r.statistic;
    j["dof"] = r.dof;
    j["p_value"] = r.p_value;
    j["per_bit_flip_counts"] = r.per_bit_flip_counts;
    return j;
}

inline json to_json(const avalanche_summary& s) {
    json j;
    j["alg"] = s.alg.label();
    j["digest_bits"] = s.alg.out_bits();
    j["trials"] = s.trials;
    j["mean_hamming"] = s.mean_hamming;
    j["mean_bitflip_rate"] = s.mean_bitflip_rate;
    j["sd_bitflip_rate"] = s.sd_bitflip_rate;
    j["mean_delta_entropy"] = s.mean_delta_entropy;
    j["mean_abs_delta_entropy"] = s.mean_abs_delta_entropy;
    j["chi_square_table1"] = s.chi_square_table1 ? to_json(*s.chi_square_table1) : json(nullptr);
    j["chi_square_bernoulli"] = s.chi_square_bernoulli ? to_json(*s.chi_square_bernoulli) : json(nullptr);
    // Observed-mean expectation puts the statistic near dof / 2 under ideal
    // avalanche, well below the dof a Bernoulli(1/2) model implies.
    if (s.chi_square_table1)
        j["table1_statistic_below_dof"] =
            s.chi_square_table1->statistic < 0.75 * static_cast<double>(s.chi_square_table1->dof);
    return j;
}

/// `index,x,y` with a header row and LF line endings.
inline std::string trajectory_csv(const trajectory& t) {
    std::string out = "index,x,y\n";
    for (std::size_t i = 0; i < t.points.size(); ++i)
        out += std::to_string(i) + "," + std::to_string(t.points[i].x) + "," + std::to_string(t.points[i].y) + "\n";
    return out;
}

/// Parses the output of trajectory_csv back into points.
inline std::vector<lattice_point> parse_trajectory_csv(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    std::string line;
    if (!std::getline(in, line) || line != "index,x,y") throw error("trajectory CSV lacks its header row");
    std::vector<lattice_point> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        long long index = 0, x = 0, y = 0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lld,%lld,%lld%c", &index, &x, &y, &tail) != 3 ||
            index != static_cast<long long>(points.size()))
            throw error("malformed trajectory CSV row: " + line);
        points.push_back({x, y});
    }
    return points;
}

/// One row per trial: trial_id,position,alg,hamming,bitflip_rate,delta_entropy,flip_vector(hex).
inline std::string trials_csv(const trial_set& set) {
    std::string out = "trial_id,position,alg,hamming,bitflip_rate,delta_entropy,flip_vector\n";
    for (const auto& r : set.records) {
        out += std::to_string(r.trial_id) + "," + std::to_string(r.position) + "," + r.alg.label() + "," +
               std::to_string(r.hamming) + "," + format_double(r.bitflip_rate) + "," +
               format_double(r.delta_entropy) + "," + to_hex(r.flip_vector) + "\n";
    }
    return out;
}

inline std::string bit_matrix_bytes(const bit_matrix& m) {
    std::ostringstream out(std::ios::binary);
    write_bit_matrix(out, m);
    return std::move(out).str();
}

/// Writes `contents` to `path` through a temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hfkr
