#pragma once

// The four experiment drivers behind the command-line tool. Each returns the
// text for stdout plus the files to write, so callers decide where output goes.

#include <hfkr/config.hpp>
#include <hfkr/diffusion.hpp>
#include <hfkr/fractal.hpp>
#include <hfkr/keygen.hpp>
#include <hfkr/report.hpp>
#include <hfkr/stats.hpp>
#include <hfkr/walk.hpp>

#include <string>
#include <utility>
#include <vector>

namespace hfkr {

struct run_output {
    std::string stdout_text;
    std::vector<std::pair<std::string, std::string>> files;  ///< relative name, contents
};

namespace detail {

inline json report_header(std::string_view command_name, const experiment_config& c, command cmd) {
    json j;
    j["tool"] = "hfkr";
    j["version"] = tool_version;
    j["command"] = command_name;
    j["config"] = echo(c, cmd);
    return j;
}

inline std::string file_label(const hash_alg& alg) { return std::string(alg.name()) + "-" + std::to_string(alg.out_len()); }

inline std::vector<lattice_point> synthetic_points(synthetic_input kind) {
    std::vector<lattice_point> pts;
    switch (kind) {
        case synthetic_input::point:
            pts.assign(16, lattice_point{0, 0});
            break;
        case synthetic_input::line:
            for (std::int64_t i = 0; i < 1024; ++i) pts.push_back({i, 0});
            break;
        case synthetic_input::square:
            for (std::int64_t y = 0; y < 256; ++y)
                for (std::int64_t x = 0; x < 256; ++x) pts.push_back({x, y});
            break;
        case synthetic_input::none:
            break;
    }
    return pts;
}

}  // namespace detail

inline run_output run_keygen(const experiment_config& c) {
    validate(c, command::keygen);
    const auto alg = resolve_algs(c).front();
    const auto key = to_hex(derive_key(generate_walk(c.walk), alg));
    run_output out{key + "\n", {}};
    if (c.emit_json) {
        auto j = detail::report_header("keygen", c, command::keygen);
        j["alg"] = alg.label();
        j["key"] = key;
        out.files.emplace_back("keygen.json", dump(j));
    }
    return out;
}

inline run_output run_walk(const experiment_config& c) {
    validate(c, command::walk);
    const auto t = generate_walk(c.walk);
    const auto g = geometry(t);
    auto j = detail::report_header("walk", c, command::walk);
    j["geometry"] = to_json(g);
    run_output out{dump(j["geometry"]), {}};
    if (c.emit_csv) out.files.emplace_back("walk.csv", trajectory_csv(t));
    if (c.emit_json) out.files.emplace_back("geometry.json", dump(j));
    return out;
}

inline run_output run_fractal(const experiment_config& c) {
    validate(c, command::fractal);
    auto j = detail::report_header("fractal", c, command::fractal);
    std::string csv = "n,seed_index,seed,dimension,r_squared,degenerate\n";
    json summary = json::array();

    if (c.synthetic != synthetic_input::none) {
        const auto est = estimate_dimension(detail::synthetic_points(c.synthetic));
        j["estimate"] = to_json(est);
        summary.push_back({{"input", echo(c, command::fractal)["synthetic"]}, {"dimension", est.dimension},
                           {"degenerate", est.degenerate}});
        csv += "0,0,0," + format_double(est.dimension) + "," + format_double(est.r_squared) + "," +
               (est.degenerate ? "1" : "0") + "\n";
    } else {
        json runs = json::array();
        std::vector<double> medians;
        for (const auto n : c.ns) {
            json seeds = json::array();
            std::vector<double> dims;
            for (std::int64_t k = 0; k < c.seeds; ++k) {
                walk_config w = c.walk;
                w.n = n;
                w.seed = derive_seed(c.walk.seed, substream::experiment_seed, static_cast<std::uint64_t>(k));
                const auto est = estimate_dimension(generate_walk(w));
                dims.push_back(est.dimension);
                seeds.push_back({{"seed", w.seed}, {"estimate", to_json(est)}});
                csv += std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(w.seed) + "," +
                       format_double(est.dimension) + "," + format_double(est.r_squared) + "," +
                       (est.degenerate ? "1" : "0") + "\n";
            }
            medians.push_back(median(dims));
            runs.push_back({{"n", n}, {"median_dimension", medians.back()}, {"runs", seeds}});
            summary.push_back({{"n", n}, {"median_dimension", medians.back()}});
        }
        j["results"] = runs;
        j["median_non_decreasing"] = std::is_sorted(medians.begin(), medians.end());
    }
    run_output out{dump(summary), {}};
    if (c.emit_json) out.files.emplace_back("fractal.json", dump(j));
    if (c.emit_csv) out.files.emplace_back("fractal.csv", csv);
    return out;
}

inline run_output run_avalanche(const experiment_config& c) {
    validate(c, command::avalanche);
    const auto positions = c.positions ? *c.positions : default_positions(c.walk.n);
    const perturbation_spec shape{1, c.perturb, c.nudge};

    run_output out;
    auto j = detail::report_header("avalanche", c, command::avalanche);
    j["entropy_unit"] = "bits/byte (byte histogram of one digest; capped at log2(digest bytes))";
    json per_alg = json::array();
    std::string table = "alg,trials,mean_hamming,mean_bitflip_rate,mean_delta_entropy,chi2_table1,p_table1\n";
    for (const auto& alg : resolve_algs(c)) {
        const auto set = run_trials(c.walk, alg, positions, c.trials, shape, c.threads);
        const auto s = summarize(set);
        per_alg.push_back(to_json(s));
        table += alg.label() + "," + std::to_string(s.trials) + "," + format_double(s.mean_hamming) + "," +
                 format_double(s.mean_bitflip_rate) + "," + format_double(s.mean_delta_entropy) + "," +
                 (s.chi_square_table1 ? format_double(s.chi_square_table1->statistic) : "") + "," +
                 (s.chi_square_table1 ? format_double(s.chi_square_table1->p_value) : "") + "\n";
        if (c.emit_csv) out.files.emplace_back("trials_" + detail::file_label(alg) + ".csv", trials_csv(set));
        out.files.emplace_back("bitmatrix_" + detail::file_label(alg) + ".bin", bit_matrix_bytes(set.matrix));
    }
    j["results"] = per_alg;
    out.stdout_text = table;
    if (c.emit_json) out.files.emplace_back("summary.json", dump(j));
    return out;
}

inline run_output run_command(command cmd, const experiment_config& c) {
    switch (cmd) {
        case command::keygen: return run_keygen(c);
        case command::walk: return run_walk(c);
        case command::fractal: return run_fractal(c);
        case command::avalanche: return run_avalanche(c);
    }
    throw error("unknown command");
}

}  // namespace hfkr
