#pragma once

// Experiment configuration shared by the command-line front end.
//
// Settings come from a flat text file of `key = value` lines (`#` starts a
// comment) and from command-line flags; flags win. Every value goes through
// apply_setting(), so both sources get identical parsing and validation.

#include <hfkr/diffusion.hpp>
#include <hfkr/errors.hpp>
#include <hfkr/keygen.hpp>
#include <hfkr/report.hpp>
#include <hfkr/walk.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hfkr {

enum class command { keygen, walk, fractal, avalanche };

/// Point sets with a known dimension, fed to the fractal command instead of a walk.
enum class synthetic_input { none, point, line, square };

struct experiment_config {
    walk_config walk;
    std::vector<std::string> algs{"sha3-512"};
    std::optional<std::size_t> out_len;
    std::optional<std::vector<std::int64_t>> positions;  ///< empty optional means "auto"
    std::int64_t trials = 50;                            ///< per position
    perturbation_mode perturb = perturbation_mode::point_nudge;
    lattice_point nudge{1, 0};
    std::string output_dir = "hfkr-out";
    bool emit_json = true;
    bool emit_csv = true;
    std::vector<std::int64_t> ns{128, 500, 2000, 5000};
    std::int64_t seeds = 20;
    synthetic_input synthetic = synthetic_input::none;
    unsigned threads = 0;
};

inline experiment_config default_config(command cmd) {
    experiment_config c;
    if (cmd == command::avalanche) {
        c.walk.n = 2000;
        c.algs = {"sha3-512", "shake256:64", "blake3:32", "blake3:64"};
    }
    return c;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw config_error(std::string(key), "cannot parse '" + std::string(text) + "' as a number");
    return v;
}

inline std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

inline std::vector<std::int64_t> parse_int_list(std::string_view key, std::string_view text) {
    std::vector<std::int64_t> out;
    for (const auto item : split_list(text)) out.push_back(parse_number<std::int64_t>(key, item));
    if (out.empty()) throw config_error(std::string(key), "list is empty");
    return out;
}

}  // namespace detail

inline void apply_setting(experiment_config& c, std::string_view key, std::string_view raw) {
    using detail::parse_number;
    const std::string_view value = detail::trim(raw);
    const std::string k(key);
    if (key == "seed") c.walk.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "n") c.walk.n = parse_number<std::int64_t>(key, value);
    else if (key == "x0_x") c.walk.x0.x = parse_number<std::int64_t>(key, value);
    else if (key == "x0_y") c.walk.x0.y = parse_number<std::int64_t>(key, value);
    else if (key == "rho_min") c.walk.rho_min = parse_number<double>(key, value);
    else if (key == "rho_max") c.walk.rho_max = parse_number<double>(key, value);
    else if (key == "b_min") c.walk.b_min = parse_number<double>(key, value);
    else if (key == "b_max") c.walk.b_max = parse_number<double>(key, value);
    else if (key == "epsilon") c.walk.epsilon = parse_number<double>(key, value);
    else if (key == "map_mode") {
        if (value == "fresh") c.walk.mode = map_mode::per_step_fresh;
        else if (value == "fixed") c.walk.mode = map_mode::fixed_set;
        else throw config_error(k, "expected 'fresh' or 'fixed'");
    } else if (key == "map_count") c.walk.map_count = parse_number<std::int64_t>(key, value);
    else if (key == "alg") {
        c.algs.clear();
        for (const auto item : detail::split_list(value)) c.algs.emplace_back(item);
        if (c.algs.empty()) throw config_error(k, "at least one hash algorithm is required");
    } else if (key == "out_len") c.out_len = parse_number<std::size_t>(key, value);
    else if (key == "positions") {
        if (value == "auto") c.positions.reset();
        else c.positions = detail::parse_int_list(key, value);
    } else if (key == "trials") c.trials = parse_number<std::int64_t>(key, value);
    else if (key == "perturb_mode") {
        if (value == "nudge") c.perturb = perturbation_mode::point_nudge;
        else if (value == "reevolve") c.perturb = perturbation_mode::re_evolve;
        else throw config_error(k, "expected 'nudge' or 'reevolve'");
    } else if (key == "nudge_x") c.nudge.x = parse_number<std::int64_t>(key, value);
    else if (key == "nudge_y") c.nudge.y = parse_number<std::int64_t>(key, value);
    else if (key == "ns") c.ns = detail::parse_int_list(key, value);
    else if (key == "seeds") c.seeds = parse_number<std::int64_t>(key, value);
    else if (key == "synthetic") {
        if (value == "none") c.synthetic = synthetic_input::none;
        else if (value == "point") c.synthetic = synthetic_input::point;
        else if (value == "line") c.synthetic = synthetic_input::line;
        else if (value == "square") c.synthetic = synthetic_input::square;
        else throw config_error(k, "expected none, point, line or square");
    } else if (key == "format") {
        c.emit_json = c.emit_csv = false;
        for (const auto item : detail::split_list(value)) {
            if (item == "json") c.emit_json = true;
            else if (item == "csv") c.emit_csv = true;
            else throw config_error(k, "unknown format '" + std::string(item) + "' (expected json, csv)");
        }
        if (!c.emit_json && !c.emit_csv) throw config_error(k, "at least one output format is required");
    } else if (key == "output_dir") {
        if (value.empty()) throw config_error(k, "must not be empty");
        c.output_dir = std::string(value);
    } else if (key == "threads") c.threads = parse_number<unsigned>(key, value);
    else throw config_error(k, "unknown setting");
}

/// Parses `key = value` lines. Blank lines and `#` comments are ignored.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("config", "line " + std::to_string(line_no) + " is not of the form key = value");
        out.emplace_back(std::string(detail::trim(line.substr(0, eq))), std::string(detail::trim(line.substr(eq + 1))));
    }
    return out;
}

/// The configured algorithms; `out_len`, when set, applies to entries without
/// an explicit ":<bytes>" suffix.
inline std::vector<hash_alg> resolve_algs(const experiment_config& c) {
    std::vector<hash_alg> out;
    for (const auto& spec : c.algs) {
        if (c.out_len && spec.find(':') == std::string::npos)
            out.push_back(hash_alg::parse(spec + ":" + std::to_string(*c.out_len)));
        else
            out.push_back(hash_alg::parse(spec));
    }
    return out;
}

inline void validate(const experiment_config& c, command cmd) {
    validate(c.walk);
    (void)resolve_algs(c);
    if (cmd == command::keygen && c.algs.size() != 1) throw config_error("alg", "keygen takes exactly one algorithm");
    if (cmd == command::avalanche) {
        if (c.trials < 1) throw config_error("trials", "trials per position must be >= 1");
        const auto positions = c.positions ? *c.positions : default_positions(c.walk.n);
        for (const auto p : positions)
            if (p < 1 || p >= c.walk.n)
                throw config_error("positions", "position " + std::to_string(p) + " is not in [1, n-1]");
    }
    if (cmd == command::fractal) {
        if (c.seeds < 1) throw config_error("seeds", "must be >= 1");
        for (const auto n : c.ns)
            if (n < 1) throw config_error("ns", "trajectory length must satisfy n >= 1");
    }
}

/// Effective configuration as recorded in reports. Output location and
/// thread count are left out: they do not influence any result.
inline json echo(const experiment_config& c, command cmd) {
    json j;
    j["walk"] = to_json(c.walk);
    if (cmd == command::fractal) j["walk"].erase("n");
    if (cmd != command::walk && cmd != command::fractal) {
        json algs = json::array();
        for (const auto& a : resolve_algs(c)) algs.push_back(a.label());
        j["algs"] = algs;
    }
    if (cmd == command::avalanche) {
        j["positions"] = c.positions ? *c.positions : default_positions(c.walk.n);
        j["trials_per_position"] = c.trials;
        j["perturb_mode"] = to_string(c.perturb);
        j["nudge"] = to_json(c.nudge);
    }
    if (cmd == command::fractal) {
        j["ns"] = c.ns;
        j["seeds"] = c.seeds;
        static constexpr std::array<std::string_view, 4> names{"none", "point", "line", "square"};
        j["synthetic"] = names[static_cast<std::size_t>(c.synthetic)];
    }
    return j;
}

}  // namespace hfkr
