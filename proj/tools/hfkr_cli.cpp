// hfkr: key generation from chaotic lattice walks, plus the fractal and
// avalanche experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <hfkr/hfkr.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_config = 2;
constexpr int exit_runtime = 3;

struct flag {
    const char* name;  ///< long flag, also the config key with '-' -> '_'
    const char* help;
};

// Walk parameters shared by every command.
const std::vector<flag> walk_flags{
    {"n", "trajectory length in steps (n >= 1)"},
    {"x0-x", "initial point, x coordinate"},
    {"x0-y", "initial point, y coordinate"},
    {"rho-min", "lower end of the contraction band"},
    {"rho-max", "upper end of the contraction band (< 1)"},
    {"b-min", "lower translation bound"},
    {"b-max", "upper translation bound"},
    {"epsilon", "noise bound"},
    {"map-mode", "fresh | fixed"},
    {"map-count", "number of maps m in fixed mode"},
};

std::string config_key(std::string_view flag_name) {
    std::string key(flag_name);
    for (char& ch : key)
        if (ch == '-') ch = '_';
    return key;
}

// Raw flag text keyed by config key, plus every registered option so that
// only flags actually given on the command line override the config file.
struct flag_values {
    std::map<std::string, std::string> text;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    void add(CLI::App& app, const char* name, const char* help) {
        const auto key = config_key(name);
        options.emplace_back(key, app.add_option(std::string("--") + name, text[key], help));
    }

    void add(CLI::App& app, const std::vector<flag>& flags) {
        for (const auto& f : flags) add(app, f.name, f.help);
    }
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hfkr::config_error("config", "cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hashed fractal key recovery: chaotic lattice walks, keys and diffusion experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hfkr::tool_version));

    flag_values values;
    std::string config_path;
    values.add(app, "seed", "64-bit seed for every random draw");
    app.add_option("--config", config_path, "flat key = value settings file; flags override it");
    values.add(app, "output-dir", "directory for report files");
    values.add(app, "format", "comma list of json, csv");
    values.add(app, "threads", "worker threads for trials (0 = all cores)");

    struct sub {
        hfkr::command cmd;
        CLI::App* app;
    };
    std::vector<sub> subs;

    auto* keygen = app.add_subcommand("keygen", "derive a key from one walk and print it as hex");
    values.add(*keygen, walk_flags);
    values.add(*keygen, {{"alg", "sha3-512 | shake256[:bytes] | blake3[:bytes]"}, {"out-len", "digest bytes for XOFs"}});
    subs.push_back({hfkr::command::keygen, keygen});

    auto* walk = app.add_subcommand("walk", "write a trajectory CSV and its geometry report");
    values.add(*walk, walk_flags);
    subs.push_back({hfkr::command::walk, walk});

    auto* fractal = app.add_subcommand("fractal", "box-counting dimension over several lengths and seeds");
    values.add(*fractal, walk_flags);
    values.add(*fractal,
               {{"ns", "comma list of trajectory lengths"},
                {"seeds", "walks per length"},
                {"synthetic", "none | point | line | square: analyse a reference set instead"}});
    subs.push_back({hfkr::command::fractal, fractal});

    auto* avalanche = app.add_subcommand("avalanche", "perturbation trials: Hamming, bit-flip, entropy, chi-square");
    values.add(*avalanche, walk_flags);
    values.add(*avalanche,
               {{"alg", "comma list of hash algorithms"},
                {"out-len", "digest bytes for XOFs without an explicit length"},
                {"positions", "auto or comma list of interior indices"},
                {"trials", "trials per position"},
                {"perturb-mode", "nudge | reevolve"},
                {"nudge-x", "perturbation offset, x"},
                {"nudge-y", "perturbation offset, y"}});
    subs.push_back({hfkr::command::avalanche, avalanche});

    for (auto& s : subs) s.app->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    hfkr::command cmd{};
    for (const auto& s : subs)
        if (s.app->parsed()) cmd = s.cmd;

    hfkr::experiment_config config;
    try {
        config = hfkr::default_config(cmd);
        if (!config_path.empty())
            for (const auto& [key, value] : hfkr::parse_config_text(read_file(config_path)))
                hfkr::apply_setting(config, key, value);
        for (const auto& [key, option] : values.options)
            if (option->count() > 0) hfkr::apply_setting(config, key, values.text.at(key));
        hfkr::validate(config, cmd);
    } catch (const hfkr::config_error& e) {
        std::cerr << "hfkr: " << e.what() << "\n";
        return exit_config;
    }

    try {
        const auto out = hfkr::run_command(cmd, config);
        for (const auto& [name, contents] : out.files)
            hfkr::write_file_atomic(std::filesystem::path(config.output_dir) / name, contents);
        std::cout << out.stdout_text;
    } catch (const hfkr::config_error& e) {
        std::cerr << "hfkr: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "hfkr: " << e.what() << "\n";
        return exit_runtime;
    }
    return 0;
}
