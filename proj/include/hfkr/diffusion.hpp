#pragma once

// Perturbation experiments: hash an original and a locally perturbed walk,
// then measure how the difference spreads over the digest bits.

#include <hfkr/bit_matrix.hpp>
#include <hfkr/errors.hpp>
#include <hfkr/keygen.hpp>
#include <hfkr/philox.hpp>
#include <hfkr/stats.hpp>
#include <hfkr/walk.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace hfkr {

enum class perturbation_mode {
    point_nudge,  ///< shift one point, leave the rest of the path untouched
    re_evolve,    ///< shift one point and replay the remaining steps from it
};

struct perturbation_spec {
    std::int64_t position = 1;
    perturbation_mode mode = perturbation_mode::point_nudge;
    lattice_point nudge{1, 0};
};

inline trajectory perturb(const trajectory& t, const perturbation_spec& spec) {
    const auto last = static_cast<std::int64_t>(t.points.size()) - 1;
    if (spec.position < 1 || spec.position >= last)
        throw invalid_position("perturbation position " + std::to_string(spec.position) +
                               " is not interior to a path of " + std::to_string(last + 1) + " points");
    trajectory out = t;
    auto& p = out.points[static_cast<std::size_t>(spec.position)];
    p.x += spec.nudge.x;
    p.y += spec.nudge.y;
    if (spec.mode == perturbation_mode::re_evolve) evolve_from(out.config, out.points, spec.position + 1);
    return out;
}

/// Byte-level Shannon entropy in bits per byte.
inline double shannon_entropy(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) throw error("entropy of an empty byte string");
    std::array<std::uint64_t, 256> histogram{};
    for (const auto b : bytes) ++histogram[b];
    const auto n = static_cast<double>(bytes.size());
    double h = 0.0;
    for (const auto count : histogram) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h;
}

inline double shannon_entropy(const digest& d) { return shannon_entropy(d.bytes); }

inline std::vector<std::uint8_t> flip_vector(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw error("flip vector of digests with different lengths");
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

inline std::int64_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw error("hamming distance of digests with different lengths");
    std::int64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(static_cast<std::uint8_t>(a[i] ^ b[i]));
    return n;
}

struct trial_record {
    std::int64_t trial_id = 0;
    std::int64_t position = 0;
    hash_alg alg = hash_alg::sha3_512();
    std::int64_t hamming = 0;
    double bitflip_rate = 0.0;
    double delta_entropy = 0.0;  ///< H(perturbed) - H(original), bits/byte
    std::vector<std::uint8_t> flip_vector;
};

struct trial_set {
    std::vector<trial_record> records;
    bit_matrix matrix;
};

/// Five evenly spaced interior offsets ceil(n/6) * k, k = 1..5, dropping any
/// that fall outside [1, n-1].
inline std::vector<std::int64_t> default_positions(std::int64_t n) {
    const std::int64_t stride = (n + 5) / 6;
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; k <= 5; ++k) {
        const auto p = stride * k;
        if (p >= 1 && p <= n - 1 && (out.empty() || out.back() != p)) out.push_back(p);
    }
    if (out.empty()) throw config_error("n", "walk too short for an interior perturbation (need n >= 2)");
    return out;
}

/// Seed of trial `trial` at perturbation offset `position`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::int64_t position, std::int64_t trial) {
    return derive_seed(seed, substream::trial_seed, static_cast<std::uint64_t>(position),
                       static_cast<std::uint64_t>(trial));
}

inline trial_record run_trial(const walk_config& base, const hash_alg& alg, std::int64_t position,
                              std::int64_t trial, const perturbation_spec& shape) {
    walk_config c = base;
    c.seed = trial_seed(base.seed, position, trial);
    const auto original = generate_walk(c);
    perturbation_spec spec = shape;
    spec.position = position;
    const auto perturbed = perturb(original, spec);

    const auto k0 = derive_key(original, alg);
    const auto k1 = derive_key(perturbed, alg);
    trial_record r;
    r.position = position;
    r.alg = alg;
    r.flip_vector = flip_vector(k0.bytes, k1.bytes);
    r.hamming = hamming_distance(k0.bytes, k1.bytes);
    r.bitflip_rate = static_cast<double>(r.hamming) / static_cast<double>(alg.out_bits());
    r.delta_entropy = shannon_entropy(k1) - shannon_entropy(k0);
    return r;
}

/// Runs positions x trials_per_position independent trials.
///
/// Row order is position-major in the order given, then trial index; each
/// row depends only on (config, alg, position, trial), so the result is the
/// same for any `threads` value. `threads == 0` uses the hardware concurrency.
inline trial_set run_trials(const walk_config& config, const hash_alg& alg, std::span<const std::int64_t> positions,
                            std::int64_t trials_per_position, const perturbation_spec& shape = {},
                            unsigned threads = 0) {
    validate(config);
    if (positions.empty()) throw config_error("positions", "at least one perturbation position is required");
    if (trials_per_position < 1) throw config_error("trials", "trials per position must be >= 1");
    for (const auto p : positions)
        if (p < 1 || p >= config.n)
            throw invalid_position("perturbation position " + std::to_string(p) + " is not in [1, n-1]");

    const std::size_t per = static_cast<std::size_t>(trials_per_position);
    const std::size_t total = positions.size() * per;
    std::vector<trial_record> records(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t row; (row = next.fetch_add(1)) < total;) {
            try {
                records[row] = run_trial(config, alg, positions[row / per], static_cast<std::int64_t>(row % per), shape);
                records[row].trial_id = static_cast<std::int64_t>(row);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    trial_set out{std::move(records), bit_matrix(total, alg.out_bits())};
    for (std::size_t r = 0; r < total; ++r) out.matrix.set_row(r, out.records[r].flip_vector);
    return out;
}

struct avalanche_summary {
    hash_alg alg = hash_alg::sha3_512();
    std::int64_t trials = 0;
    double mean_hamming = 0.0;
    double mean_bitflip_rate = 0.0;
    double sd_bitflip_rate = 0.0;  ///< sample standard deviation across trials
    double mean_delta_entropy = 0.0;
    double mean_abs_delta_entropy = 0.0;
    /// Absent when no bit flipped in any trial.
    std::optional<chi_square_result> chi_square_table1;
    std::optional<chi_square_result> chi_square_bernoulli;
};

inline avalanche_summary summarize(const trial_set& set) {
    if (set.records.empty()) throw degenerate_input("no trials to summarize");
    avalanche_summary s;
    s.alg = set.records.front().alg;
    s.trials = static_cast<std::int64_t>(set.records.size());
    const auto n = static_cast<double>(s.trials);
    std::int64_t hamming_total = 0;
    for (const auto& r : set.records) {
        hamming_total += r.hamming;
        s.mean_delta_entropy += r.delta_entropy;
        s.mean_abs_delta_entropy += std::abs(r.delta_entropy);
    }
    s.mean_hamming = static_cast<double>(hamming_total) / n;
    s.mean_bitflip_rate = s.mean_hamming / static_cast<double>(s.alg.out_bits());
    s.mean_delta_entropy /= n;
    s.mean_abs_delta_entropy /= n;
    if (s.trials > 1) {
        double ss = 0.0;
        for (const auto& r : set.records) ss += (r.bitflip_rate - s.mean_bitflip_rate) * (r.bitflip_rate - s.mean_bitflip_rate);
        s.sd_bitflip_rate = std::sqrt(ss / (n - 1.0));
    }
    if (set.matrix.popcount() > 0) {
        s.chi_square_table1 = chi_square_uniform(set.matrix, chi_square_mode::table_one);
        s.chi_square_bernoulli = chi_square_uniform(set.matrix, chi_square_mode::bernoulli);
    }
    return s;
}

}  // namespace hfkr
