#pragma once

// Symbolic walks on Z^2: x_{i+1} = floor(A_i x_i + b_i + d_i) with A_i a
// random contraction, b_i a bounded translation and d_i bounded uniform noise.

#include <hfkr/errors.hpp>
#include <hfkr/philox.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hfkr {

struct lattice_point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr auto operator<=>(const lattice_point&, const lattice_point&) = default;
};

/// One realized map of the walk: matrix A, translation b and noise d.
struct affine_step {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    double b1 = 0, b2 = 0;
    double d1 = 0, d2 = 0;
};

enum class map_mode {
    per_step_fresh,  ///< new matrix and translation every step
    fixed_set,       ///< m pre-drawn maps, one chosen per step
};

struct walk_config {
    lattice_point x0{};
    double rho_min = 0.5;
    double rho_max = 0.95;
    double b_min = -10.0;
    double b_max = 10.0;
    double epsilon = 0.5;
    std::int64_t n = 128;
    std::uint64_t seed = 0;
    map_mode mode = map_mode::per_step_fresh;
    std::int64_t map_count = 1;  ///< m, used by fixed_set only

    friend bool operator==(const walk_config&, const walk_config&) = default;
};

struct trajectory {
    std::vector<lattice_point> points;
    walk_config config;
};

/// Largest |coordinate| accepted for x0. Keeps every intermediate value
/// exactly representable in a double.
inline constexpr std::int64_t max_initial_coordinate = std::int64_t{1} << 40;

/// Retry budget for near-singular matrix draws before the PRNG is declared broken.
inline constexpr int max_degenerate_draws = 64;

inline void validate(const walk_config& c) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (std::max(std::abs(c.x0.x), std::abs(c.x0.y)) > max_initial_coordinate)
        throw config_error("x0", "coordinates must lie within +-2^40");
    if (!finite(c.rho_min) || !(c.rho_min > 0.0) || !(c.rho_min < 1.0))
        throw config_error("rho_min", "must lie in (0, 1)");
    if (!finite(c.rho_max) || !(c.rho_max > 0.0) || !(c.rho_max < 1.0))
        throw config_error("rho_max", "must lie in (0, 1)");
    if (c.rho_min > c.rho_max) throw config_error("rho_min", "must not exceed rho_max");
    if (!finite(c.b_min)) throw config_error("b_min", "must be finite");
    if (!finite(c.b_max)) throw config_error("b_max", "must be finite");
    if (c.b_min > c.b_max) throw config_error("b_min", "must not exceed b_max");
    if (!finite(c.epsilon) || c.epsilon < 0.0) throw config_error("epsilon", "must be finite and >= 0");
    if (c.n < 1) throw config_error("n", "trajectory length must satisfy n >= 1");
    if (c.mode == map_mode::fixed_set && c.map_count < 1)
        throw config_error("map_count", "fixed map set needs m >= 1");
}

/// Analytic bound B on |coordinate| for every point of a walk under `c`.
///
/// With ||A||_2 <= rho_max, |b|, |d| bounded and a flooring error below one
/// per coordinate, ||x_i||_2 <= sqrt2 ||x0||_inf + sqrt2 (b + eps + 1) / (1 - rho_max).
inline std::int64_t coordinate_bound(const walk_config& c) {
    const double sqrt2 = std::sqrt(2.0);
    const double x0_inf = static_cast<double>(std::max(std::abs(c.x0.x), std::abs(c.x0.y)));
    const double b_abs = std::max(std::abs(c.b_min), std::abs(c.b_max));
    const double bound =
        std::ceil(sqrt2 * x0_inf + sqrt2 * (b_abs + c.epsilon + 1.0) / (1.0 - c.rho_max));
    if (!(bound < 0x1.0p52)) throw config_error("rho_max", "coordinate bound exceeds 2^52");
    return static_cast<std::int64_t>(bound);
}

/// Largest singular value of [[a11, a12], [a21, a22]] in closed form.
inline double spectral_norm(double a11, double a12, double a21, double a22) noexcept {
    const double p = std::hypot(a11 + a22, a21 - a12);
    const double q = std::hypot(a11 - a22, a12 + a21);
    return 0.5 * (p + q);
}

inline double spectral_norm(const affine_step& s) noexcept {
    return spectral_norm(s.a11, s.a12, s.a21, s.a22);
}

/// Draws a matrix with entries uniform in [-1, 1] and rescales it to a
/// spectral norm rho ~ U[rho_min, rho_max].
inline std::array<double, 4> sample_contraction(philox_stream& rng, double rho_min, double rho_max) {
    for (int attempt = 0; attempt < max_degenerate_draws; ++attempt) {
        std::array<double, 4> m;
        for (double& v : m) v = rng.uniform(-1.0, 1.0);
        const double sigma = spectral_norm(m[0], m[1], m[2], m[3]);
        if (sigma < 1e-12) continue;
        const double scale = rng.uniform(rho_min, rho_max) / sigma;
        for (double& v : m) v *= scale;
        return m;
    }
    throw error("random source produced 64 consecutive degenerate matrices");
}

/// Draws a complete affine step (matrix, translation, noise) from one stream.
inline affine_step sample_affine_step(philox_stream& rng, const walk_config& c) {
    const auto m = sample_contraction(rng, c.rho_min, c.rho_max);
    affine_step s{m[0], m[1], m[2], m[3]};
    s.b1 = rng.uniform(c.b_min, c.b_max);
    s.b2 = rng.uniform(c.b_min, c.b_max);
    s.d1 = rng.uniform(-c.epsilon, c.epsilon);
    s.d2 = rng.uniform(-c.epsilon, c.epsilon);
    return s;
}

/// The map used to produce point `i` (1-based) of the walk under `c`.
///
/// Depends only on (c, i): matrix, translation and noise each come from
/// their own Philox substream, so steps can be replayed in any order.
inline affine_step affine_step_at(const walk_config& c, std::uint64_t i) {
    std::uint64_t map_index = i;
    substream matrix_stream = substream::step_matrix;
    substream translation_stream = substream::step_translation;
    if (c.mode == map_mode::fixed_set) {
        philox_stream choice(c.seed, substream::map_choice, i);
        map_index = choice.below(static_cast<std::uint64_t>(c.map_count));
        matrix_stream = substream::map_table;
        translation_stream = substream::map_table;
    }

    philox_stream matrix_rng(c.seed, matrix_stream, map_index, 0);
    const auto m = sample_contraction(matrix_rng, c.rho_min, c.rho_max);
    affine_step s{m[0], m[1], m[2], m[3]};

    philox_stream translation_rng(c.seed, translation_stream, map_index, 1);
    s.b1 = translation_rng.uniform(c.b_min, c.b_max);
    s.b2 = translation_rng.uniform(c.b_min, c.b_max);

    philox_stream noise_rng(c.seed, substream::step_noise, i);
    s.d1 = noise_rng.uniform(-c.epsilon, c.epsilon);
    s.d2 = noise_rng.uniform(-c.epsilon, c.epsilon);
    return s;
}

/// floor(A x + b + d) per coordinate, evaluated as ((a*x + a*y) + b) + d in
/// double precision. Throws bounds_exceeded if a result leaves [-bound, bound].
inline lattice_point step(lattice_point x, const affine_step& s,
                          std::int64_t bound = max_initial_coordinate) {
    const double px = static_cast<double>(x.x);
    const double py = static_cast<double>(x.y);

    double vx = s.a11 * px;
    vx = vx + s.a12 * py;
    vx = vx + s.b1;
    vx = vx + s.d1;

    double vy = s.a21 * px;
    vy = vy + s.a22 * py;
    vy = vy + s.b2;
    vy = vy + s.d2;

    const double fx = std::floor(vx);
    const double fy = std::floor(vy);
    const auto limit = static_cast<double>(bound);
    if (!(std::abs(fx) <= limit) || !(std::abs(fy) <= limit))
        throw bounds_exceeded("walk left the coordinate bound +-" + std::to_string(bound));
    return {static_cast<std::int64_t>(fx), static_cast<std::int64_t>(fy)};
}

/// Replays steps first..n of `c` starting from `points[first - 1]`,
/// overwriting points[first..n]. `points` must hold n + 1 entries.
inline void evolve_from(const walk_config& c, std::vector<lattice_point>& points, std::int64_t first) {
    const std::int64_t bound = coordinate_bound(c);
    for (std::int64_t i = std::max<std::int64_t>(first, 1); i <= c.n; ++i)
        points[static_cast<std::size_t>(i)] =
            step(points[static_cast<std::size_t>(i - 1)], affine_step_at(c, static_cast<std::uint64_t>(i)), bound);
}

inline trajectory generate_walk(const walk_config& c) {
    validate(c);
    trajectory t{std::vector<lattice_point>(static_cast<std::size_t>(c.n) + 1), c};
    t.points[0] = c.x0;
    evolve_from(c, t.points, 1);
    return t;
}

/// |W_n| = m^n, the number of distinct symbol sequences of length n over m maps.
inline boost::multiprecision::cpp_int walk_space_size(std::uint64_t m, std::uint64_t n) {
    if (m < 1 || n < 1) throw config_error(m < 1 ? "m" : "n", "must be >= 1");
    if (n > std::numeric_limits<unsigned>::max()) throw config_error("n", "exponent too large");
    return boost::multiprecision::pow(boost::multiprecision::cpp_int(m), static_cast<unsigned>(n));
}

}  // namespace hfkr
