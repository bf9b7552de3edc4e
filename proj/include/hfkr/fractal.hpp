#pragma once

// Path geometry and box-counting dimension of lattice trajectories.

#include <hfkr/errors.hpp>
#include <hfkr/stats.hpp>
#include <hfkr/walk.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hfkr {

struct geometry_report {
    double total_path_length = 0.0;
    std::int64_t bbox_width = 0;   ///< max_x - min_x + 1
    std::int64_t bbox_height = 0;  ///< max_y - min_y + 1
    std::int64_t unique_points = 0;
    double density = 0.0;  ///< unique_points / (bbox_width * bbox_height)
};

struct dimension_estimate {
    std::vector<std::int64_t> box_sizes;
    std::vector<std::int64_t> counts;
    double dimension = 0.0;
    double r_squared = 1.0;
    /// All counts equal: no scaling behaviour, dimension reported as 0.
    bool degenerate = false;
};

/// Distinct points in lexicographic order.
inline std::vector<lattice_point> unique_points(std::span<const lattice_point> points) {
    std::vector<lattice_point> u(points.begin(), points.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

inline geometry_report geometry(std::span<const lattice_point> points) {
    if (points.empty()) throw error("geometry of an empty path");
    geometry_report g;
    auto [min_x, max_x] = std::pair{points[0].x, points[0].x};
    auto [min_y, max_y] = std::pair{points[0].y, points[0].y};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
        if (i > 0) {
            const auto dx = static_cast<double>(p.x - points[i - 1].x);
            const auto dy = static_cast<double>(p.y - points[i - 1].y);
            g.total_path_length += std::sqrt(dx * dx + dy * dy);
        }
    }
    g.bbox_width = max_x - min_x + 1;
    g.bbox_height = max_y - min_y + 1;
    g.unique_points = static_cast<std::int64_t>(unique_points(points).size());
    g.density = static_cast<double>(g.unique_points) /
                (static_cast<double>(g.bbox_width) * static_cast<double>(g.bbox_height));
    return g;
}

inline geometry_report geometry(const trajectory& t) { return geometry(t.points); }

/// Floor division rounding toward negative infinity.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    const std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// Number of grid cells of side `box_size`, anchored at the origin, that hold a point.
inline std::int64_t box_count(std::span<const lattice_point> points, std::int64_t box_size) {
    if (box_size < 1) throw error("box size must be positive");
    if (points.empty()) throw error("box count of an empty point set");
    std::vector<lattice_point> cells;
    cells.reserve(points.size());
    for (const auto& p : points) cells.push_back({floor_div(p.x, box_size), floor_div(p.y, box_size)});
    return static_cast<std::int64_t>(unique_points(cells).size());
}

/// Powers of two from 1 up to the largest one not above max(width, height) / 4,
/// never fewer than four scales.
inline std::vector<std::int64_t> default_box_sizes(const geometry_report& g) {
    const std::int64_t top = std::max(g.bbox_width, g.bbox_height) / 4;
    std::vector<std::int64_t> sizes;
    for (std::int64_t s = 1; s <= top || sizes.size() < 4; s *= 2) sizes.push_back(s);
    return sizes;
}

/// Box-counting dimension: minus the slope of log2(count) against log2(size).
inline dimension_estimate estimate_dimension(std::span<const lattice_point> points,
                                             std::vector<std::int64_t> box_sizes) {
    if (box_sizes.size() < 3) throw error("dimension fit needs at least three box sizes");
    std::sort(box_sizes.begin(), box_sizes.end());
    box_sizes.erase(std::unique(box_sizes.begin(), box_sizes.end()), box_sizes.end());
    if (box_sizes.size() < 3) throw error("dimension fit needs at least three distinct box sizes");

    const auto distinct = unique_points(points);
    dimension_estimate est;
    est.box_sizes = std::move(box_sizes);
    std::vector<double> xs, ys;
    for (const auto s : est.box_sizes) {
        const auto c = box_count(distinct, s);
        est.counts.push_back(c);
        xs.push_back(std::log2(static_cast<double>(s)));
        ys.push_back(std::log2(static_cast<double>(c)));
    }
    if (std::all_of(est.counts.begin(), est.counts.end(), [&](auto c) { return c == est.counts.front(); })) {
        est.degenerate = true;
        return est;
    }
    const auto fit = linear_fit(xs, ys);
    est.dimension = -fit.slope;
    est.r_squared = fit.r_squared;
    return est;
}

inline dimension_estimate estimate_dimension(std::span<const lattice_point> points) {
    return estimate_dimension(points, default_box_sizes(geometry(points)));
}

inline dimension_estimate estimate_dimension(const trajectory& t) { return estimate_dimension(t.points); }

}  // namespace hfkr
