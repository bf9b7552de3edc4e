#include <hfkr/fractal.hpp>

#include <gtest/gtest.h>

#include <random>

namespace {

using hfkr::lattice_point;

std::vector<lattice_point> filled_square(std::int64_t side, lattice_point origin = {}) {
    std::vector<lattice_point> pts;
    for (std::int64_t y = 0; y < side; ++y)
        for (std::int64_t x = 0; x < side; ++x) pts.push_back({origin.x + x, origin.y + y});
    return pts;
}

// Exhaustive oracle: visit every candidate cell and test each point for membership.
std::int64_t enumerate_boxes(const std::vector<lattice_point>& pts, std::int64_t s) {
    std::int64_t lo = 0, hi = 0;
    for (const auto& p : pts) {
        lo = std::min({lo, p.x, p.y});
        hi = std::max({hi, p.x, p.y});
    }
    std::int64_t count = 0;
    for (std::int64_t cx = lo / s - 2; cx <= hi / s + 2; ++cx)
        for (std::int64_t cy = lo / s - 2; cy <= hi / s + 2; ++cy) {
            bool hit = false;
            for (const auto& p : pts)
                if (p.x >= cx * s && p.x < (cx + 1) * s && p.y >= cy * s && p.y < (cy + 1) * s) {
                    hit = true;
                    break;
                }
            count += hit;
        }
    return count;
}

hfkr::geometry_report naive_geometry(const std::vector<lattice_point>& pts) {
    hfkr::geometry_report g;
    std::int64_t minx = pts[0].x, maxx = minx, miny = pts[0].y, maxy = miny;
    std::int64_t unique = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        minx = std::min(minx, pts[i].x);
        maxx = std::max(maxx, pts[i].x);
        miny = std::min(miny, pts[i].y);
        maxy = std::max(maxy, pts[i].y);
        if (i) g.total_path_length += std::hypot(double(pts[i].x - pts[i - 1].x), double(pts[i].y - pts[i - 1].y));
        bool seen = false;
        for (std::size_t j = 0; j < i && !seen; ++j) seen = pts[j] == pts[i];
        unique += !seen;
    }
    g.bbox_width = maxx - minx + 1;
    g.bbox_height = maxy - miny + 1;
    g.unique_points = unique;
    g.density = double(unique) / double(g.bbox_width * g.bbox_height);
    return g;
}

TEST(Geometry, SinglePoint) {
    const std::vector<lattice_point> p{{4, -9}};
    const auto g = hfkr::geometry(p);
    EXPECT_EQ(g.total_path_length, 0.0);
    EXPECT_EQ(g.bbox_width, 1);
    EXPECT_EQ(g.bbox_height, 1);
    EXPECT_EQ(g.unique_points, 1);
    EXPECT_EQ(g.density, 1.0);
}

TEST(Geometry, ThreeFourFive) {
    const std::vector<lattice_point> p{{0, 0}, {3, 4}};
    const auto g = hfkr::geometry(p);
    EXPECT_DOUBLE_EQ(g.total_path_length, 5.0);
    EXPECT_EQ(g.bbox_width, 4);
    EXPECT_EQ(g.bbox_height, 5);
    EXPECT_EQ(g.unique_points, 2);
    EXPECT_DOUBLE_EQ(g.density, 0.1);
}

TEST(Geometry, RandomWalkMatchesNaiveOracle) {
    hfkr::walk_config c;
    c.n = 500;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        c.seed = seed;
        const auto t = hfkr::generate_walk(c);
        const auto g = hfkr::geometry(t);
        const auto o = naive_geometry(t.points);
        EXPECT_NEAR(g.total_path_length, o.total_path_length, 1e-9 * o.total_path_length);
        EXPECT_EQ(g.bbox_width, o.bbox_width);
        EXPECT_EQ(g.bbox_height, o.bbox_height);
        EXPECT_EQ(g.unique_points, o.unique_points);
        EXPECT_DOUBLE_EQ(g.density, o.density);
        EXPECT_GT(g.density, 0.0);
        EXPECT_LE(g.density, 1.0);
        EXPECT_LE(g.unique_points, c.n + 1);
    }
}

TEST(BoxCount, SmallCases) {
    const std::vector<lattice_point> one{{-17, 40}};
    for (const std::int64_t s : {1, 2, 3, 64}) EXPECT_EQ(hfkr::box_count(one, s), 1);
    const std::vector<lattice_point> two{{0, 0}, {1, 1}};
    EXPECT_EQ(hfkr::box_count(two, 2), 1);
    EXPECT_EQ(hfkr::box_count(two, 1), 2);
}

TEST(BoxCount, NegativeCoordinatesBinTowardNegativeInfinity) {
    const std::vector<lattice_point> pts{{-1, -1}, {0, 0}};
    EXPECT_EQ(hfkr::box_count(pts, 2), 2);  // cells (-1,-1) and (0,0), not both 0
    const std::vector<lattice_point> same{{-1, -1}, {-2, -2}};
    EXPECT_EQ(hfkr::box_count(same, 2), 1);
    EXPECT_EQ(hfkr::floor_div(-1, 2), -1);
    EXPECT_EQ(hfkr::floor_div(-4, 2), -2);
    EXPECT_EQ(hfkr::floor_div(5, 2), 2);
}

TEST(BoxCount, FilledGridMatchesEnumeration) {
    const auto grid = filled_square(16);
    const std::int64_t expected[] = {256, 64, 16, 4};
    const std::int64_t sizes[] = {1, 2, 4, 8};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(enumerate_boxes(grid, sizes[i]), expected[i]);
        EXPECT_EQ(hfkr::box_count(grid, sizes[i]), expected[i]);
    }
}

TEST(BoxCount, RandomSetsMatchEnumeration) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::int64_t> coord(-30, 30);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<lattice_point> pts(1 + rng() % 80);
        for (auto& p : pts) p = {coord(rng), coord(rng)};
        for (const std::int64_t s : {1, 2, 3, 5, 8}) EXPECT_EQ(hfkr::box_count(pts, s), enumerate_boxes(pts, s));
    }
}

TEST(BoxCount, TranslationByMultipleOfEveryBoxSizeIsInvariant) {
    hfkr::walk_config c;
    c.n = 2000;
    c.seed = 8;
    const auto t = hfkr::generate_walk(c);
    auto shifted = t.points;
    for (auto& p : shifted) {
        p.x += 64 * 13;
        p.y -= 64 * 7;
    }
    for (const std::int64_t s : {1, 2, 4, 8, 16, 32, 64}) EXPECT_EQ(hfkr::box_count(t.points, s), hfkr::box_count(shifted, s));
}

TEST(DefaultBoxSizes, DyadicUpToQuarterOfBbox) {
    hfkr::geometry_report g;
    g.bbox_width = 256;
    g.bbox_height = 100;
    EXPECT_EQ(hfkr::default_box_sizes(g), (std::vector<std::int64_t>{1, 2, 4, 8, 16, 32, 64}));
    g.bbox_width = g.bbox_height = 1;
    EXPECT_EQ(hfkr::default_box_sizes(g), (std::vector<std::int64_t>{1, 2, 4, 8}));
}

TEST(EstimateDimension, RepeatedPointIsDegenerate) {
    const std::vector<lattice_point> pts(10, lattice_point{3, 3});
    const auto d = hfkr::estimate_dimension(pts);
    EXPECT_TRUE(d.degenerate);
    EXPECT_EQ(d.dimension, 0.0);
    EXPECT_EQ(d.r_squared, 1.0);
}

TEST(EstimateDimension, LineIsOne) {
    std::vector<lattice_point> pts;
    for (std::int64_t i = 0; i < 1024; ++i) pts.push_back({i, 0});
    const auto d = hfkr::estimate_dimension(pts);
    EXPECT_NEAR(d.dimension, 1.0, 0.05);
    EXPECT_FALSE(d.degenerate);
}

TEST(EstimateDimension, SquareIsTwo) {
    const auto d = hfkr::estimate_dimension(filled_square(256));
    EXPECT_NEAR(d.dimension, 2.0, 0.1);
    EXPECT_GT(d.r_squared, 0.99);
}

TEST(EstimateDimension, NeedsThreeScales) {
    const auto pts = filled_square(4);
    EXPECT_THROW(hfkr::estimate_dimension(pts, {1, 2}), hfkr::error);
    EXPECT_THROW(hfkr::estimate_dimension(pts, {1, 1, 2}), hfkr::error);
}

TEST(EstimateDimension, WalksAreMonotoneAndInRange) {
    hfkr::walk_config c;
    for (const std::int64_t n : {128, 500, 2000, 5000}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            c.n = n;
            c.seed = seed;
            const auto d = hfkr::estimate_dimension(hfkr::generate_walk(c));
            for (std::size_t i = 1; i < d.counts.size(); ++i) EXPECT_LE(d.counts[i], d.counts[i - 1]);
            EXPECT_GE(d.dimension, -0.1);
            EXPECT_LE(d.dimension, 2.1);
            EXPECT_GE(d.r_squared, 0.0);
            EXPECT_LE(d.r_squared, 1.0);
        }
    }
}

}  // namespace
