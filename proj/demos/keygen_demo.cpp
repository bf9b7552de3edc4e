// Minimal library usage: generate a walk, derive keys, perturb one point.

#include <hfkr/hfkr.hpp>

#include <iostream>

int main() {
    hfkr::walk_config config;
    config.n = 500;
    config.seed = 2024;

    const auto walk = hfkr::generate_walk(config);
    const auto g = hfkr::geometry(walk);
    std::cout << "points: " << walk.points.size() << "  bbox: " << g.bbox_width << "x" << g.bbox_height
              << "  dimension: " << hfkr::estimate_dimension(walk).dimension << "\n";

    const auto key = hfkr::derive_key(walk, hfkr::hash_alg::sha3_512());
    std::cout << "sha3-512 key: " << hfkr::to_hex(key) << "\n";

    const auto nudged = hfkr::perturb(walk, {250, hfkr::perturbation_mode::point_nudge, {1, 0}});
    const auto key2 = hfkr::derive_key(nudged, hfkr::hash_alg::sha3_512());
    std::cout << "bits changed by a one-cell nudge: " << hfkr::hamming_distance(key.bytes, key2.bytes) << " / 512\n";
}
