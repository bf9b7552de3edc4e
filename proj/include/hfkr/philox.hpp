#pragma once

// Philox4x64-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11). Output block i is a
// pure function of (key, counter), so any draw can be recomputed from its
// coordinates without replaying earlier ones.

#include <array>
#include <cstdint>

namespace hfkr {

using philox_counter = std::array<std::uint64_t, 4>;
using philox_key = std::array<std::uint64_t, 2>;

namespace detail {

inline constexpr std::uint64_t philox_m0 = 0xD2E7470EE14C6C93ULL;
inline constexpr std::uint64_t philox_m1 = 0xCA5A826395121157ULL;
inline constexpr std::uint64_t philox_w0 = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t philox_w1 = 0xBB67AE8584CAA73BULL;

constexpr void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 p = static_cast<u128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace detail

/// One Philox4x64 block with 10 rounds.
constexpr philox_counter philox4x64_10(philox_counter ctr, philox_key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::philox_w0;
            key[1] += detail::philox_w1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        detail::mulhilo(detail::philox_m0, ctr[0], hi0, lo0);
        detail::mulhilo(detail::philox_m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Identifies an independent family of draws under one seed.
enum class substream : std::uint32_t {
    step_matrix = 1,
    step_translation = 2,
    step_noise = 3,
    map_table = 4,
    map_choice = 5,
    trial_seed = 6,
    experiment_seed = 7,
};

/// Sequential view over the blocks addressed by (seed, substream, index).
///
/// The key is (seed, 0); the counter is (block, substream, index_lo,
/// index_hi), with `block` advancing as values are consumed. Two streams
/// with different coordinates never share a block.
class philox_stream {
public:
    constexpr philox_stream(std::uint64_t seed, substream stream, std::uint64_t index,
                            std::uint64_t index_hi = 0) noexcept
        : key_{seed, 0}, ctr_{0, static_cast<std::uint64_t>(stream), index, index_hi} {}

    constexpr std::uint64_t next_u64() noexcept {
        if (used_ == 4) {
            buffer_ = philox4x64_10(ctr_, key_);
            ++ctr_[0];
            used_ = 0;
        }
        return buffer_[used_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi); returns lo exactly when lo == hi.
    constexpr double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_unit();
    }

    /// Uniform integer in [0, bound) by rejection (no modulo bias).
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= limit) return v % bound;
        }
    }

private:
    philox_key key_;
    philox_counter ctr_;
    philox_counter buffer_{};
    int used_ = 4;
};

/// Derives an independent 64-bit seed from a parent seed and two coordinates.
constexpr std::uint64_t derive_seed(std::uint64_t parent, substream stream, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
    return philox_stream(parent, stream, a, b).next_u64();
}

}  // namespace hfkr
