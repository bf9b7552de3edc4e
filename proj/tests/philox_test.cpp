#include <hfkr/philox.hpp>

#include <gtest/gtest.h>

#include <set>

namespace {

// Known answers produced by numpy.random.Philox (an independent
// Philox4x64-10 implementation) for the same (counter, key) pairs.
TEST(Philox, KnownAnswerVectors) {
    EXPECT_EQ(hfkr::philox4x64_10({0, 0, 0, 0}, {0, 0}),
              (hfkr::philox_counter{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                                    0x7e68b68aec7ba23bULL}));
    EXPECT_EQ(hfkr::philox4x64_10({1, 0, 0, 0}, {0, 0}),
              (hfkr::philox_counter{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
                                    0x907d7a052fd5b4dcULL}));
    EXPECT_EQ(hfkr::philox4x64_10({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
                                   0x082efa98ec4e6c89ULL},
                                  {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}),
              (hfkr::philox_counter{0xa528f45403e61d95ULL, 0x38c72dbd566e9788ULL, 0xa5a1610e72fd18b5ULL,
                                    0x57bd43b5e52b7fe6ULL}));
    EXPECT_EQ(hfkr::philox4x64_10({7, 3, 1234, 0}, {42, 0}),
              (hfkr::philox_counter{0x1d0d0ff43c47fdc2ULL, 0xfdd1789cebf19e45ULL, 0x0b99d8ebe8251d17ULL,
                                    0x1d91ec16a45aa5afULL}));
}

TEST(Philox, StreamWalksCounterBlocks) {
    hfkr::philox_stream s(42, static_cast<hfkr::substream>(3), 1234);
    // block 7 of (seed 42, substream 3, index 1234) is the last KAT above.
    for (int i = 0; i < 7 * 4; ++i) s.next_u64();
    EXPECT_EQ(s.next_u64(), 0x1d0d0ff43c47fdc2ULL);
    EXPECT_EQ(s.next_u64(), 0xfdd1789cebf19e45ULL);
}

TEST(Philox, UnitIntervalAndBounds) {
    hfkr::philox_stream s(1, hfkr::substream::step_noise, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.next_unit();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_LT(s.below(3), 3u);
    }
    EXPECT_EQ(s.uniform(2.5, 2.5), 2.5);
}

TEST(Philox, DerivedSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 50; ++a)
        for (std::uint64_t b = 0; b < 50; ++b) seen.insert(hfkr::derive_seed(9, hfkr::substream::trial_seed, a, b));
    EXPECT_EQ(seen.size(), 2500u);
}

}  // namespace
