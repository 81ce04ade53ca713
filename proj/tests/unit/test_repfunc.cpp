#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sidon/error.hpp"
#include "sidon/repfunc.hpp"

using namespace sidon;

namespace {

const IntegerSet kOneTwoThree = IntegerSet::make({1, 2, 3}, 20);

}  // namespace

TEST(CountNondecreasing, SmallExamples) {
    const Counts R = count_nondecreasing(kOneTwoThree, 2, 10);
    EXPECT_EQ(R[4], 2u);
    EXPECT_EQ(R[2], 1u);
    EXPECT_EQ(R[6], 1u);
    EXPECT_EQ(R[7], 0u);
}

TEST(CountNondecreasing, SingleElement) {
    const Counts R = count_nondecreasing(IntegerSet::make({5}, 20), 3, 20);
    for (Int n = 0; n <= 20; ++n) EXPECT_EQ(R[static_cast<std::size_t>(n)], n == 15 ? 1u : 0u) << n;
}

TEST(CountNondecreasing, EmptySet) {
    for (int h : {1, 2, 5}) {
        const RepProfile p = profile(IntegerSet::make({}, 30), h, 30);
        for (Int n = 0; n <= 30; ++n) {
            const auto i = static_cast<std::size_t>(n);
            EXPECT_EQ(p.R[i], 0u);
            EXPECT_EQ(p.r[i], 0u);
            EXPECT_EQ(p.Rstar[i], 0u);
        }
    }
}

TEST(CountNondecreasing, OrdersRows) {
    const auto rows = count_nondecreasing_orders(kOneTwoThree, 3, 12);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0][0], 1u);
    EXPECT_EQ(rows[1][2], 1u);
    EXPECT_EQ(rows[2], count_nondecreasing(kOneTwoThree, 2, 12));
    EXPECT_EQ(rows[3], count_nondecreasing(kOneTwoThree, 3, 12));
}

TEST(CountStrict, SmallExamples) {
    EXPECT_EQ(count_strict(kOneTwoThree, 2, 10)[4], 1u);
    EXPECT_EQ(count_strict(kOneTwoThree, 3, 10)[6], 1u);
    EXPECT_EQ(count_strict(IntegerSet::make({2, 4}, 10), 2, 10)[8], 0u);
}

TEST(Profile, SplitsIntoStrictAndRepeated) {
    const RepProfile p = profile(kOneTwoThree, 2, 10);
    EXPECT_EQ(p.R[4], 2u);
    EXPECT_EQ(p.r[4], 1u);
    EXPECT_EQ(p.Rstar[4], 1u);
    EXPECT_EQ(p.R[2], 1u);
    EXPECT_EQ(p.r[2], 0u);
    EXPECT_EQ(p.Rstar[2], 1u);
    EXPECT_EQ(p, brute_force_profile(kOneTwoThree, 2, 10));
}

TEST(Profile, MatchesTupleOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int h = 2 + trial % 4;
        const Int N = 20 + trial;
        const IntegerSet A = oracle::random_set(rng, N, 12);
        const RepProfile p = profile(A, h, N);
        const auto e = oracle::elems_of(A);
        for (Int n = 0; n <= N; ++n) {
            const auto i = static_cast<std::size_t>(n);
            ASSERT_EQ(p.R[i], oracle::tuples(e, h, n).size()) << "h=" << h << " n=" << n;
            ASSERT_EQ(p.r[i], oracle::tuples(e, h, n, true).size()) << "h=" << h << " n=" << n;
            ASSERT_EQ(p.R[i], p.r[i] + p.Rstar[i]);
        }
    }
}

TEST(Profile, BruteForceAgreementRandom) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int h = 2 + trial % 4;
        const Int N = std::uniform_int_distribution<Int>(1, 200)(rng);
        const IntegerSet A = oracle::random_set(rng, N, 30);
        ASSERT_EQ(profile(A, h, N), brute_force_profile(A, h, N));
    }
}

TEST(Profile, DeletionNeverIncreasesCounts) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const IntegerSet A = oracle::random_set(rng, 150, 40);
        if (A.empty()) continue;
        const IntegerSet B = A.without_prefix(A.elements()[A.size() / 2]);
        const RepProfile pa = profile(A, 3, 150);
        const RepProfile pb = profile(B, 3, 150);
        for (std::size_t i = 0; i < pa.R.size(); ++i) {
            ASSERT_LE(pb.R[i], pa.R[i]);
            ASSERT_LE(pb.r[i], pa.r[i]);
        }
    }
}

TEST(Profile, WindowConsistency) {
    std::mt19937_64 rng(3);
    const IntegerSet A = oracle::random_set(rng, 400, 60);
    const Counts big = count_nondecreasing(A, 3, 400);
    const Counts small = count_nondecreasing(A.truncated(150), 3, 150);
    for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i], big[i]);
}

TEST(Profile, OverflowIsReported) {
    EXPECT_THROW(count_nondecreasing(IntegerSet::interval(3000), 12, 3000), AssertionFailure);
}

TEST(BruteForce, Budget) {
    EXPECT_THROW(brute_force_profile(IntegerSet::interval(100), 5, 100, 1000), BudgetExceeded);
    EXPECT_EQ(multiset_count(3, 2), 6u);
    EXPECT_EQ(multiset_count(0, 0), 1u);
    EXPECT_EQ(multiset_count(1u << 30, 10), UINT64_MAX);
}

TEST(Enumerate, ListsTuplesInOrder) {
    const auto e = enumerate_representations(IntegerSet::interval(7), 2, 8, 100);
    EXPECT_TRUE(e.complete);
    const std::vector<RepVector> expected{RepVector({1, 7}), RepVector({2, 6}), RepVector({3, 5}),
                                          RepVector({4, 4})};
    EXPECT_EQ(e.reps, expected);
    EXPECT_TRUE(enumerate_representations(IntegerSet::make({2, 4}, 10), 2, 5, 100).reps.empty());
    const auto three = enumerate_representations(kOneTwoThree, 3, 6, 100);
    EXPECT_EQ(three.reps, (std::vector<RepVector>{RepVector({1, 2, 3}), RepVector({2, 2, 2})}));
    EXPECT_FALSE(enumerate_representations(IntegerSet::interval(7), 2, 8, 2).complete);
}

TEST(IsBhG, ClassicSidon) {
    const BhVerdict v = is_Bh_g(IntegerSet::make({1, 2, 5, 11}, 22), 2, 1, 22);
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.max_count, 1u);
}

TEST(IsBhG, Witness) {
    const BhVerdict v = is_Bh_g(IntegerSet::make({1, 2, 3}, 6), 2, 1, 6);
    EXPECT_FALSE(v.holds);
    EXPECT_EQ(v.witness_n, 4);
    EXPECT_EQ(v.witness_reps, (std::vector<RepVector>{RepVector({1, 3}), RepVector({2, 2})}));
}

TEST(IsBhG, Singleton) {
    for (int h : {2, 3, 7}) EXPECT_TRUE(is_Bh_g(IntegerSet::make({1}, 50), h, 1, 50).holds);
}

TEST(FftCrossCheck, MatchesDp) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Int N = 500 + 97 * trial;
        const IntegerSet A = oracle::random_set(rng, N, 200);
        EXPECT_EQ(count_pairs_fft(A, N), count_nondecreasing(A, 2, N));
    }
    const IntegerSet dense = IntegerSet::interval(5000);
    EXPECT_EQ(count_pairs_fft(dense, 5000), count_nondecreasing(dense, 2, 5000));
}
