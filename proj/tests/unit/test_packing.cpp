#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sidon/error.hpp"
#include "sidon/packing.hpp"

using namespace sidon;

TEST(RStar, DisjointFamilyOfEight) {
    const PackingResult r = r_star(IntegerSet::interval(7), 2, 8);
    EXPECT_EQ(r.value, 4u);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.witness.size(), 4u);
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        for (std::size_t j = i + 1; j < r.witness.size(); ++j) EXPECT_TRUE(r.witness[i].disjoint_from(r.witness[j]));
    }
}

TEST(RStar, RepeatedTermCounts) {
    EXPECT_EQ(r_star(IntegerSet::make({1, 2, 3}, 10), 2, 4).value, 2u);
}

TEST(RStar, NoRepresentations) {
    const PackingResult r = r_star(IntegerSet::make({2, 4}, 10), 2, 5);
    EXPECT_EQ(r.value, 0u);
    EXPECT_TRUE(r.certified);
}

TEST(RStar, OrderTwoEqualsR) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const IntegerSet A = oracle::random_set(rng, 300, 60);
        const auto prof = r_star_profile(A, 2, 300);
        const Counts R = count_nondecreasing(A, 2, 300);
        for (std::size_t n = 0; n < R.size(); ++n) {
            ASSERT_TRUE(prof[n].certified);
            ASSERT_EQ(prof[n].value, R[n]) << n;
        }
    }
}

TEST(RStar, MatchesSubsetOracle) {
    std::mt19937_64 rng(5);
    std::size_t checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int l = 3 + trial % 3;
        const Int N = 60;
        const IntegerSet A = oracle::random_set(rng, N, 10);
        const auto prof = r_star_profile(A, l, N);
        for (Int n = 1; n <= N; ++n) {
            const auto reps = oracle::tuples(oracle::elems_of(A), l, n);
            if (reps.size() > 18) continue;
            ++checked;
            ASSERT_TRUE(prof[static_cast<std::size_t>(n)].certified);
            ASSERT_EQ(prof[static_cast<std::size_t>(n)].value, oracle::max_disjoint(reps)) << "l=" << l << " n=" << n;
        }
    }
    EXPECT_GT(checked, 1000u);
}

TEST(RStar, AtMostR) {
    std::mt19937_64 rng(8);
    const IntegerSet A = oracle::random_set(rng, 200, 40);
    for (int l : {3, 4}) {
        const auto prof = r_star_profile(A, l, 200);
        const Counts R = count_nondecreasing(A, l, 200);
        for (std::size_t n = 0; n < R.size(); ++n) {
            EXPECT_LE(prof[n].value, R[n]);
            EXPECT_LE(prof[n].value, prof[n].upper);
        }
    }
}

TEST(RStar, UncertifiedBracket) {
    PackingConfig cfg;
    cfg.max_vertices = 5;
    const PackingResult r = r_star(IntegerSet::interval(30), 3, 40, cfg);
    EXPECT_FALSE(r.certified);
    EXPECT_LE(r.value, r.upper);
    EXPECT_GE(r.value, 1u);
    const PackingResult exact = r_star(IntegerSet::interval(30), 3, 40);
    EXPECT_TRUE(exact.certified);
    EXPECT_LE(r.value, exact.value);
    EXPECT_GE(r.upper, exact.value);
}

TEST(WindowReps, MatchesEnumeration) {
    const IntegerSet A = IntegerSet::make({1, 2, 3, 4, 5, 6, 7}, 14);
    const WindowReps w(A, 2, 14, 1000);
    for (Int n = 1; n <= 14; ++n) {
        EXPECT_EQ(w.reps(n), enumerate_representations(A, 2, n, 1000).reps) << n;
    }
    EXPECT_EQ(w.count(8), 4u);
    EXPECT_THROW(WindowReps(IntegerSet::interval(100), 3, 300, 10), BudgetExceeded);
}

TEST(BstarMembership, ClassicSidon) {
    EXPECT_EQ(is_Bstar_l_g(IntegerSet::make({1, 2, 5, 11}, 22), 2, 1, 22).status, Verdict::holds);
}

TEST(BstarMembership, Witness) {
    const BstarVerdict v = is_Bstar_l_g(IntegerSet::interval(7).truncated(14), 2, 3, 14);
    EXPECT_EQ(v.status, Verdict::fails);
    EXPECT_EQ(v.witness_n, 8);
    EXPECT_EQ(v.witness.value, 4u);
}

TEST(BstarMembership, LargeBoundIsVacuous) {
    const IntegerSet A = IntegerSet::interval(12);
    const Counts R = count_nondecreasing(A, 3, 36);
    const auto g = *std::max_element(R.begin(), R.end());
    EXPECT_EQ(is_Bstar_l_g(A, 3, g, 36).status, Verdict::holds);
}

TEST(ScanBound, SkipsSmallTargets) {
    const BoundScan s = scan_bound(IntegerSet::make({1, 2, 3, 4, 5, 6, 7}, 14), 2, 1, 14);
    EXPECT_FALSE(s.clean());
    EXPECT_EQ(s.first_problem(), 4);
    EXPECT_TRUE(s.unknown.empty());
    EXPECT_EQ(s.max_lower, 4u);
}
