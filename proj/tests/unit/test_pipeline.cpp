#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sidon/error.hpp"
#include "sidon/pipeline.hpp"
#include "sidon/sampler.hpp"

using namespace sidon;

namespace {

// Least cut by exhaustive scan with the subset-search r*.
Int brute_threshold(const IntegerSet& A, int k, std::uint64_t bound, Int N) {
    std::vector<Int> candidates{0};
    for (Int a : A.elements()) {
        if (2 * a < N) candidates.push_back(a);
    }
    for (Int m : candidates) {
        const auto rest = oracle::elems_of(A.without_prefix(m));
        bool ok = true;
        for (Int n = m + 1; n <= N && ok; ++n) ok = oracle::max_disjoint(oracle::tuples(rest, k, n)) <= bound;
        if (ok) return m;
    }
    return -1;
}

Params params(int h, Int N) { return Params::preset(h, N, 0); }

}  // namespace

TEST(FindThreshold, IntervalExample) {
    const IntegerSet A = IntegerSet::interval(7).truncated(14);
    EXPECT_GT(r_star(A, 2, 8).value, 1u);
    const ThresholdResult t = find_threshold(A, 2, 1, 14);
    ASSERT_TRUE(t.found);
    EXPECT_EQ(t.n_k, brute_threshold(A, 2, 1, 14));
    EXPECT_EQ(t.n_k, 5);
}

TEST(FindThreshold, AlreadyValid) {
    const IntegerSet A = IntegerSet::make({1, 2, 5, 11}, 22);
    const ThresholdResult t = find_threshold(A, 2, 1, 22);
    EXPECT_TRUE(t.found);
    EXPECT_EQ(t.n_k, 0);
}

TEST(FindThreshold, MatchesBruteForce) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const Int N = 40;
        const IntegerSet A = oracle::random_set(rng, N, 9);
        const int k = 2 + trial % 3;
        const std::uint64_t bound = 1 + static_cast<std::uint64_t>(trial % 2);
        const ThresholdResult t = find_threshold(A, k, bound, N);
        const Int want = brute_threshold(A, k, bound, N);
        EXPECT_EQ(t.found, want >= 0);
        if (want >= 0) EXPECT_EQ(t.n_k, want) << "trial " << trial;
    }
}

TEST(FindThreshold, RaisingBoundNeverRaisesCut) {
    const Sampler s(SampleSpec{params(2, 3000)});
    for (std::uint64_t t = 0; t < 5; ++t) {
        const IntegerSet A = s.sample(t);
        for (int k : {2, 3}) {
            Int prev = std::numeric_limits<Int>::max();
            for (std::uint64_t bound = 1; bound <= 4; ++bound) {
                const ThresholdResult r = find_threshold(A, k, bound, 3000);
                if (!r.found) continue;
                EXPECT_LE(r.n_k, prev);
                prev = r.n_k;
            }
        }
    }
}

TEST(FindThreshold, CutJustBelowHalf) {
    // Only elements >= N/2 survive the last candidate, so some cut is always valid.
    const IntegerSet A = IntegerSet::interval(50);
    const ThresholdResult t = find_threshold(A, 2, 1, 50);
    ASSERT_TRUE(t.found);
    EXPECT_EQ(t.n_k, brute_threshold(A, 2, 1, 50));
    EXPECT_EQ(t.n_k, 24);
    EXPECT_THROW(find_threshold(IntegerSet::interval(5), 1, 1, 5), ValidationError);
}

TEST(VerifyBasis, FullInterval) {
    const BasisVerdict v = verify_basis(IntegerSet::interval(300), 5, 5, 300);
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(v.gaps.empty());
    EXPECT_TRUE(v.fitted);
}

TEST(VerifyBasis, ParityObstruction) {
    std::vector<Int> evens;
    for (Int n = 2; n <= 200; n += 2) evens.push_back(n);
    const BasisVerdict v = verify_basis(IntegerSet::make(evens, 200), 5, 10, 200);
    EXPECT_FALSE(v.holds);
    std::vector<Int> odds;
    for (Int n = 11; n <= 200; n += 2) odds.push_back(n);
    EXPECT_EQ(v.gaps, odds);
}

TEST(GBound, FormulaArithmetic) {
    GChain c;
    c.h = 2;
    c.g = {{1, 1}, {2, 5}, {3, 4}, {4, 2}};
    EXPECT_EQ(c.G(3), 40);
    EXPECT_EQ(c.G(0), 5);
}

TEST(GBound, NothingDeleted) {
    const IntegerSet B = IntegerSet::make({1, 2, 5, 11, 24}, 100);
    const Params p = params(2, 100);
    const GBoundVerdict v = verify_G_bound(B, B, p, g_chain(2));
    EXPECT_EQ(v.w, 0u);
    EXPECT_EQ(v.G, 153);
    const Counts R4 = count_nondecreasing(B, 4, 100);
    EXPECT_EQ(v.max_R_A, *std::max_element(R4.begin() + 1, R4.end()));
    EXPECT_TRUE(v.A_in_B2h_G);
    EXPECT_EQ(v.multisets_checked, 1u);
}

TEST(GBound, DeletedElementsShift) {
    const IntegerSet A = IntegerSet::make({1, 2, 3, 40, 77, 150}, 400);
    const IntegerSet B = A.without_prefix(3);
    const GBoundVerdict v = verify_G_bound(A, B, params(2, 400), g_chain(2));
    EXPECT_EQ(v.w, 3u);
    EXPECT_EQ(v.G, 8 * 153);
    // Sub-multisets of {1,2,3} with at most three elements, including the empty one.
    EXPECT_EQ(v.multisets_checked, 20u);
    EXPECT_TRUE(v.holds);
}

TEST(Repair, SidonInputUnchanged) {
    const IntegerSet A = IntegerSet::make({1, 2, 5, 11, 24, 44, 65}, 200);
    const RepairReport rep = repair(A, params(2, 200));
    EXPECT_EQ(rep.B, A);
    EXPECT_EQ(rep.w, 0u);
    for (const auto& s : rep.stages) {
        if (s.k <= 2) EXPECT_TRUE(s.deleted.empty());
    }
    EXPECT_TRUE(rep.Bh1_full);
}

TEST(Repair, AdversarialInterval) {
    const RepairReport rep = repair(IntegerSet::interval(50), params(2, 50));
    EXPECT_EQ(rep.success, rep.failures.empty());
    EXPECT_TRUE(rep.B.is_subset_of(rep.A));
    const Reverification check = reverify(rep);
    EXPECT_TRUE(check.ok) << (check.problems.empty() ? "" : check.problems.front());
    if (rep.success) {
        EXPECT_TRUE(is_Bh_g(rep.B, 2, 1, 50).holds);
        for (const auto& s : rep.stages) EXPECT_EQ(is_Bstar_l_g(rep.B, s.k, s.bound, 50).status, Verdict::holds);
    }
}

TEST(Repair, SampledReportReverifies) {
    const Params p = Params::preset(2, 20000, 3);
    const IntegerSet A = Sampler(SampleSpec{p}).sample(0);
    const RepairReport rep = repair(A, p);
    EXPECT_TRUE(rep.B.is_subset_of(rep.A));
    EXPECT_EQ(rep.A.difference(rep.B).size(), rep.w);
    EXPECT_EQ(rep.stages.size(), 3u);
    const Reverification check = reverify(rep);
    EXPECT_TRUE(check.ok) << (check.problems.empty() ? "" : check.problems.front());
    if (rep.success) {
        EXPECT_TRUE(rep.Bh1_beyond_threshold);
        EXPECT_TRUE(rep.gbound.holds);
        for (const auto& s : rep.stages) EXPECT_EQ(s.B_membership, Verdict::holds);
        const BasisVerdict b = verify_basis(rep.B, 5, rep.basis_from, p.N);
        EXPECT_TRUE(b.holds);
    }
}

TEST(Repair, ReverifyCatchesTampering) {
    const Params p = Params::preset(2, 5000, 1);
    const IntegerSet A = Sampler(SampleSpec{p}).sample(0);
    RepairReport rep = repair(A, p);
    ASSERT_TRUE(rep.success);
    RepairReport wrong_from = rep;
    wrong_from.basis_from = 0;
    if (rep.basis_from > 0) EXPECT_FALSE(reverify(wrong_from).ok);
    RepairReport wrong_B = rep;
    wrong_B.B = rep.A;
    if (rep.w > 0) EXPECT_FALSE(reverify(wrong_B).ok);
    RepairReport wrong_cut = rep;
    wrong_cut.stages.front().threshold.n_k = 0;
    wrong_cut.max_threshold = 0;
    for (auto& s : wrong_cut.stages) s.threshold.n_k = 0;
    wrong_cut.B = rep.A;
    wrong_cut.w = 0;
    if (rep.w > 0) EXPECT_FALSE(reverify(wrong_cut).ok);
}
