#pragma once

#include <cstdint>
#include <vector>

#include "sidon/integer_set.hpp"
#include "sidon/rep_vector.hpp"

namespace sidon {

// Per-target counts indexed by n in [0, N]; entry 0 is the empty sum.
using Counts = std::vector<std::uint64_t>;

/// Number of non-decreasing h-tuples from A summing to each n <= N.
///
/// Element-ordered DP over the generating function prod_a 1/(1 - y x^a),
/// truncated at degree h in y and N in x. Cost O(|A| h N). Throws
/// AssertionFailure if a count would overflow 64 bits.
Counts count_nondecreasing(const IntegerSet& A, int h, Int N);

/// Same DP, returning every order 0..h (row j holds R_j).
std::vector<Counts> count_nondecreasing_orders(const IntegerSet& A, int h, Int N);

/// Number of strictly increasing h-tuples from A summing to each n <= N,
/// via prod_a (1 + y x^a).
Counts count_strict(const IntegerSet& A, int h, Int N);

struct RepProfile {
    int h = 0;
    Int N = 0;
    Counts R;      // non-decreasing tuples
    Counts r;      // strictly increasing tuples
    Counts Rstar;  // tuples with at least one repeated term, R - r

    friend bool operator==(const RepProfile&, const RepProfile&) = default;
};

// R, r and Rstar = R - r. Throws AssertionFailure if any r(n) > R(n).
RepProfile profile(const IntegerSet& A, int h, Int N);

// Test oracle: walks every multiset of h elements of A directly. Throws
// BudgetExceeded when C(|A|+h-1, h) exceeds `budget`.
RepProfile brute_force_profile(const IntegerSet& A, int h, Int N,
                               std::uint64_t budget = 50'000'000);

struct Enumeration {
    std::vector<RepVector> reps;
    bool complete = true;  // false: stopped after `budget` tuples
};

// Lists the non-decreasing h-tuples from A summing to n in lexicographic
// order, stopping once `budget` tuples have been produced.
Enumeration enumerate_representations(const IntegerSet& A, int h, Int n, std::uint64_t budget);

struct BhVerdict {
    bool holds = true;
    std::uint64_t max_count = 0;
    Int witness_n = 0;                     // least violating n, 0 if none
    std::vector<RepVector> witness_reps;  // every representation of witness_n
};

/// A in B_h[g] on the window: R_h(n) <= g for every n <= N.
BhVerdict is_Bh_g(const IntegerSet& A, int h, std::uint64_t g, Int N);

// Cross-check for h = 2 through the ordered self-convolution O_2 (computed by
// FFT): R_2(n) = (O_2(n) + [n even][n/2 in A]) / 2.
Counts count_pairs_fft(const IntegerSet& A, Int N);

// C(n + k - 1, k), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t n, std::uint64_t k);

}  // namespace sidon
