#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sidon/integer_set.hpp"
#include "sidon/rep_vector.hpp"
#include "sidon/repfunc.hpp"

namespace sidon {

// Two representations conflict when their supports intersect. r*_l(n) is the
// largest pairwise non-conflicting family among the representations of n.

struct PackingConfig {
    std::size_t max_vertices = 500;            // exact solver refuses larger instances
    std::uint64_t node_limit = 5'000'000;      // branch-and-bound nodes per instance
    std::uint64_t enumeration_budget = 100'000;
    std::uint64_t walk_budget = 50'000'000;    // representations stored by a window scan
};

struct PackingResult {
    std::uint64_t value = 0;  // size of `witness`; the exact maximum when certified
    std::uint64_t upper = 0;  // proven upper bound, equal to value when certified
    bool certified = true;
    std::vector<RepVector> witness;
};

Enumeration enumerate_reps(const IntegerSet& A, int l, Int n, std::uint64_t budget);

/// Maximum pairwise disjoint subfamily of `reps`.
///
/// Greedy (smallest support first, then lexicographic) seeds the lower bound;
/// branch-and-bound over the disjointness graph, pruned by greedy clique-cover
/// colourings of the conflict graph, closes the gap. Instances beyond
/// max_vertices or node_limit come back uncertified with value <= r* <= upper.
PackingResult max_disjoint_family(std::span<const RepVector> reps, const PackingConfig& cfg = {});

PackingResult r_star(const IntegerSet& A, int l, Int n, const PackingConfig& cfg = {});

// r*_l(n) for every n in [0, N] (no witnesses kept). Representations are
// enumerated once for the whole window.
std::vector<PackingResult> r_star_profile(const IntegerSet& A, int l, Int N,
                                          const PackingConfig& cfg = {});

enum class Verdict { holds, fails, unknown };

const char* to_string(Verdict v);

struct BoundScan {
    std::vector<Int> violations;  // certified r*(n) > bound
    std::vector<Int> unknown;     // lower <= bound < upper
    std::uint64_t max_lower = 0;  // largest certified-or-lower-bound value seen

    bool clean() const { return violations.empty() && unknown.empty(); }
    Int first_problem() const;  // least n in violations or unknown, 0 if clean
};

// Every n <= N with r*_l(n) possibly above `bound`. Targets with
// R_l(n) <= bound are skipped since r* <= R.
BoundScan scan_bound(const IntegerSet& A, int l, std::uint64_t bound, Int N,
                     const PackingConfig& cfg = {});

struct BstarVerdict {
    Verdict status = Verdict::holds;
    Int witness_n = 0;
    PackingResult witness;
};

/// A in B*_l[g] on the window. A certified violation wins over uncertified
/// targets; if only uncertified targets remain the verdict is unknown.
BstarVerdict is_Bstar_l_g(const IntegerSet& A, int l, std::uint64_t g, Int N,
                          const PackingConfig& cfg = {});

// Non-decreasing l-tuples from A with sum <= N, grouped by sum. Within one
// sum the tuples are in lexicographic order.
class WindowReps {
public:
    WindowReps(const IntegerSet& A, int l, Int N, std::uint64_t budget);

    std::uint64_t count(Int n) const {
        auto i = static_cast<std::size_t>(n);
        return offsets_[i + 1] - offsets_[i];
    }
    std::vector<RepVector> reps(Int n) const;
    Int N() const noexcept { return N_; }
    int order() const noexcept { return l_; }

private:
    int l_;
    Int N_;
    std::vector<std::uint64_t> offsets_;  // N + 2 entries
    std::vector<Int> coords_;
};

}  // namespace sidon
