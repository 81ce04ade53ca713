#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidon/bounds.hpp"
#include "sidon/integer_set.hpp"
#include "sidon/packing.hpp"
#include "sidon/params.hpp"
#include "sidon/stats.hpp"

namespace sidon {

struct PipelineConfig {
    PackingConfig packing;
    Prop2Reading reading = Prop2Reading::literal;
    std::size_t fit_bins = 40;
};

struct ThresholdResult {
    int k = 0;
    std::uint64_t bound = 0;
    bool found = false;
    Int n_k = 0;  // least valid prefix cut (0 or an element of A), when found
    std::size_t evaluations = 0;
};

/// Least prefix cut m (0 or an element of A below N/2) such that
/// r*_{k, A \ (A ∩ [1, m])}(n) <= bound for every n in (m, N].
///
/// Validity is monotone in m (deleting elements never raises r*, and the
/// checked window only shrinks), so the candidates are bisected.
ThresholdResult find_threshold(const IntegerSet& A, int k, std::uint64_t bound, Int N,
                               const PipelineConfig& cfg = {});

struct BasisVerdict {
    bool holds = true;
    std::vector<Int> gaps;  // n in (from, N] with R_order,B(n) = 0
    LineFit fit;            // log R against log n over geometric bins of (from, N]
    bool fitted = false;
};

BasisVerdict verify_basis(const IntegerSet& B, int order, Int from, Int N, std::size_t bins = 40);

struct GBoundVerdict {
    bool holds = false;
    BigInt G;
    std::uint64_t w = 0;
    std::uint64_t max_R_A = 0;         // max_{n <= N} R_{2h,A}(n)
    bool A_in_B2h_G = false;
    bool pigeonhole_holds = false;
    std::uint64_t multisets_checked = 0;
    int failing_order = 0;  // 2h - j of the first failing shifted count
    Int failing_shift = 0;
};

/// A ∈ B_{2h}[G] on the window, G = 2^w max g_k, together with the shifted
/// counts R_{2h-j,B}(n - (d_1 + ... + d_j)) <= g_{2h-j} over every
/// sub-multiset {d_1, ..., d_j} of the deleted elements A \ B.
GBoundVerdict verify_G_bound(const IntegerSet& A, const IntegerSet& B, const Params& params,
                             const GChain& chain);

struct StageReport {
    int k = 0;
    std::uint64_t bound = 0;
    ThresholdResult threshold;
    std::vector<Int> deleted;  // A_k = A ∩ [1, n_k]
    // Same bound checked on A itself: least n0 with r*_{k,A}(n) <= bound for
    // all n in (n0, N], and whether n0 <= n_k.
    Int undeleted_threshold = 0;
    bool undeleted_holds_beyond_nk = false;
    Verdict B_membership = Verdict::unknown;  // B ∈ B*_k[bound] on [1, N]
};

struct RepairReport {
    Params params;
    PipelineConfig config;
    IntegerSet A;
    std::vector<StageReport> stages;  // k = 2 .. 2h; A_1 is empty
    Int max_threshold = 0;
    IntegerSet B;
    std::vector<Int> deleted;  // A \ B
    std::uint64_t w = 0;

    bool Bh1_beyond_threshold = false;  // R_h,B(n) <= 1 on (max n_k, N]
    bool Bh1_full = false;              // same on [1, N]
    Int Bh1_witness = 0;

    std::size_t basis_gaps = 0;  // gaps of R_{2h+1,B} on [1, N]
    Int basis_from = 0;          // certified window is (basis_from, N]
    bool basis_upper_half = false;  // window contains (N/2, N]
    LineFit basis_fit;
    bool basis_fitted = false;

    LineFit growth_fit;  // log R_{2h+1,A} against log n
    double growth_constant = 0.0;
    Int growth_fit_from = 0;

    GChain chain;
    GBoundVerdict gbound;

    bool success = false;
    std::vector<std::string> failures;
};

/// Deletion pipeline on a sampled set: thresholds for k = 2..2h (bound 1 up
/// to h, 4h+1 above), B = A minus every prefix, then the B_h[1], B*-chain,
/// basis and G-bound checks. Never throws on a failed check; failures are
/// listed in the report.
RepairReport repair(const IntegerSet& A, const Params& params, const PipelineConfig& cfg = {});

struct Reverification {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Re-checks a report's success claims by routes independent of the counting
/// DP: pairwise-sum marking for B_h[1], boolean sumset iteration for the
/// basis window, direct multiset enumeration for A ∈ B_{2h}[G], and fresh
/// threshold scans for each stage.
Reverification reverify(const RepairReport& report);

}  // namespace sidon
