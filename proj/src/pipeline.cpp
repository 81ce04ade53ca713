#include "sidon/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <boost/dynamic_bitset.hpp>
#include <fmt/format.h>

#include "sidon/error.hpp"
#include "sidon/repfunc.hpp"

namespace sidon {

namespace {

std::vector<Int> cut_candidates(const IntegerSet& A, Int N) {
    std::vector<Int> out{0};
    for (Int a : A.elements()) {
        if (2 * a >= N) break;
        out.push_back(a);
    }
    return out;
}

bool cut_is_valid(const IntegerSet& A, Int cut, int k, std::uint64_t bound, Int N,
                  const PackingConfig& packing) {
    // Sums of k >= 2 elements above the cut exceed the cut, so scanning all of
    // [1, N] is the same as scanning (cut, N].
    return scan_bound(A.without_prefix(cut), k, bound, N, packing).clean();
}

}  // namespace

ThresholdResult find_threshold(const IntegerSet& A, int k, std::uint64_t bound, Int N,
                               const PipelineConfig& cfg) {
    if (k < 2) throw ValidationError(fmt::format("threshold search needs k >= 2, got {}", k));
    ThresholdResult res;
    res.k = k;
    res.bound = bound;
    const std::vector<Int> candidates = cut_candidates(A, N);
    std::size_t lo = 0;
    std::size_t hi = candidates.size();  // candidates[hi] is treated as valid
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        ++res.evaluations;
        if (cut_is_valid(A, candidates[mid], k, bound, N, cfg.packing)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (lo < candidates.size()) {
        res.found = true;
        res.n_k = candidates[lo];
    }
    return res;
}

BasisVerdict verify_basis(const IntegerSet& B, int order, Int from, Int N, std::size_t bins) {
    BasisVerdict v;
    const Counts R = count_nondecreasing(B, order, N);
    for (Int n = std::max<Int>(from, 0) + 1; n <= N; ++n) {
        if (R[static_cast<std::size_t>(n)] == 0) v.gaps.push_back(n);
    }
    v.holds = v.gaps.empty();
    if (from + 1 < N) {
        BinnedCurve curve = make_bins(geometric_edges(std::max<Int>(from, 0) + 1, N, bins));
        std::vector<double> series(R.begin(), R.end());
        accumulate(curve, series);
        if (nonzero_bins(curve) >= 2) {
            v.fit = fit_loglog(curve);
            v.fitted = true;
        }
    }
    return v;
}

namespace {

// Calls fn(size, sum) for every sub-multiset of `elems` with at most
// max_size elements and sum <= limit.
template <typename Fn>
void for_each_submultiset(std::span<const Int> elems, int max_size, Int limit, Fn&& fn) {
    auto walk = [&](auto&& self, std::size_t start, int size, Int sum) -> void {
        fn(size, sum);
        if (size == max_size) return;
        for (std::size_t i = start; i < elems.size(); ++i) {
            if (sum + elems[i] > limit) break;
            self(self, i, size + 1, sum + elems[i]);
        }
    };
    walk(walk, 0, 0, 0);
}

}  // namespace

GBoundVerdict verify_G_bound(const IntegerSet& A, const IntegerSet& B, const Params& params,
                             const GChain& chain) {
    const int top = 2 * params.h;
    const Int N = params.N;
    GBoundVerdict v;
    const IntegerSet deleted = A.difference(B);
    v.w = deleted.size();
    v.G = chain.G(v.w);

    const Counts RA = count_nondecreasing(A, top, N);
    for (std::size_t n = 1; n < RA.size(); ++n) v.max_R_A = std::max(v.max_R_A, RA[n]);
    v.A_in_B2h_G = BigInt(v.max_R_A) <= v.G;

    // prefix_max[k][x] = max_{1 <= m <= x} R_{k,B}(m)
    std::vector<Counts> rows = count_nondecreasing_orders(B, top, N);
    for (auto& row : rows) {
        row[0] = 0;
        for (std::size_t x = 1; x < row.size(); ++x) row[x] = std::max(row[x], row[x - 1]);
    }
    v.pigeonhole_holds = true;
    for_each_submultiset(deleted.elements(), top - 1, N - 1, [&](int j, Int shift) {
        if (!v.pigeonhole_holds) return;
        ++v.multisets_checked;
        const int order = top - j;
        const std::uint64_t worst = rows[static_cast<std::size_t>(order)][static_cast<std::size_t>(N - shift)];
        if (BigInt(worst) > chain.g.at(order)) {
            v.pigeonhole_holds = false;
            v.failing_order = order;
            v.failing_shift = shift;
        }
    });
    v.holds = v.A_in_B2h_G && v.pigeonhole_holds;
    return v;
}

RepairReport repair(const IntegerSet& A, const Params& params, const PipelineConfig& cfg) {
    params.validate();
    const int h = params.h;
    const Int N = params.N;
    RepairReport rep;
    rep.params = params;
    rep.config = cfg;
    rep.A = A.truncated(N);
    const auto inner = static_cast<std::uint64_t>(4 * h + 1);

    for (int k = 2; k <= 2 * h; ++k) {
        StageReport stage;
        stage.k = k;
        stage.bound = k <= h ? 1 : inner;
        stage.threshold = find_threshold(rep.A, k, stage.bound, N, cfg);
        const char* part = k <= h ? "disjointness stage" : "multiplicity stage";
        if (stage.threshold.found) {
            const IntegerSet del = rep.A.prefix(stage.threshold.n_k);
            stage.deleted.assign(del.elements().begin(), del.elements().end());
            rep.max_threshold = std::max(rep.max_threshold, stage.threshold.n_k);
        } else {
            rep.failures.push_back(fmt::format(
                "{}: no prefix cut below N/2 keeps r*_{} <= {} on the window", part, k, stage.bound));
        }
        if (k > h) {
            const BoundScan direct = scan_bound(rep.A, k, stage.bound, N, cfg.packing);
            Int last = 0;
            if (!direct.violations.empty()) last = std::max(last, direct.violations.back());
            if (!direct.unknown.empty()) last = std::max(last, direct.unknown.back());
            stage.undeleted_threshold = last;
            stage.undeleted_holds_beyond_nk = stage.threshold.found && last <= stage.threshold.n_k;
        }
        rep.stages.push_back(std::move(stage));
    }

    rep.B = rep.A.without_prefix(rep.max_threshold);
    const IntegerSet del = rep.A.prefix(rep.max_threshold);
    rep.deleted.assign(del.elements().begin(), del.elements().end());
    rep.w = rep.deleted.size();

    const Counts Rh = count_nondecreasing(rep.B, h, N);
    rep.Bh1_beyond_threshold = true;
    rep.Bh1_full = true;
    for (Int n = 1; n <= N; ++n) {
        if (Rh[static_cast<std::size_t>(n)] <= 1) continue;
        if (rep.Bh1_full) rep.Bh1_witness = n;
        rep.Bh1_full = false;
        if (n > rep.max_threshold) rep.Bh1_beyond_threshold = false;
    }
    if (!rep.Bh1_beyond_threshold) {
        rep.failures.push_back(fmt::format("B_{}[1] conclusion: R_{},B has a repeated sum beyond {}",
                                           h, h, rep.max_threshold));
    }

    for (auto& stage : rep.stages) {
        stage.B_membership = is_Bstar_l_g(rep.B, stage.k, stage.bound, N, cfg.packing).status;
        if (stage.B_membership != Verdict::holds) {
            rep.failures.push_back(fmt::format("B*-chain: B in B*_{}[{}] is {}", stage.k, stage.bound,
                                               to_string(stage.B_membership)));
        }
    }

    const int basis_order = 2 * h + 1;
    const BasisVerdict full = verify_basis(rep.B, basis_order, 0, N, cfg.fit_bins);
    rep.basis_gaps = full.gaps.size();
    rep.basis_from = full.gaps.empty() ? 0 : full.gaps.back();
    rep.basis_upper_half = 2 * rep.basis_from <= N;
    if (rep.B.empty()) rep.failures.push_back("repair: B is empty");
    if (rep.basis_from + 1 < N) {
        const BasisVerdict window = verify_basis(rep.B, basis_order, rep.basis_from, N, cfg.fit_bins);
        rep.basis_fit = window.fit;
        rep.basis_fitted = window.fitted;
    }

    rep.growth_fit_from = std::max<Int>(1, N / 100);
    if (rep.growth_fit_from < N) {
        const Counts RA = count_nondecreasing(rep.A, basis_order, N);
        BinnedCurve curve = make_bins(geometric_edges(rep.growth_fit_from, N, cfg.fit_bins));
        accumulate(curve, std::vector<double>(RA.begin(), RA.end()));
        if (nonzero_bins(curve) >= 2) {
            rep.growth_fit = fit_loglog(curve);
            rep.growth_constant = std::exp(rep.growth_fit.intercept);
        }
    }

    rep.chain = g_chain(h, cfg.reading);
    rep.gbound = verify_G_bound(rep.A, rep.B, params, rep.chain);
    if (!rep.gbound.A_in_B2h_G) {
        rep.failures.push_back(fmt::format("G bound: max R_{},A = {} exceeds G", 2 * h, rep.gbound.max_R_A));
    }
    if (!rep.gbound.pigeonhole_holds) {
        rep.failures.push_back(fmt::format("G bound: shifted R_{},B exceeds g_{} at shift {}",
                                           rep.gbound.failing_order, rep.gbound.failing_order,
                                           rep.gbound.failing_shift));
    }
    rep.success = rep.failures.empty();
    return rep;
}

namespace {

// Largest count of any sum in (above, N] over h-multisets of B, by marking
// sums directly.
std::uint64_t max_multiplicity_above(const IntegerSet& B, int h, Int above, Int N) {
    std::vector<std::uint32_t> hits(static_cast<std::size_t>(N) + 1, 0);
    auto elems = B.elements();
    auto walk = [&](auto&& self, std::size_t start, int left, Int sum) -> void {
        if (left == 0) {
            ++hits[static_cast<std::size_t>(sum)];
            return;
        }
        for (std::size_t i = start; i < elems.size() && sum + elems[i] <= N; ++i) {
            self(self, i, left - 1, sum + elems[i]);
        }
    };
    walk(walk, 0, h, 0);
    std::uint64_t worst = 0;
    for (Int n = above + 1; n <= N; ++n) worst = std::max<std::uint64_t>(worst, hits[static_cast<std::size_t>(n)]);
    return worst;
}

boost::dynamic_bitset<> sumset_reach(const IntegerSet& B, int order, Int N) {
    const auto width = static_cast<std::size_t>(N) + 1;
    boost::dynamic_bitset<> reach(width);
    reach.set(0);
    for (int step = 0; step < order; ++step) {
        boost::dynamic_bitset<> next(width);
        for (Int b : B.elements()) {
            if (b > N) break;
            next |= reach << static_cast<std::size_t>(b);
        }
        reach = std::move(next);
    }
    return reach;
}

}  // namespace

Reverification reverify(const RepairReport& report) {
    Reverification out;
    auto problem = [&](std::string text) {
        out.ok = false;
        out.problems.push_back(std::move(text));
    };
    const int h = report.params.h;
    const Int N = report.params.N;

    Int cut = 0;
    for (const auto& s : report.stages) {
        if (s.threshold.found) cut = std::max(cut, s.threshold.n_k);
    }
    if (cut != report.max_threshold) problem("max threshold does not match the stages");
    const IntegerSet B = report.A.without_prefix(cut);
    if (!(B == report.B)) problem("B differs from A minus the deleted prefix");
    if (report.w != report.A.size() - B.size()) problem("w does not count A \\ B");
    if (!report.success) return out;

    if (max_multiplicity_above(B, h, cut, N) > 1) {
        problem(fmt::format("B is not B_{}[1] beyond {}", h, cut));
    }

    const auto reach = sumset_reach(B, 2 * h + 1, N);
    for (Int n = report.basis_from + 1; n <= N; ++n) {
        if (!reach.test(static_cast<std::size_t>(n))) {
            problem(fmt::format("{} is not a sum of {} elements of B", n, 2 * h + 1));
            break;
        }
    }
    if (report.basis_from > 0 && reach.test(static_cast<std::size_t>(report.basis_from))) {
        problem(fmt::format("window start {} is not a gap", report.basis_from));
    }

    const GChain chain = g_chain(h, report.config.reading);
    const BigInt G = chain.G(report.w);
    if (G != report.gbound.G) problem("G does not equal 2^w max g_k");
    const WindowReps all(report.A, 2 * h, N, report.config.packing.walk_budget);
    std::uint64_t worst = 0;
    for (Int n = 1; n <= N; ++n) worst = std::max(worst, all.count(n));
    if (BigInt(worst) > G) problem(fmt::format("A is not B_{}[G]: a sum has {} representations", 2 * h, worst));

    for (const auto& s : report.stages) {
        if (!cut_is_valid(report.A, s.threshold.n_k, s.k, s.bound, N, report.config.packing)) {
            problem(fmt::format("cut {} does not certify r*_{} <= {}", s.threshold.n_k, s.k, s.bound));
        }
        if (s.threshold.n_k > 0) {
            const IntegerSet below = report.A.prefix(s.threshold.n_k - 1);
            const Int previous = below.empty() ? 0 : below.max();
            if (cut_is_valid(report.A, previous, s.k, s.bound, N, report.config.packing)) {
                problem(fmt::format("cut {} for k = {} is not the least", s.threshold.n_k, s.k));
            }
        }
    }
    return out;
}

}  // namespace sidon
