#include "sidon/repfunc.hpp"

#include <cmath>
#include <limits>

#include <fftw3.h>
#include <fmt/format.h>

#include "sidon/error.hpp"

namespace sidon {

namespace {

void require_order(int h) {
    if (h < 1) throw ValidationError(fmt::format("order must be at least 1, got {}", h));
}

std::size_t window_size(Int N) { return static_cast<std::size_t>(std::max<Int>(N, 0)) + 1; }

inline void add_checked(std::uint64_t& target, std::uint64_t value) {
    if (__builtin_add_overflow(target, value, &target)) {
        throw AssertionFailure("representation count overflowed 64 bits");
    }
}

}  // namespace

std::vector<Counts> count_nondecreasing_orders(const IntegerSet& A, int h, Int N) {
    require_order(h);
    const std::size_t width = window_size(N);
    std::vector<Counts> dp(static_cast<std::size_t>(h) + 1, Counts(width, 0));
    dp[0][0] = 1;
    for (Int a : A.elements()) {
        if (a > N) break;
        const auto step = static_cast<std::size_t>(a);
        // Ascending j reads row j-1 after it already absorbed a, which is
        // what allows a to repeat.
        for (int j = 1; j <= h; ++j) {
            auto& row = dp[static_cast<std::size_t>(j)];
            const auto& prev = dp[static_cast<std::size_t>(j) - 1];
            for (std::size_t s = step; s < width; ++s) {
                if (prev[s - step]) add_checked(row[s], prev[s - step]);
            }
        }
    }
    return dp;
}

Counts count_nondecreasing(const IntegerSet& A, int h, Int N) {
    return std::move(count_nondecreasing_orders(A, h, N).back());
}

Counts count_strict(const IntegerSet& A, int h, Int N) {
    require_order(h);
    const std::size_t width = window_size(N);
    std::vector<Counts> dp(static_cast<std::size_t>(h) + 1, Counts(width, 0));
    dp[0][0] = 1;
    for (Int a : A.elements()) {
        if (a > N) break;
        const auto step = static_cast<std::size_t>(a);
        for (int j = h; j >= 1; --j) {
            auto& row = dp[static_cast<std::size_t>(j)];
            const auto& prev = dp[static_cast<std::size_t>(j) - 1];
            for (std::size_t s = step; s < width; ++s) {
                if (prev[s - step]) add_checked(row[s], prev[s - step]);
            }
        }
    }
    return std::move(dp.back());
}

RepProfile profile(const IntegerSet& A, int h, Int N) {
    RepProfile out;
    out.h = h;
    out.N = N;
    out.R = count_nondecreasing(A, h, N);
    out.r = count_strict(A, h, N);
    out.Rstar.resize(out.R.size());
    for (std::size_t n = 0; n < out.R.size(); ++n) {
        if (out.r[n] > out.R[n]) {
            throw AssertionFailure(fmt::format(
                "R = r + R* broken at n = {}: r = {} exceeds R = {}", n, out.r[n], out.R[n]));
        }
        out.Rstar[n] = out.R[n] - out.r[n];
    }
    return out;
}

std::uint64_t multiset_count(std::uint64_t n, std::uint64_t k) {
    if (n == 0) return k == 0 ? 1 : 0;
    // C(n+k-1, k) built incrementally; each partial value is itself binomial.
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n + i - 1) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(acc);
}

RepProfile brute_force_profile(const IntegerSet& A, int h, Int N, std::uint64_t budget) {
    require_order(h);
    const std::uint64_t total = multiset_count(A.size(), static_cast<std::uint64_t>(h));
    if (total > budget) {
        throw BudgetExceeded(fmt::format(
            "brute force would visit {} multisets, budget is {}", total, budget));
    }
    RepProfile out;
    out.h = h;
    out.N = N;
    const std::size_t width = window_size(N);
    out.R.assign(width, 0);
    out.r.assign(width, 0);
    out.Rstar.assign(width, 0);
    if (A.empty()) return out;

    const auto elems = A.elements();
    const std::size_t m = elems.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(h), 0);
    while (true) {
        Int sum = 0;
        bool strict = true;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            sum += elems[idx[i]];
            if (i > 0 && idx[i] == idx[i - 1]) strict = false;
        }
        if (sum <= N) {
            const auto n = static_cast<std::size_t>(sum);
            ++out.R[n];
            if (strict) ++out.r[n]; else ++out.Rstar[n];
        }
        // Odometer step over non-decreasing index tuples.
        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] == m - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < idx.size(); ++i) idx[i] = idx[pos - 1];
    }
    return out;
}

namespace {

struct RepWalker {
    std::span<const Int> elems;
    const IntegerSet* set;
    std::uint64_t budget;
    std::vector<Int> current;
    std::vector<RepVector> out;
    bool overflow = false;

    // Picks the next coordinate from elems[start..] with `left` terms still to
    // place summing to `remaining`.
    void walk(std::size_t start, int left, Int remaining) {
        if (overflow) return;
        if (left == 1) {
            if (remaining >= (current.empty() ? 1 : current.back()) && set->contains(remaining)) {
                if (out.size() >= budget) { overflow = true; return; }
                current.push_back(remaining);
                out.emplace_back(current);
                current.pop_back();
            }
            return;
        }
        for (std::size_t i = start; i < elems.size(); ++i) {
            const Int a = elems[i];
            if (a * left > remaining) break;
            current.push_back(a);
            walk(i, left - 1, remaining - a);
            current.pop_back();
            if (overflow) return;
        }
    }
};

}  // namespace

Enumeration enumerate_representations(const IntegerSet& A, int h, Int n, std::uint64_t budget) {
    require_order(h);
    if (n < h) return {};
    RepWalker walker{A.elements(), &A, budget, {}, {}, false};
    walker.current.reserve(static_cast<std::size_t>(h));
    walker.walk(0, h, n);
    return {std::move(walker.out), !walker.overflow};
}

BhVerdict is_Bh_g(const IntegerSet& A, int h, std::uint64_t g, Int N) {
    if (g < 1) throw ValidationError("g must be at least 1");
    Counts R = count_nondecreasing(A, h, N);
    BhVerdict v;
    for (std::size_t n = 1; n < R.size(); ++n) {
        v.max_count = std::max(v.max_count, R[n]);
        if (v.holds && R[n] > g) {
            v.holds = false;
            v.witness_n = static_cast<Int>(n);
        }
    }
    if (!v.holds) {
        v.witness_reps = enumerate_representations(A, h, v.witness_n,
                                                   R[static_cast<std::size_t>(v.witness_n)])
                             .reps;
    }
    return v;
}

Counts count_pairs_fft(const IntegerSet& A, Int N) {
    const std::size_t width = window_size(N);
    Counts out(width, 0);
    if (A.empty()) return out;
    // Padded so the cyclic convolution of two length-N+1 signals is linear.
    std::size_t len = 1;
    while (len < 2 * width) len <<= 1;
    const std::size_t spectrum = len / 2 + 1;

    std::vector<double> signal(len, 0.0);
    for (Int a : A.elements()) {
        if (a > N) break;
        signal[static_cast<std::size_t>(a)] = 1.0;
    }
    auto* freq = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * spectrum));
    fftw_plan forward = fftw_plan_dft_r2c_1d(static_cast<int>(len), signal.data(), freq, FFTW_ESTIMATE);
    fftw_plan backward = fftw_plan_dft_c2r_1d(static_cast<int>(len), freq, signal.data(), FFTW_ESTIMATE);
    fftw_execute(forward);
    for (std::size_t i = 0; i < spectrum; ++i) {
        const double re = freq[i][0];
        const double im = freq[i][1];
        freq[i][0] = re * re - im * im;
        freq[i][1] = 2.0 * re * im;
    }
    fftw_execute(backward);
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(freq);

    for (std::size_t n = 1; n < width; ++n) {
        auto ordered = static_cast<std::uint64_t>(std::llround(signal[n] / static_cast<double>(len)));
        const bool square = (n % 2 == 0) && A.contains(static_cast<Int>(n / 2));
        out[n] = (ordered + (square ? 1 : 0)) / 2;
    }
    return out;
}

}  // namespace sidon
