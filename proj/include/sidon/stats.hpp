#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sidon/integer_set.hpp"

namespace sidon {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs two distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Integer bin edges e_0 < e_1 < ... with bins [e_i, e_{i+1}) covering
// [lo, hi]. Edges are spaced geometrically; bins that would round to empty
// are merged, so fewer than `bins` bins may come back.
std::vector<Int> geometric_edges(Int lo, Int hi, std::size_t bins);

struct BinnedCurve {
    std::vector<Int> edges;
    std::vector<double> sums;  // per-bin total of the series
    std::vector<double> x;     // log of the bin's geometric centre
    std::vector<double> width;

    std::size_t bins() const { return sums.size(); }
};

BinnedCurve make_bins(const std::vector<Int>& edges);

// Adds series[n] for every n in [edges.front(), edges.back()).
void accumulate(BinnedCurve& curve, std::span<const double> series);

// Fits log(sums[i] / (scale * width[i])) against x over bins with positive sums.
LineFit fit_loglog(const BinnedCurve& curve, double scale = 1.0);
std::size_t nonzero_bins(const BinnedCurve& curve);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Percentile interval of `samples` at confidence `level` (e.g. 0.95).
Interval percentile_interval(std::vector<double> samples, double level);

/// Trial-level bootstrap of a pooled log-log slope.
///
/// per_trial[t][b] holds trial t's total in bin b. Each resample draws trials
/// with replacement, pools their bins and refits. Deterministic in `seed`.
std::vector<double> bootstrap_slopes(const std::vector<std::vector<double>>& per_trial,
                                     const BinnedCurve& shape, std::size_t resamples,
                                     std::uint64_t seed);

}  // namespace sidon
