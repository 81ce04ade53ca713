#include "sidon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sidon/error.hpp"

namespace sidon {

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InsufficientData("least squares needs at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientData("least squares needs two distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = x.size();
    return fit;
}

std::vector<Int> geometric_edges(Int lo, Int hi, std::size_t bins) {
    if (lo < 1 || hi < lo || bins == 0) throw InsufficientData("invalid geometric bin range");
    std::vector<Int> edges{lo};
    const double ratio = std::pow(static_cast<double>(hi + 1) / static_cast<double>(lo),
                                  1.0 / static_cast<double>(bins));
    for (std::size_t i = 1; i <= bins; ++i) {
        auto e = static_cast<Int>(std::llround(static_cast<double>(lo) * std::pow(ratio, static_cast<double>(i))));
        if (i == bins) e = hi + 1;
        if (e > edges.back()) edges.push_back(e);
    }
    if (edges.back() != hi + 1) edges.push_back(hi + 1);
    return edges;
}

BinnedCurve make_bins(const std::vector<Int>& edges) {
    BinnedCurve c;
    c.edges = edges;
    const std::size_t bins = edges.size() - 1;
    c.sums.assign(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) {
        const double lo = static_cast<double>(edges[b]);
        const double last = static_cast<double>(edges[b + 1] - 1);
        c.x.push_back(0.5 * (std::log(lo) + std::log(last)));
        c.width.push_back(static_cast<double>(edges[b + 1] - edges[b]));
    }
    return c;
}

void accumulate(BinnedCurve& curve, std::span<const double> series) {
    for (std::size_t b = 0; b + 1 < curve.edges.size(); ++b) {
        for (Int n = curve.edges[b]; n < curve.edges[b + 1]; ++n) {
            const auto i = static_cast<std::size_t>(n);
            if (i < series.size()) curve.sums[b] += series[i];
        }
    }
}

std::size_t nonzero_bins(const BinnedCurve& curve) {
    return static_cast<std::size_t>(
        std::count_if(curve.sums.begin(), curve.sums.end(), [](double s) { return s > 0.0; }));
}

LineFit fit_loglog(const BinnedCurve& curve, double scale) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t b = 0; b < curve.bins(); ++b) {
        if (curve.sums[b] <= 0.0) continue;
        xs.push_back(curve.x[b]);
        ys.push_back(std::log(curve.sums[b] / (scale * curve.width[b])));
    }
    return least_squares(xs, ys);
}

Interval percentile_interval(std::vector<double> samples, double level) {
    if (samples.empty()) throw InsufficientData("no bootstrap samples");
    std::sort(samples.begin(), samples.end());
    const double tail = (1.0 - level) / 2.0;
    auto at = [&](double q) {
        double pos = q * static_cast<double>(samples.size() - 1);
        auto i = static_cast<std::size_t>(std::floor(pos));
        std::size_t j = std::min(i + 1, samples.size() - 1);
        double frac = pos - static_cast<double>(i);
        return samples[i] * (1.0 - frac) + samples[j] * frac;
    };
    return {at(tail), at(1.0 - tail)};
}

std::vector<double> bootstrap_slopes(const std::vector<std::vector<double>>& per_trial,
                                     const BinnedCurve& shape, std::size_t resamples,
                                     std::uint64_t seed) {
    std::vector<double> slopes;
    if (per_trial.empty()) return slopes;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, per_trial.size() - 1);
    const double trials = static_cast<double>(per_trial.size());
    slopes.reserve(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        BinnedCurve pooled = shape;
        std::fill(pooled.sums.begin(), pooled.sums.end(), 0.0);
        for (std::size_t t = 0; t < per_trial.size(); ++t) {
            const auto& row = per_trial[pick(rng)];
            for (std::size_t b = 0; b < pooled.bins(); ++b) pooled.sums[b] += row[b];
        }
        try {
            slopes.push_back(fit_loglog(pooled, trials).slope);
        } catch (const InsufficientData&) {
            // Degenerate resample (fewer than two occupied bins); skipped.
        }
    }
    return slopes;
}

}  // namespace sidon
