#include "sidon/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "sidon/error.hpp"
#include "sidon/parallel.hpp"
#include "sidon/repfunc.hpp"
#include "sidon/sampler.hpp"

namespace sidon {

Rational exponent(const Rational& alpha, int k, int s) { return (Rational(k) * alpha - 1) * s; }

Rational exponent(int h, int k, int s) { return exponent(preset_alpha(h), k, s); }

ExponentTable exponent_table(int h) {
    if (h < 2) throw ValidationError(fmt::format("h must be at least 2, got {}", h));
    ExponentTable table;
    table.h = h;
    table.alpha = preset_alpha(h);
    for (int k = 2; k <= 2 * h; ++k) {
        ExponentRow row;
        row.k = k;
        const Rational base(-(8 * h - 4 * k + 2), 4 * h + 1);
        if (k <= h) {
            row.s = 2;
            row.closed_form = base;
        } else {
            row.s = 4 * h + 2;
            row.closed_form = base * (2 * h + 1);
        }
        row.value = exponent(table.alpha, k, row.s);
        row.matches = row.value == row.closed_form;
        row.summable = row.value < -1;
        table.rows.push_back(row);
    }
    return table;
}

double tail_sum(const Rational& exponent_value, Int from) {
    if (exponent_value >= -1) {
        throw ValidationError(fmt::format(
            "tail sum needs an exponent below -1, got {}", exponent_value.str()));
    }
    if (from < 1) throw ValidationError("tail sum starts at a positive integer");
    const double e = static_cast<double>(exponent_value);
    const double x = static_cast<double>(from);
    return std::pow(x, e + 1.0) / (-e - 1.0) + std::pow(x, e);
}

const char* to_string(Prop2Reading r) { return r == Prop2Reading::literal ? "literal" : "order"; }

Prop2Reading parse_reading(const std::string& text) {
    if (text == "literal") return Prop2Reading::literal;
    if (text == "order") return Prop2Reading::order;
    throw ValidationError(fmt::format("unknown reading '{}' (expected literal or order)", text));
}

BigInt prop2_bound(const BigInt& g, const BigInt& l, int multiplier) {
    return g * (BigInt(multiplier) * (l - 1) + 1);
}

BigInt GChain::max_g() const {
    BigInt best = 0;
    for (const auto& [k, value] : g) {
        if (k > 1 && value > best) best = value;
    }
    return best;
}

GChain g_chain(int h, Prop2Reading reading) {
    if (h < 2) throw ValidationError(fmt::format("h must be at least 2, got {}", h));
    GChain chain;
    chain.h = h;
    chain.reading = reading;
    const BigInt bound = 4 * h + 1;
    for (int k = 1; k <= h; ++k) chain.g[k] = 1;
    chain.g[h + 1] = bound;
    for (int k = h + 2; k <= 2 * h; ++k) {
        const int m = reading == Prop2Reading::literal ? h : k;
        chain.g[k] = prop2_bound(bound, chain.g[k - 1], m);
    }
    return chain;
}

IntegerSet prop2_sample(const Prop2Config& cfg, std::size_t index) {
    if (index % 2 == 0) {
        SampleSpec spec{Params::preset(std::max(2, cfg.order), cfg.N, cfg.seed)};
        return Sampler(spec).sample(index);
    }
    std::mt19937_64 rng(stream_word(cfg.seed, index, 0));
    const auto size = std::uniform_int_distribution<Int>(2, std::min<Int>(24, cfg.N))(rng);
    std::vector<Int> population(static_cast<std::size_t>(cfg.N));
    std::iota(population.begin(), population.end(), Int{1});
    std::vector<Int> chosen;
    std::sample(population.begin(), population.end(), std::back_inserter(chosen),
                static_cast<std::size_t>(size), rng);
    return IntegerSet::make(std::move(chosen), cfg.N);
}

namespace {

struct Prop2Outcome {
    enum class Kind { premise_false, premise_unknown, holds, violated } kind = Kind::premise_false;
    std::uint64_t max_count = 0;
    Int n = 0;
    IntegerSet set;
};

}  // namespace

Prop2Result check_prop2(const Prop2Config& cfg) {
    if (cfg.order < 2) throw ValidationError("containment check needs order >= 2");
    if (cfg.g < 1 || cfg.l < 1) throw ValidationError("g and l must be at least 1");
    const BigInt big_bound = prop2_bound(cfg.g, cfg.l, cfg.multiplier);
    const auto bound = static_cast<std::uint64_t>(big_bound);

    std::vector<Prop2Outcome> outcomes(cfg.samples);
    parallel_for(cfg.samples, [&](std::size_t i) {
        auto& out = outcomes[i];
        IntegerSet S = prop2_sample(cfg, i);
        if (!is_Bh_g(S, cfg.order - 1, cfg.l, cfg.N).holds) return;
        BstarVerdict star = is_Bstar_l_g(S, cfg.order, cfg.g, cfg.N, cfg.packing);
        if (star.status == Verdict::fails) return;
        if (star.status == Verdict::unknown) {
            out.kind = Prop2Outcome::Kind::premise_unknown;
            return;
        }
        Counts R = count_nondecreasing(S, cfg.order, cfg.N);
        out.kind = Prop2Outcome::Kind::holds;
        for (std::size_t n = 1; n < R.size(); ++n) {
            out.max_count = std::max(out.max_count, R[n]);
            if (R[n] > bound && out.kind == Prop2Outcome::Kind::holds) {
                out.kind = Prop2Outcome::Kind::violated;
                out.n = static_cast<Int>(n);
            }
        }
        if (out.kind == Prop2Outcome::Kind::violated) out.set = std::move(S);
    });

    Prop2Result result;
    result.samples = cfg.samples;
    result.bound = bound;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        switch (o.kind) {
            case Prop2Outcome::Kind::premise_false: break;
            case Prop2Outcome::Kind::premise_unknown: ++result.premise_unknown; break;
            case Prop2Outcome::Kind::holds:
            case Prop2Outcome::Kind::violated:
                ++result.premise_held;
                result.max_count_under_premise = std::max(result.max_count_under_premise, o.max_count);
                if (o.kind == Prop2Outcome::Kind::violated && !result.counterexample) {
                    result.counterexample = Prop2Counterexample{
                        i, o.set, o.n, count_nondecreasing(o.set, cfg.order, o.n)[static_cast<std::size_t>(o.n)],
                        bound};
                }
                break;
        }
    }
    return result;
}

DecayEstimate estimate_decay(const DecayConfig& cfg) {
    if (cfg.k < 1 || cfg.s < 1) throw ValidationError("k and s must be positive");
    Params params = Params::preset(cfg.h, cfg.N, cfg.seed);
    if (cfg.alpha) params.alpha = *cfg.alpha;
    params.validate();
    if (cfg.fit_from < 1 || cfg.fit_from >= cfg.N) {
        throw ValidationError("fit range must satisfy 1 <= fit_from < N");
    }
    const Sampler sampler(SampleSpec{params});
    DecayEstimate est;
    est.trials = cfg.trials;
    est.ceiling = exponent(params.alpha, cfg.k, cfg.s);
    est.curve = make_bins(geometric_edges(cfg.fit_from, cfg.N, cfg.bins));
    const auto& edges = est.curve.edges;
    const std::size_t bins = est.curve.bins();
    const auto threshold = static_cast<std::uint64_t>(cfg.s);

    std::vector<std::vector<double>> per_trial(cfg.trials, std::vector<double>(bins, 0.0));
    std::vector<std::uint64_t> undecided(cfg.trials, 0);
    parallel_for(cfg.trials, [&](std::size_t t) {
        const IntegerSet A = sampler.sample(t);
        const WindowReps window(A, cfg.k, cfg.N, cfg.packing.walk_budget);
        for (std::size_t b = 0; b < bins; ++b) {
            for (Int n = edges[b]; n < edges[b + 1]; ++n) {
                const std::uint64_t count = window.count(n);
                if (count < threshold || count == 0) continue;
                bool event = threshold <= 1;
                if (!event) {
                    PackingResult res = max_disjoint_family(window.reps(n), cfg.packing);
                    if (res.value >= threshold) {
                        event = true;
                    } else if (res.upper >= threshold) {
                        ++undecided[t];
                    }
                }
                if (event) per_trial[t][b] += 1.0;
            }
        }
    });
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        for (std::size_t b = 0; b < bins; ++b) est.curve.sums[b] += per_trial[t][b];
        est.undecided += undecided[t];
    }
    const std::size_t occupied = nonzero_bins(est.curve);
    if (occupied < cfg.min_bins) {
        throw InsufficientData(fmt::format(
            "event r*_{}(n) >= {} seen in only {} of {} bins (need {})", cfg.k, cfg.s, occupied,
            bins, cfg.min_bins));
    }
    const double trials = static_cast<double>(cfg.trials);
    est.fit = fit_loglog(est.curve, trials);
    est.interval = percentile_interval(
        bootstrap_slopes(per_trial, est.curve, cfg.resamples, stream_word(cfg.seed, 0, 0xb007)), 0.95);
    return est;
}

GrowthEstimate estimate_growth(const GrowthConfig& cfg) {
    const Params params = Params::preset(cfg.h, cfg.N, cfg.seed);
    const Sampler sampler(SampleSpec{params});
    GrowthEstimate est;
    est.sets = cfg.sets;
    est.predicted = Rational(cfg.k) * params.alpha - 1;
    est.curve = make_bins(geometric_edges(cfg.fit_from, cfg.N, cfg.bins));
    est.first_gap_above_half.assign(cfg.sets, 0);

    std::vector<BinnedCurve> partial(cfg.sets, est.curve);
    parallel_for(cfg.sets, [&](std::size_t t) {
        const IntegerSet A = sampler.sample(t);
        const Counts r = count_strict(A, cfg.k, cfg.N);
        for (Int n = cfg.N / 2 + 1; n <= cfg.N; ++n) {
            if (r[static_cast<std::size_t>(n)] == 0) {
                est.first_gap_above_half[t] = n;
                break;
            }
        }
        std::vector<double> series(r.begin(), r.end());
        accumulate(partial[t], series);
    });
    for (std::size_t t = 0; t < cfg.sets; ++t) {
        if (est.first_gap_above_half[t] == 0) ++est.covered;
        for (std::size_t b = 0; b < est.curve.bins(); ++b) est.curve.sums[b] += partial[t].sums[b];
    }
    est.fit = fit_loglog(est.curve, static_cast<double>(cfg.sets));
    return est;
}

}  // namespace sidon
