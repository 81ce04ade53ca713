#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sidon/integer_set.hpp"
#include "sidon/packing.hpp"
#include "sidon/params.hpp"
#include "sidon/stats.hpp"

namespace sidon {

// --- Exponents of the tail bound P(r*_k(n) >= s) <= C n^((k alpha - 1) s) ---

Rational exponent(const Rational& alpha, int k, int s);
Rational exponent(int h, int k, int s);  // alpha = 2/(4h+1)

struct ExponentRow {
    int k = 0;
    int s = 0;
    Rational value;        // (k alpha - 1) s
    Rational closed_form;  // -(8h-4k+2)/(4h+1), times (2h+1) when s = 4h+2
    bool matches = false;
    bool summable = false;  // value < -1
};

struct ExponentTable {
    int h = 0;
    Rational alpha;
    std::vector<ExponentRow> rows;  // s = 2 for 2 <= k <= h, s = 4h+2 for h < k <= 2h
};

ExponentTable exponent_table(int h);

// Upper bound on sum_{n >= from} n^exponent by the integral test:
// from^(e+1)/(-e-1) + from^e. Throws ValidationError unless exponent < -1.
double tail_sum(const Rational& exponent, Int from);

// --- Multiplicity chain g_k ---

// How the multiplier in g (m (l - 1) + 1) is chosen when the containment
// B*_k[g] ∩ B_{k-1}[l] ⊆ B_k[g (m (l-1) + 1)] is applied at order k: `literal`
// keeps m = h fixed, `order` uses m = k.
enum class Prop2Reading { literal, order };

const char* to_string(Prop2Reading r);
Prop2Reading parse_reading(const std::string& text);

BigInt prop2_bound(const BigInt& g, const BigInt& l, int multiplier);

struct GChain {
    int h = 0;
    Prop2Reading reading = Prop2Reading::literal;
    std::map<int, BigInt> g;  // k = 1 .. 2h

    BigInt max_g() const;  // max over 1 < k <= 2h
    BigInt G(std::uint64_t w) const { return (BigInt(1) << w) * max_g(); }
};

GChain g_chain(int h, Prop2Reading reading = Prop2Reading::literal);

// --- Empirical containment check ---

struct Prop2Config {
    std::size_t samples = 1000;
    int order = 2;       // conclusion order k: B*_k[g] ∩ B_{k-1}[l] ⊆ B_k[bound]
    std::uint64_t g = 1;
    std::uint64_t l = 1;
    int multiplier = 2;  // m in g (m (l - 1) + 1)
    Int N = 500;
    std::uint64_t seed = 1;
    PackingConfig packing;
};

struct Prop2Counterexample {
    std::size_t sample = 0;
    IntegerSet set;
    Int n = 0;
    std::uint64_t count = 0;  // R_k(n)
    std::uint64_t bound = 0;
};

struct Prop2Result {
    std::size_t samples = 0;
    std::size_t premise_held = 0;
    std::size_t premise_unknown = 0;  // r* uncertified, sample skipped
    std::uint64_t bound = 0;
    std::uint64_t max_count_under_premise = 0;
    std::optional<Prop2Counterexample> counterexample;
};

// Random sets for the containment check: even samples come from the
// inclusion model at alpha = 2/(4 order + 1), odd samples are uniform
// subsets of [1, N] with 2..24 elements.
IntegerSet prop2_sample(const Prop2Config& cfg, std::size_t index);

Prop2Result check_prop2(const Prop2Config& cfg);

// --- Monte Carlo exponent estimates ---

struct DecayConfig {
    int h = 2;
    std::optional<Rational> alpha;  // defaults to 2/(4h+1)
    int k = 2;
    int s = 2;
    Int N = 100'000;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    Int fit_from = 1000;
    std::size_t bins = 40;
    std::size_t min_bins = 30;
    std::size_t resamples = 1000;
    PackingConfig packing;
};

struct DecayEstimate {
    LineFit fit;          // log frequency against log n
    Interval interval;    // 95% bootstrap percentile interval for the slope
    Rational ceiling;     // (k alpha - 1) s
    BinnedCurve curve;    // event counts per bin, pooled over trials
    std::size_t trials = 0;
    std::uint64_t undecided = 0;  // (trial, n) pairs whose r* stayed uncertified
};

/// Frequency of r*_{k,A}(n) >= s over sampled sets, pooled in geometric bins
/// of [fit_from, N] and fitted on a log-log scale. Throws InsufficientData
/// when fewer than min_bins bins saw the event.
DecayEstimate estimate_decay(const DecayConfig& cfg);

struct GrowthConfig {
    int h = 2;
    int k = 5;  // order of the strict count r_k
    Int N = 100'000;
    std::size_t sets = 30;
    std::uint64_t seed = 1;
    Int fit_from = 1000;
    std::size_t bins = 40;
};

struct GrowthEstimate {
    LineFit fit;         // log mean r_k(n) against log n
    Rational predicted;  // k alpha - 1
    std::size_t sets = 0;
    std::size_t covered = 0;  // sets with r_k(n) > 0 on all of (N/2, N]
    std::vector<Int> first_gap_above_half;  // per set, 0 when covered
    BinnedCurve curve;
};

GrowthEstimate estimate_growth(const GrowthConfig& cfg);

}  // namespace sidon
