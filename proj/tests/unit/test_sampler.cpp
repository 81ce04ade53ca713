#include <gtest/gtest.h>

#include <cmath>

#include "sidon/error.hpp"
#include "sidon/sampler.hpp"

using namespace sidon;

namespace {

SampleSpec spec(Rational alpha, Int N, std::uint64_t seed) {
    SampleSpec s;
    s.params.h = 2;
    s.params.alpha = alpha;
    s.params.N = N;
    s.params.seed = seed;
    return s;
}

double direct_sum(double alpha, Int N) {
    double total = 0;
    for (Int n = 1; n <= N; ++n) total += std::pow(static_cast<double>(n), alpha - 1);
    return total;
}

// Sample mean and standard error of |A| over `trials` trials.
std::pair<double, double> size_stats(const Sampler& s, int trials) {
    double sum = 0, sq = 0;
    for (int t = 0; t < trials; ++t) {
        const double k = static_cast<double>(s.sample(static_cast<std::uint64_t>(t)).size());
        sum += k;
        sq += k * k;
    }
    const double mean = sum / trials;
    const double var = (sq - trials * mean * mean) / (trials - 1);
    return {mean, std::sqrt(var / trials)};
}

}  // namespace

TEST(Sampler, AlphaOneTakesEverything) {
    for (std::uint64_t seed : {0ULL, 1ULL, 987654321ULL}) {
        EXPECT_EQ(sample_set(spec(1, 5, seed)), IntegerSet::interval(5));
    }
}

TEST(Sampler, OneIsAlwaysIncluded) {
    const Sampler s(spec(Rational(2, 9), 1000, 3));
    for (std::uint64_t t = 0; t < 50; ++t) EXPECT_TRUE(s.sample(t).contains(1));
}

TEST(Sampler, DeterministicAndTrialIndependent) {
    const auto sp = spec(Rational(2, 9), 10000, 11);
    const Sampler s(sp);
    EXPECT_EQ(s.sample(4), s.sample(4));
    EXPECT_EQ(s.sample(4), sample_set(sp, 4));
    EXPECT_FALSE(s.sample(4) == s.sample(5));
    EXPECT_EQ(stream_word(1, 2, 3), stream_word(1, 2, 3));
    EXPECT_NE(stream_word(1, 2, 3), stream_word(1, 3, 2));
}

TEST(Sampler, WindowPrefixConsistency) {
    // The draw for n depends only on (seed, trial, n).
    const IntegerSet small = Sampler(spec(Rational(1, 2), 500, 9)).sample(2);
    const IntegerSet big = Sampler(spec(Rational(1, 2), 5000, 9)).sample(2);
    EXPECT_EQ(big.truncated(500), small);
}

TEST(Sampler, InclusionProbability) {
    EXPECT_DOUBLE_EQ(inclusion_probability(0.5, 4), 0.5);
    EXPECT_DOUBLE_EQ(inclusion_probability(1.0, 17), 1.0);
    EXPECT_DOUBLE_EQ(inclusion_probability(2.0 / 9, 1), 1.0);
}

TEST(Sampler, ExpectedCount) {
    EXPECT_DOUBLE_EQ(expected_count(spec(1, 10, 0), 7), 7.0);
    EXPECT_NEAR(expected_count(spec(Rational(1, 2), 10, 0), 4),
                1 + 1 / std::sqrt(2.0) + 1 / std::sqrt(3.0) + 0.5, 1e-12);
    EXPECT_NEAR(expected_count(spec(Rational(1, 2), 10, 0), 4), 2.784457, 1e-6);
    EXPECT_DOUBLE_EQ(expected_count(spec(Rational(2, 9), 10, 0), 1), 1.0);
    EXPECT_THROW(expected_count(spec(Rational(1, 2), 10, 0), 11), ValidationError);
}

TEST(Sampler, SparseLimitMeanWithinThreeSE) {
    const Rational alpha(1, 1000);
    const Sampler s(spec(alpha, 10000, 5));
    const auto [mean, se] = size_stats(s, 1000);
    const double expected = direct_sum(0.001, 10000);
    EXPECT_LT(std::abs(mean - expected), 3 * se);
    EXPECT_NEAR(expected, std::log(10000.0) + 0.5772, 0.2);
}

TEST(Sampler, PresetMeanWithinThreeSE) {
    const Int N = 100000;
    const Sampler s(spec(Rational(2, 9), N, 77));
    const auto [mean, se] = size_stats(s, 1000);
    const double expected = direct_sum(2.0 / 9, N);
    EXPECT_NEAR(expected_count(s.spec(), N), expected, 1e-7);
    EXPECT_LT(std::abs(mean - expected), 3 * se);
    EXPECT_NEAR(expected, 4.5 * std::pow(static_cast<double>(N), 2.0 / 9), 5.0);
}
