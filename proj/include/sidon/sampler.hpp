#pragma once

#include <cstdint>
#include <vector>

#include "sidon/integer_set.hpp"
#include "sidon/params.hpp"

namespace sidon {

// Random-set model on [1, N]: n is included independently with probability
// min(1, n^(alpha - 1)).
struct SampleSpec {
    Params params;
};

double inclusion_probability(double alpha, Int n);

// Counter-based stream: the uniform draw for (seed, trial, n) does not depend
// on which other draws were made or in what order.
std::uint64_t stream_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t n);
double stream_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t n);

// Caches the inclusion probabilities for one (alpha, N) so that many trials
// can be drawn cheaply.
class Sampler {
public:
    explicit Sampler(const SampleSpec& spec);

    IntegerSet sample(std::uint64_t trial = 0) const;
    double probability(Int n) const { return probabilities_[static_cast<std::size_t>(n)]; }
    const SampleSpec& spec() const noexcept { return spec_; }

private:
    SampleSpec spec_;
    std::vector<double> probabilities_;  // index n, entry 0 unused
};

IntegerSet sample_set(const SampleSpec& spec, std::uint64_t trial = 0);

// Exact partial sum of inclusion probabilities over [1, up_to] (up_to <= N).
double expected_count(const SampleSpec& spec, Int up_to);

}  // namespace sidon
