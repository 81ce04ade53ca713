#include "sidon/sampler.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sidon/error.hpp"

namespace sidon {

namespace {

constexpr std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double inclusion_probability(double alpha, Int n) {
    if (n <= 1) return 1.0;
    return std::min(1.0, std::pow(static_cast<double>(n), alpha - 1.0));
}

std::uint64_t stream_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t n) {
    std::uint64_t key = splitmix(splitmix(seed) ^ (trial * 0xd1b54a32d192ed03ULL));
    return splitmix(key ^ splitmix(n));
}

double stream_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t n) {
    return static_cast<double>(stream_word(seed, trial, n) >> 11) * 0x1.0p-53;
}

Sampler::Sampler(const SampleSpec& spec) : spec_(spec) {
    spec_.params.validate();
    const double alpha = spec_.params.alpha_value();
    probabilities_.resize(static_cast<std::size_t>(spec_.params.N) + 1, 0.0);
    for (Int n = 1; n <= spec_.params.N; ++n) {
        probabilities_[static_cast<std::size_t>(n)] = inclusion_probability(alpha, n);
    }
}

IntegerSet Sampler::sample(std::uint64_t trial) const {
    const auto& p = spec_.params;
    std::vector<Int> chosen;
    for (Int n = 1; n <= p.N; ++n) {
        double prob = probabilities_[static_cast<std::size_t>(n)];
        if (prob >= 1.0 || stream_uniform(p.seed, trial, static_cast<std::uint64_t>(n)) < prob) {
            chosen.push_back(n);
        }
    }
    return IntegerSet::make(std::move(chosen), p.N);
}

IntegerSet sample_set(const SampleSpec& spec, std::uint64_t trial) {
    return Sampler(spec).sample(trial);
}

double expected_count(const SampleSpec& spec, Int up_to) {
    spec.params.validate();
    if (up_to > spec.params.N) {
        throw ValidationError(fmt::format("up_to {} exceeds window {}", up_to, spec.params.N));
    }
    const double alpha = spec.params.alpha_value();
    double total = 0.0;
    // Summed from the small terms upward to limit rounding.
    for (Int n = up_to; n >= 1; --n) total += inclusion_probability(alpha, n);
    return total;
}

}  // namespace sidon
