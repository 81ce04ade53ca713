#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "sidon/integer_set.hpp"

namespace sidon {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Experiment parameters. alpha is exact; the preset is alpha = 2/(4h+1).
struct Params {
    int h = 2;
    Rational alpha{2, 9};
    Int N = 1;
    std::uint64_t seed = 0;

    static Params preset(int h, Int N, std::uint64_t seed);

    // Throws ValidationError unless h >= 2, N >= 1 and 0 < alpha <= 1.
    void validate() const;
    double alpha_value() const { return static_cast<double>(alpha); }
};

Rational preset_alpha(int h);

}  // namespace sidon
