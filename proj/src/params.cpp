#include "sidon/params.hpp"

#include <fmt/format.h>

#include "sidon/error.hpp"

namespace sidon {

Rational preset_alpha(int h) { return Rational(2, 4 * h + 1); }

Params Params::preset(int h, Int N, std::uint64_t seed) {
    Params p;
    p.h = h;
    p.alpha = preset_alpha(h);
    p.N = N;
    p.seed = seed;
    p.validate();
    return p;
}

void Params::validate() const {
    if (h < 2) throw ValidationError(fmt::format("h must be at least 2, got {}", h));
    if (N < 1) throw ValidationError(fmt::format("N must be positive, got {}", N));
    if (alpha <= 0 || alpha > 1) {
        throw ValidationError(fmt::format("alpha must lie in (0, 1], got {}", alpha.str()));
    }
}

}  // namespace sidon
