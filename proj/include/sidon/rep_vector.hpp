#pragma once

#include <span>
#include <vector>

#include "sidon/integer_set.hpp"

namespace sidon {

/// One representation n = a_1 + ... + a_h with a_1 <= ... <= a_h.
class RepVector {
public:
    RepVector() = default;
    // Canonicalizes by sorting. Throws ValidationError when fewer than one
    // coordinate is given or any coordinate is nonpositive.
    explicit RepVector(std::vector<Int> coords);

    std::span<const Int> coords() const noexcept { return coords_; }
    int order() const noexcept { return static_cast<int>(coords_.size()); }
    Int sum() const noexcept;
    // Set(x): the distinct coordinates, ascending.
    std::vector<Int> support() const;
    bool disjoint_from(const RepVector& other) const;

    friend bool operator==(const RepVector&, const RepVector&) = default;
    friend auto operator<=>(const RepVector&, const RepVector&) = default;

private:
    std::vector<Int> coords_;
};

std::vector<Int> support(const RepVector& v);

}  // namespace sidon
