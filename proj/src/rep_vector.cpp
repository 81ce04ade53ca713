#include "sidon/rep_vector.hpp"

#include <algorithm>
#include <numeric>

#include "sidon/error.hpp"

namespace sidon {

RepVector::RepVector(std::vector<Int> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ValidationError("representation vector needs at least one coordinate");
    if (std::any_of(coords_.begin(), coords_.end(), [](Int c) { return c < 1; })) {
        throw ValidationError("representation coordinates must be positive");
    }
    std::sort(coords_.begin(), coords_.end());
}

Int RepVector::sum() const noexcept {
    return std::accumulate(coords_.begin(), coords_.end(), Int{0});
}

std::vector<Int> RepVector::support() const {
    std::vector<Int> out;
    std::unique_copy(coords_.begin(), coords_.end(), std::back_inserter(out));
    return out;
}

bool RepVector::disjoint_from(const RepVector& other) const {
    // Both coordinate lists are sorted, so a merge walk suffices.
    auto a = coords_.begin();
    auto b = other.coords_.begin();
    while (a != coords_.end() && b != other.coords_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

std::vector<Int> support(const RepVector& v) { return v.support(); }

}  // namespace sidon
