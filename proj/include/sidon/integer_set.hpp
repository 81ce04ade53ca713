#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sidon {

using Int = std::int64_t;

/**
 * Finite set of positive integers known on the window [1, window_max].
 *
 * Elements are kept sorted and deduplicated, with a dense bit table for O(1)
 * membership. Immutable once built; derived sets are returned by value.
 */
class IntegerSet {
public:
    IntegerSet() = default;

    // Sorts and deduplicates. Throws ValidationError on nonpositive elements
    // or elements beyond window_max.
    static IntegerSet make(std::vector<Int> elements, Int window_max);

    // Every integer in [1, n].
    static IntegerSet interval(Int n);

    std::span<const Int> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    Int window_max() const noexcept { return window_max_; }
    Int min() const { return elements_.front(); }
    Int max() const { return elements_.back(); }

    bool contains(Int value) const noexcept {
        if (value < 1 || value > window_max_) return false;
        auto u = static_cast<std::uint64_t>(value);
        return (bits_[u >> 6] >> (u & 63)) & 1U;
    }

    // Elements <= limit, on window min(limit, window_max).
    IntegerSet truncated(Int limit) const;
    // Elements > cut, same window. Used for prefix deletions A \ (A ∩ [1, cut]).
    IntegerSet without_prefix(Int cut) const;
    // Elements <= cut, same window.
    IntegerSet prefix(Int cut) const;
    IntegerSet with_element(Int value) const;
    IntegerSet difference(const IntegerSet& other) const;
    bool is_subset_of(const IntegerSet& other) const;

    friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
        return a.window_max_ == b.window_max_ && a.elements_ == b.elements_;
    }

private:
    IntegerSet(std::vector<Int> sorted_unique, Int window_max);

    std::vector<Int> elements_;
    std::vector<std::uint64_t> bits_;
    Int window_max_ = 0;
};

}  // namespace sidon
