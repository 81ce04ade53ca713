#include "sidon/integer_set.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "sidon/error.hpp"

namespace sidon {

IntegerSet::IntegerSet(std::vector<Int> sorted_unique, Int window_max)
    : elements_(std::move(sorted_unique)),
      bits_(static_cast<std::size_t>(window_max / 64 + 1), 0),
      window_max_(window_max) {
    for (Int e : elements_) {
        auto u = static_cast<std::uint64_t>(e);
        bits_[u >> 6] |= std::uint64_t{1} << (u & 63);
    }
}

IntegerSet IntegerSet::make(std::vector<Int> elements, Int window_max) {
    if (window_max < 0) {
        throw ValidationError(fmt::format("window_max must be nonnegative, got {}", window_max));
    }
    for (Int e : elements) {
        if (e < 1) throw ValidationError(fmt::format("set element {} is not positive", e));
        if (e > window_max) {
            throw ValidationError(fmt::format("set element {} exceeds window {}", e, window_max));
        }
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return IntegerSet(std::move(elements), window_max);
}

IntegerSet IntegerSet::interval(Int n) {
    std::vector<Int> all(static_cast<std::size_t>(std::max<Int>(n, 0)));
    std::iota(all.begin(), all.end(), Int{1});
    return IntegerSet(std::move(all), std::max<Int>(n, 0));
}

IntegerSet IntegerSet::truncated(Int limit) const {
    Int window = std::min(limit, window_max_);
    auto end = std::upper_bound(elements_.begin(), elements_.end(), window);
    return IntegerSet(std::vector<Int>(elements_.begin(), end), std::max<Int>(window, 0));
}

IntegerSet IntegerSet::without_prefix(Int cut) const {
    auto begin = std::upper_bound(elements_.begin(), elements_.end(), cut);
    return IntegerSet(std::vector<Int>(begin, elements_.end()), window_max_);
}

IntegerSet IntegerSet::prefix(Int cut) const {
    auto end = std::upper_bound(elements_.begin(), elements_.end(), cut);
    return IntegerSet(std::vector<Int>(elements_.begin(), end), window_max_);
}

IntegerSet IntegerSet::with_element(Int value) const {
    std::vector<Int> copy = elements_;
    copy.push_back(value);
    return make(std::move(copy), std::max(window_max_, value));
}

IntegerSet IntegerSet::difference(const IntegerSet& other) const {
    std::vector<Int> out;
    std::set_difference(elements_.begin(), elements_.end(), other.elements_.begin(),
                        other.elements_.end(), std::back_inserter(out));
    return IntegerSet(std::move(out), window_max_);
}

bool IntegerSet::is_subset_of(const IntegerSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
}

}  // namespace sidon
