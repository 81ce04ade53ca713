#include "sidon/packing.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "sidon/error.hpp"

namespace sidon {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

Enumeration enumerate_reps(const IntegerSet& A, int l, Int n, std::uint64_t budget) {
    return enumerate_representations(A, l, n, budget);
}

namespace {

using Row = std::vector<std::uint64_t>;

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }
    std::size_t first() const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w]) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
        }
        return npos;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }
    void subtract(const Bitset& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<std::uint64_t> words_;
};

// Max clique in the disjointness graph (= max independent set in the conflict
// graph), Tomita-style colour bounds.
class CliqueSearch {
public:
    CliqueSearch(std::vector<Bitset> compat, std::uint64_t node_limit)
        : compat_(std::move(compat)), node_limit_(node_limit) {}

    void seed(std::vector<std::size_t> clique) { best_ = std::move(clique); }

    // Returns false when the node limit stopped the search.
    bool run(std::size_t vertices) {
        Bitset all(vertices);
        for (std::size_t v = 0; v < vertices; ++v) all.set(v);
        std::vector<std::size_t> order;
        std::vector<std::size_t> colors;
        colour(all, order, colors);
        root_bound_ = colors.empty() ? 0 : colors.back();
        expand(all, order, colors);
        return !aborted_;
    }

    const std::vector<std::size_t>& best() const { return best_; }
    std::size_t root_bound() const { return root_bound_; }

private:
    // Greedy partition of P into classes that are cliques of the conflict
    // graph; a disjoint family takes at most one vertex per class.
    void colour(Bitset uncoloured, std::vector<std::size_t>& order, std::vector<std::size_t>& colors) const {
        order.clear();
        colors.clear();
        std::size_t k = 0;
        while (uncoloured.any()) {
            ++k;
            Bitset candidates = uncoloured;
            for (std::size_t v = candidates.first(); v != Bitset::npos; v = candidates.first()) {
                candidates.reset(v);
                uncoloured.reset(v);
                candidates.subtract(compat_[v]);
                order.push_back(v);
                colors.push_back(k);
            }
        }
    }

    void expand(Bitset P, const std::vector<std::size_t>& order, const std::vector<std::size_t>& colors) {
        if (aborted_) return;
        if (++nodes_ > node_limit_) {
            aborted_ = true;
            return;
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current_.size() + colors[i] <= best_.size()) return;
            const std::size_t v = order[i];
            current_.push_back(v);
            Bitset next = P;
            next &= compat_[v];
            if (!next.any()) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                std::vector<std::size_t> sub_order;
                std::vector<std::size_t> sub_colors;
                colour(next, sub_order, sub_colors);
                expand(next, sub_order, sub_colors);
            }
            current_.pop_back();
            P.reset(v);
            if (aborted_) return;
        }
    }

    std::vector<Bitset> compat_;
    std::uint64_t node_limit_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::size_t root_bound_ = 0;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

std::vector<std::size_t> greedy_family(std::span<const RepVector> reps) {
    std::vector<std::size_t> idx(reps.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::size_t> sizes(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) sizes[i] = reps[i].support().size();
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (sizes[a] != sizes[b]) return sizes[a] < sizes[b];
        return reps[a] < reps[b];
    });
    std::vector<std::size_t> chosen;
    for (std::size_t i : idx) {
        bool ok = std::all_of(chosen.begin(), chosen.end(),
                              [&](std::size_t c) { return reps[i].disjoint_from(reps[c]); });
        if (ok) chosen.push_back(i);
    }
    return chosen;
}

// Greedy hitting set: every rep through one element pairwise conflicts, so
// the number of elements picked bounds any disjoint family.
std::uint64_t hitting_bound(std::span<const RepVector> reps) {
    std::vector<std::vector<Int>> supports;
    supports.reserve(reps.size());
    for (const auto& r : reps) supports.push_back(r.support());
    std::vector<bool> covered(reps.size(), false);
    std::size_t remaining = reps.size();
    std::uint64_t picks = 0;
    while (remaining > 0) {
        std::vector<std::pair<Int, std::size_t>> tally;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (covered[i]) continue;
            for (Int e : supports[i]) tally.emplace_back(e, 0);
        }
        std::sort(tally.begin(), tally.end());
        Int best_elem = 0;
        std::size_t best_count = 0;
        for (std::size_t i = 0; i < tally.size();) {
            std::size_t j = i;
            while (j < tally.size() && tally[j].first == tally[i].first) ++j;
            if (j - i > best_count) {
                best_count = j - i;
                best_elem = tally[i].first;
            }
            i = j;
        }
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (covered[i]) continue;
            if (std::binary_search(supports[i].begin(), supports[i].end(), best_elem)) {
                covered[i] = true;
                --remaining;
            }
        }
        ++picks;
    }
    return picks;
}

PackingResult family_result(std::span<const RepVector> reps, const std::vector<std::size_t>& chosen) {
    PackingResult out;
    out.value = chosen.size();
    out.upper = chosen.size();
    for (std::size_t i : chosen) out.witness.push_back(reps[i]);
    std::sort(out.witness.begin(), out.witness.end());
    return out;
}

}  // namespace

PackingResult max_disjoint_family(std::span<const RepVector> reps, const PackingConfig& cfg) {
    if (reps.empty()) return {};
    std::vector<std::size_t> greedy = greedy_family(reps);
    if (reps.size() > cfg.max_vertices) {
        PackingResult out = family_result(reps, greedy);
        out.certified = false;
        out.upper = std::max(out.value, hitting_bound(reps));
        out.certified = out.upper == out.value;
        return out;
    }
    const std::size_t n = reps.size();
    std::vector<Bitset> compat(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (reps[i].disjoint_from(reps[j])) {
                compat[i].set(j);
                compat[j].set(i);
            }
        }
    }
    CliqueSearch search(std::move(compat), cfg.node_limit);
    search.seed(greedy);
    const bool finished = search.run(n);
    PackingResult out = family_result(reps, search.best());
    if (!finished) {
        out.upper = std::max<std::uint64_t>(
            out.value, std::min<std::uint64_t>(search.root_bound(), hitting_bound(reps)));
        out.certified = out.upper == out.value;
    }
    return out;
}

PackingResult r_star(const IntegerSet& A, int l, Int n, const PackingConfig& cfg) {
    Enumeration e = enumerate_reps(A, l, n, cfg.enumeration_budget);
    if (e.complete) return max_disjoint_family(e.reps, cfg);
    // A disjoint family among a partial list is still disjoint. For the upper
    // bound: at most one representation has a single-element support, the
    // rest use at least two elements below n each.
    PackingConfig greedy_only = cfg;
    greedy_only.max_vertices = 0;
    PackingResult out = max_disjoint_family(e.reps, greedy_only);
    auto below = static_cast<std::uint64_t>(A.truncated(n - 1).size());
    out.upper = std::max(out.value, 1 + below / 2);
    out.certified = out.upper == out.value;
    return out;
}

WindowReps::WindowReps(const IntegerSet& A, int l, Int N, std::uint64_t budget) : l_(l), N_(N) {
    if (l < 1) throw ValidationError(fmt::format("order must be at least 1, got {}", l));
    const IntegerSet window = A.truncated(N);
    const auto elems = window.elements();
    const auto L = static_cast<std::size_t>(l);
    std::vector<Int> flat;
    std::vector<Int> sums;
    std::vector<Int> current(L);

    // Non-decreasing tuples, lexicographic; prune once the cheapest
    // completion (repeat the current element) overshoots N.
    auto walk = [&](auto&& self, std::size_t pos, std::size_t start, Int sum) -> void {
        for (std::size_t i = start; i < elems.size(); ++i) {
            const Int a = elems[i];
            if (sum + a * static_cast<Int>(L - pos) > N) break;
            current[pos] = a;
            if (pos + 1 == L) {
                if (sums.size() >= budget) {
                    throw BudgetExceeded(fmt::format(
                        "window scan of order {} up to {} exceeds {} representations", l, N, budget));
                }
                flat.insert(flat.end(), current.begin(), current.end());
                sums.push_back(sum + a);
            } else {
                self(self, pos + 1, i, sum + a);
            }
        }
    };
    walk(walk, 0, 0, 0);

    const auto width = static_cast<std::size_t>(std::max<Int>(N, 0)) + 1;
    offsets_.assign(width + 1, 0);
    for (Int s : sums) ++offsets_[static_cast<std::size_t>(s) + 1];
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    coords_.resize(flat.size());
    for (std::size_t r = 0; r < sums.size(); ++r) {
        const std::uint64_t slot = cursor[static_cast<std::size_t>(sums[r])]++;
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(r * L), L,
                    coords_.begin() + static_cast<std::ptrdiff_t>(slot * L));
    }
}

std::vector<RepVector> WindowReps::reps(Int n) const {
    const auto L = static_cast<std::size_t>(l_);
    const auto i = static_cast<std::size_t>(n);
    std::vector<RepVector> out;
    out.reserve(offsets_[i + 1] - offsets_[i]);
    for (std::uint64_t r = offsets_[i]; r < offsets_[i + 1]; ++r) {
        auto first = coords_.begin() + static_cast<std::ptrdiff_t>(r * L);
        out.emplace_back(std::vector<Int>(first, first + static_cast<std::ptrdiff_t>(L)));
    }
    return out;
}

std::vector<PackingResult> r_star_profile(const IntegerSet& A, int l, Int N, const PackingConfig& cfg) {
    WindowReps window(A, l, N, cfg.walk_budget);
    std::vector<PackingResult> out(static_cast<std::size_t>(std::max<Int>(N, 0)) + 1);
    for (Int n = 1; n <= N; ++n) {
        auto& slot = out[static_cast<std::size_t>(n)];
        const std::uint64_t count = window.count(n);
        if (count <= 1) {
            slot.value = slot.upper = count;
            continue;
        }
        slot = max_disjoint_family(window.reps(n), cfg);
        slot.witness.clear();
    }
    return out;
}

Int BoundScan::first_problem() const {
    Int a = violations.empty() ? 0 : violations.front();
    Int b = unknown.empty() ? 0 : unknown.front();
    if (a == 0) return b;
    if (b == 0) return a;
    return std::min(a, b);
}

BoundScan scan_bound(const IntegerSet& A, int l, std::uint64_t bound, Int N, const PackingConfig& cfg) {
    WindowReps window(A, l, N, cfg.walk_budget);
    BoundScan scan;
    for (Int n = 1; n <= N; ++n) {
        const std::uint64_t count = window.count(n);
        if (count <= bound) {
            scan.max_lower = std::max(scan.max_lower, std::min<std::uint64_t>(count, 1));
            continue;
        }
        PackingResult res = max_disjoint_family(window.reps(n), cfg);
        scan.max_lower = std::max(scan.max_lower, res.value);
        if (res.value > bound) {
            scan.violations.push_back(n);
        } else if (res.upper > bound) {
            scan.unknown.push_back(n);
        }
    }
    return scan;
}

BstarVerdict is_Bstar_l_g(const IntegerSet& A, int l, std::uint64_t g, Int N, const PackingConfig& cfg) {
    if (g < 1) throw ValidationError("g must be at least 1");
    BoundScan scan = scan_bound(A, l, g, N, cfg);
    BstarVerdict v;
    if (!scan.violations.empty()) {
        v.status = Verdict::fails;
        v.witness_n = scan.violations.front();
    } else if (!scan.unknown.empty()) {
        v.status = Verdict::unknown;
        v.witness_n = scan.unknown.front();
    } else {
        return v;
    }
    v.witness = r_star(A, l, v.witness_n, cfg);
    return v;
}

}  // namespace sidon
