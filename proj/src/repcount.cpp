#include "ascpow/repcount.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ascpow/errors.hpp"
#include "ascpow/intmath.hpp"
#include "ascpow/kernels.hpp"

namespace ascpow {

namespace {

constexpr std::uint64_t kDirectCap = 1'000'000ULL;
constexpr std::uint64_t kMitmCap = 100'000'000ULL;

bool pow_leq(std::uint64_t x, int k, std::uint64_t n, std::uint64_t& out) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (x != 0 && r > n / x) return false;
        r *= x;
    }
    out = r;
    return r <= n;
}

// Values x^k for x in [x_min, iroot(n, k)].
std::vector<std::uint64_t> power_values(int k, std::uint64_t n, std::uint64_t x_min) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = x_min;; ++x) {
        std::uint64_t p;
        if (!pow_leq(x, k, n, p)) break;
        out.push_back(p);
    }
    return out;
}

std::uint64_t count_direct_lists(std::uint64_t n,
                                 const std::vector<std::vector<std::uint64_t>>& lists) {
    std::size_t depth = lists.size();
    if (depth == 0) return n == 0 ? 1 : 0;
    // Nested enumeration over the short lists; the longest list goes last and
    // is resolved by binary search.
    std::vector<const std::vector<std::uint64_t>*> order;
    order.reserve(depth);
    for (const auto& l : lists) order.push_back(&l);
    std::sort(order.begin(), order.end(),
              [](const auto* a, const auto* b) { return a->size() < b->size(); });
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
        const auto& vals = *order[i];
        if (i + 1 == depth) {
            auto [lo, hi] = std::equal_range(vals.begin(), vals.end(), left);
            count += static_cast<std::uint64_t>(hi - lo);
            return;
        }
        for (std::uint64_t v : vals) {
            if (v > left) break;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, n);
    return count;
}

std::uint64_t count_mitm_lists(std::uint64_t n,
                               const std::vector<std::vector<std::uint64_t>>& lists) {
    const std::size_t r = lists.size();
    if (r == 0) return n == 0 ? 1 : 0;
    if (r == 1) {
        return static_cast<std::uint64_t>(std::count(lists[0].begin(), lists[0].end(), n));
    }
    // Pick the subset split balancing the two half-sum array sizes; ties by
    // the smaller larger-half, then by mask for determinism.
    double best_balance = 0.0, best_larger = 0.0;
    unsigned best_mask = 1;
    bool first = true;
    for (unsigned mask = 1; mask + 1 < (1u << r); ++mask) {
        double left = 1.0, right = 1.0;
        for (std::size_t i = 0; i < r; ++i) {
            double sz = static_cast<double>(lists[i].size());
            if (mask & (1u << i)) left *= sz; else right *= sz;
        }
        double balance = std::abs(left - right);
        double larger = std::max(left, right);
        if (first || balance < best_balance ||
            (balance == best_balance && larger < best_larger)) {
            first = false;
            best_balance = balance;
            best_larger = larger;
            best_mask = mask;
        }
    }
    auto half_sums = [&](bool side_in_mask) {
        std::vector<std::uint64_t> sums{0};
        for (std::size_t i = 0; i < r; ++i) {
            if (((best_mask >> i) & 1u) != static_cast<unsigned>(side_in_mask)) continue;
            std::vector<std::uint64_t> next;
            next.reserve(sums.size() * lists[i].size());
            for (std::uint64_t s : sums) {
                for (std::uint64_t v : lists[i]) {
                    if (v > n || s + v > n) break; // lists ascending
                    next.push_back(s + v);
                }
            }
            sums = std::move(next);
        }
        return sums;
    };
    std::vector<std::uint64_t> left = half_sums(true);
    std::vector<std::uint64_t> right = half_sums(false);
    std::sort(right.begin(), right.end());
    std::uint64_t count = 0;
    for (std::uint64_t s : left) {
        if (s > n) continue;
        auto [lo, hi] = std::equal_range(right.begin(), right.end(), n - s);
        count += static_cast<std::uint64_t>(hi - lo);
    }
    return count;
}

std::vector<std::vector<std::uint64_t>> full_lists(std::uint64_t n, const CountConfig& cfg) {
    std::vector<std::vector<std::uint64_t>> lists;
    for (int k : cfg.K.members()) {
        lists.push_back(power_values(k, n, cfg.allow_zero ? 0 : 1));
    }
    return lists;
}

} // namespace

std::uint64_t count_representations(std::uint64_t n, const CountConfig& cfg,
                                    CountAlgorithm alg) {
    if (cfg.K.size() > 8) {
        throw ScaleError("count_representations: |K| capped at 8 exponents, got " +
                         std::to_string(cfg.K.size()));
    }
    if (alg == CountAlgorithm::Direct && n > kDirectCap) {
        throw ScaleError("count_representations: direct enumeration capped at n <= 1e6, got " +
                         std::to_string(n));
    }
    if (n > kMitmCap) {
        throw ScaleError("count_representations: capped at n <= 1e8, got " + std::to_string(n));
    }
    if (cfg.restricted) {
        return count_in_ranges(n, restricted_ranges(n, cfg.K, cfg.gamma), alg);
    }
    auto lists = full_lists(n, cfg);
    switch (alg) {
        case CountAlgorithm::Direct: return count_direct_lists(n, lists);
        case CountAlgorithm::MeetInMiddle: return count_mitm_lists(n, lists);
        case CountAlgorithm::Auto:
        default:
            return n <= kDirectCap ? count_direct_lists(n, lists) : count_mitm_lists(n, lists);
    }
}

RestrictedRanges restricted_ranges(std::uint64_t n, const ExponentSet& K, double gamma) {
    if (n < 1) throw PreconditionError("restricted_ranges: n must be >= 1");
    if (!(gamma > 0.0)) throw PreconditionError("restricted_ranges: gamma must be positive");
    RestrictedRanges out;
    for (int k : K.members()) {
        out.ks.push_back(k);
        std::vector<std::uint64_t> vals;
        auto ku = static_cast<unsigned>(k);
        if (k <= 6) {
            // Dyadic window [floor(n^{1/k}) + 1, floor(2 n^{1/k})].
            std::uint64_t lo = iroot(n, ku) + 1;
            std::uint64_t hi = iroot_scaled(n, ku, 2);
            for (std::uint64_t x = lo; x <= hi; ++x) vals.push_back(x);
        } else {
            std::uint64_t X = iroot(n, ku);
            std::uint64_t Y = std::max<std::uint64_t>(2, ceil_pow_real(n, gamma));
            vals = smooth_numbers(std::max<std::uint64_t>(X, 1), Y).members;
        }
        out.values.push_back(std::move(vals));
    }
    return out;
}

std::uint64_t count_in_ranges(std::uint64_t target, const RestrictedRanges& ranges,
                              CountAlgorithm alg) {
    std::vector<std::vector<std::uint64_t>> lists;
    for (std::size_t i = 0; i < ranges.ks.size(); ++i) {
        std::vector<std::uint64_t> powers;
        powers.reserve(ranges.values[i].size());
        for (std::uint64_t x : ranges.values[i]) {
            std::uint64_t p;
            if (pow_leq(x, ranges.ks[i], target, p)) powers.push_back(p);
        }
        std::sort(powers.begin(), powers.end());
        lists.push_back(std::move(powers));
    }
    switch (alg) {
        case CountAlgorithm::Direct: return count_direct_lists(target, lists);
        case CountAlgorithm::MeetInMiddle: return count_mitm_lists(target, lists);
        case CountAlgorithm::Auto:
        default: return count_mitm_lists(target, lists);
    }
}

std::uint64_t restricted_count(std::uint64_t n, const ExponentSet& K, double gamma) {
    return count_in_ranges(n, restricted_ranges(n, K, gamma));
}

std::vector<DecadeRow> density_scan(std::uint64_t N, const CountConfig& cfg) {
    if (N > 10'000'000ULL) {
        throw ScaleError("density_scan: N capped at 1e7, got " + std::to_string(N));
    }
    if (N < 1) throw PreconditionError("density_scan: N must be >= 1");
    // Mark every representable value <= N by accumulating one exponent at a
    // time; counts are not needed, only reachability.
    std::vector<char> reach(N + 1, 0);
    reach[0] = 1;
    for (int k : cfg.K.members()) {
        std::vector<char> next(N + 1, 0);
        std::uint64_t x0 = cfg.allow_zero ? 0 : 1;
        for (std::uint64_t t = 0; t <= N; ++t) {
            if (!reach[t]) continue;
            for (std::uint64_t x = x0;; ++x) {
                std::uint64_t p;
                if (!pow_leq(x, k, N - t, p)) break;
                next[t + p] = 1;
            }
        }
        reach = std::move(next);
    }
    std::vector<DecadeRow> rows;
    std::uint64_t cum = 0, mark = 10;
    int decade = 1;
    for (std::uint64_t v = 1; v <= N; ++v) {
        cum += reach[v];
        if (v == mark) {
            DecadeRow row;
            row.decade = decade;
            row.upper = mark;
            row.representable = cum;
            row.fraction = static_cast<double>(cum) / static_cast<double>(mark);
            rows.push_back(row);
            mark *= 10;
            ++decade;
        }
    }
    return rows;
}

} // namespace ascpow
