#pragma once

#include <cstdint>
#include <vector>

#include "ascpow/exponent_set.hpp"

namespace ascpow {

enum class CountAlgorithm { Auto, Direct, MeetInMiddle };

struct CountConfig {
    ExponentSet K;
    bool allow_zero = false;
    bool restricted = false; // dyadic/smooth ranges instead of full [min, n^{1/k}]
    double gamma = 0.25;     // used by restricted mode for the smooth ranges
};

// Exact number of tuples (x_k)_{k in K} with sum x_k^k = n. Direct nested
// enumeration and the sorted half-sums join are both exposed; they must agree.
// Desk-scale caps: |K| <= 8, n <= 1e6 direct, n <= 1e8 meet-in-the-middle.
std::uint64_t count_representations(std::uint64_t n, const CountConfig& cfg,
                                    CountAlgorithm alg = CountAlgorithm::Auto);

// Candidate values per exponent for the restricted count: the dyadic interval
// for k in {2,4,6} and the n^gamma-smooth numbers <= n^{1/k} for k >= 8.
struct RestrictedRanges {
    std::vector<int> ks;
    std::vector<std::vector<std::uint64_t>> values; // aligned with ks
};

RestrictedRanges restricted_ranges(std::uint64_t n, const ExponentSet& K, double gamma);

// Tuples with x_k constrained to `ranges`, summing to target.
std::uint64_t count_in_ranges(std::uint64_t target, const RestrictedRanges& ranges,
                              CountAlgorithm alg = CountAlgorithm::Auto);

// restricted_count(n) = count_in_ranges(n, restricted_ranges(n, K, gamma)).
std::uint64_t restricted_count(std::uint64_t n, const ExponentSet& K, double gamma);

struct DecadeRow {
    int decade = 0;                // j for the window [1, 10^j]
    std::uint64_t upper = 0;       // 10^j
    std::uint64_t representable = 0;
    double fraction = 0.0;
};

// Fraction of n in [1, 10^j] representable under cfg, per decade up to N.
// N is capped at 1e7.
std::vector<DecadeRow> density_scan(std::uint64_t N, const CountConfig& cfg);

} // namespace ascpow
