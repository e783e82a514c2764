#include <doctest.h>

#include <cstdint>

#include "ascpow/errors.hpp"
#include "ascpow/intmath.hpp"
#include "ascpow/kernels.hpp"
#include "ascpow/repcount.hpp"
#include "oracles.hpp"

using namespace ascpow;

TEST_CASE("worked counts") {
    CountConfig cfg;
    cfg.K = ExponentSet({2, 4});
    CHECK(count_representations(5, cfg) == 1); // 2^2 + 1^4
    CHECK(count_representations(3, cfg) == 0);
    CHECK(count_representations(2, cfg) == 1); // 1 + 1
    CHECK(count_representations(1, cfg) == 0); // both variables must be >= 1
    cfg.allow_zero = true;
    CHECK(count_representations(0, cfg) == 1); // all zeros
    CHECK(count_representations(1, cfg) == 2); // (1,0) and (0,1)
    CHECK(count_representations(5, cfg) == 1); // still just (2,1)
}

TEST_CASE("counts match the odometer oracle on a sweep") {
    for (bool allow_zero : {false, true}) {
        CountConfig cfg;
        cfg.K = ExponentSet({2, 4, 6});
        cfg.allow_zero = allow_zero;
        for (std::uint64_t n = 0; n <= 600; ++n) {
            auto direct = count_representations(n, cfg, CountAlgorithm::Direct);
            auto mitm = count_representations(n, cfg, CountAlgorithm::MeetInMiddle);
            auto oracle = oracles::count_odometer(n, {2, 4, 6}, allow_zero);
            CHECK(direct == oracle);
            CHECK(mitm == oracle);
        }
    }
}

TEST_CASE("algorithms agree out to larger n and wider K") {
    CountConfig cfg;
    cfg.K = ExponentSet({2, 3, 4, 5});
    for (std::uint64_t n : {1000ULL, 9999ULL, 65536ULL}) {
        CHECK(count_representations(n, cfg, CountAlgorithm::Direct) ==
              count_representations(n, cfg, CountAlgorithm::MeetInMiddle));
    }
}

TEST_CASE("scale refusals state the bound") {
    CountConfig cfg;
    cfg.K = ExponentSet({2, 4});
    CHECK_THROWS_WITH_AS(count_representations(200'000'000ULL, cfg), doctest::Contains("1e8"),
                         ScaleError);
    CHECK_THROWS_WITH_AS(count_representations(2'000'000ULL, cfg, CountAlgorithm::Direct),
                         doctest::Contains("1e6"), ScaleError);
    CountConfig wide;
    wide.K = ExponentSet({2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK_THROWS_AS(count_representations(10, wide), ScaleError);
}

TEST_CASE("density: perfect squares and the decade table") {
    CountConfig cfg;
    cfg.K = ExponentSet({2});
    auto rows = density_scan(100, cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].upper == 100);
    CHECK(rows[1].representable == 10);
    CHECK(rows[1].fraction == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("density: superset monotonicity at every decade") {
    CountConfig small;
    small.K = ExponentSet({2, 4, 6});
    small.allow_zero = true;
    CountConfig big;
    big.K = ExponentSet({2, 4, 6, 8});
    big.allow_zero = true;
    auto rs = density_scan(10'000, small);
    auto rb = density_scan(10'000, big);
    REQUIRE(rs.size() == rb.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        CHECK(rb[i].representable >= rs[i].representable);
    }
}

TEST_CASE("restricted ranges: dyadic windows and smooth lists") {
    auto r = restricted_ranges(256, ExponentSet({2, 4}), 0.5);
    REQUIRE(r.ks.size() == 2);
    CHECK(r.values[0].front() == 17);
    CHECK(r.values[0].back() == 32);
    CHECK(r.values[1].front() == 5);
    CHECK(r.values[1].back() == 8);

    // k >= 8 goes through the smooth set
    auto r8 = restricted_ranges(1ULL << 32, ExponentSet({8}), 0.05);
    // n^{1/8} = 16, smoothness bound ceil(n^{0.05}) = ceil(3.03) = 4
    std::vector<std::uint64_t> expect = {1, 2, 3, 4, 6, 8, 9, 12, 16};
    CHECK(r8.values[0] == expect);
}

TEST_CASE("restricted count: inclusion, unreachable windows, filter oracle") {
    ExponentSet K({2, 4});
    // always at most the unrestricted count
    CountConfig cfg;
    cfg.K = K;
    for (std::uint64_t n : {100ULL, 500ULL, 914ULL, 2000ULL}) {
        CHECK(restricted_count(n, K, 0.25) <= count_representations(n, cfg));
    }
    // dyadic windows cannot reach small n: min is (r2+1)^2 + (r4+1)^4 > n
    CHECK(restricted_count(100, K, 0.25) == 0);

    // explicit filter-based oracle at n = 10^4
    std::uint64_t n = 10'000;
    auto ranges = restricted_ranges(n, K, 0.25);
    std::vector<std::vector<std::uint64_t>> lists;
    for (std::size_t i = 0; i < ranges.ks.size(); ++i) {
        std::vector<std::uint64_t> powers;
        for (auto x : ranges.values[i]) {
            std::uint64_t p = 1;
            for (int e = 0; e < ranges.ks[i]; ++e) p *= x;
            powers.push_back(p);
        }
        lists.push_back(powers);
    }
    CHECK(restricted_count(n, K, 0.25) == oracles::count_filtered(n, lists, ranges.ks));
}

TEST_CASE("restricted mode through CountConfig") {
    CountConfig cfg;
    cfg.K = ExponentSet({2, 4});
    cfg.restricted = true;
    cfg.gamma = 0.25;
    CHECK(count_representations(10'000, cfg) == restricted_count(10'000, ExponentSet({2, 4}), 0.25));
}
