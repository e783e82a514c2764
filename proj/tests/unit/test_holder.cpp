#include <doctest.h>

#include <cmath>
#include <random>

#include "ascpow/errors.hpp"
#include "ascpow/holder.hpp"
#include "ascpow/rational.hpp"

using namespace ascpow;

namespace {

LambdaTable linear_table(std::vector<int> ks, int s_max, double slope) {
    // lambda(k, s) = slope * k * s: non-decreasing, lambda/s constant in s.
    std::vector<std::tuple<int, int, double>> rows;
    for (int k : ks) {
        for (int s = 1; s <= s_max; ++s) rows.emplace_back(k, s, slope * k * s);
    }
    return LambdaTable::from_rows(rows, "synthetic-linear");
}

LambdaTable quadratic_table(std::vector<int> ks, int s_max) {
    // lambda(k, s) = s^2: non-decreasing and strictly convex in s.
    std::vector<std::tuple<int, int, double>> rows;
    for (int k : ks) {
        for (int s = 1; s <= s_max; ++s) {
            rows.emplace_back(k, s, static_cast<double>(s) * s);
        }
    }
    return LambdaTable::from_rows(rows, "synthetic-quadratic");
}

} // namespace

TEST_CASE("exponent set validation and reciprocal sums") {
    CHECK_THROWS_AS(ExponentSet({2, 2}), ValidationError);
    CHECK_THROWS_AS(ExponentSet({4, 2}), ValidationError);
    CHECK_THROWS_AS(ExponentSet({1, 2}), ValidationError);
    CHECK_THROWS_AS(ExponentSet(std::vector<int>{}), ValidationError);
    CHECK(ExponentSet({2}).reciprocal_sum() == BigRational(1, 2));
    CHECK(ExponentSet({2, 3}).reciprocal_sum() == BigRational(5, 6));
    // sum over {2, 4, ..., 266} = H_133 / 2
    auto K = ExponentSet::even_range(2, 266);
    CHECK(K.size() == 133);
    BigRational expect = 0;
    for (int j = 133; j >= 1; --j) expect += BigRational(1, 2 * j); // reversed order
    CHECK(K.reciprocal_sum() == expect);
    CHECK(K.reciprocal_sum_real() == doctest::Approx(2.735659740310237).epsilon(1e-15));
}

TEST_CASE("ford weights: proportional solution, exact constraint") {
    auto w = ford_weights(ExponentSet({4, 6}));
    CHECK(w.weights.at(4) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(w.weights.at(6) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(w.constraint_residual() <= 1e-15);
    CHECK(w.is_valid());

    // exact rational identity: sum_k 1/(c k) = 1 with c = sum 1/j
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> ks;
        int k = 4;
        for (int i = 0; i < 2 + trial % 5; ++i) {
            ks.push_back(k);
            k += 2 * (1 + static_cast<int>(rng() % 5));
        }
        ExponentSet K(ks);
        BigRational c = K.reciprocal_sum();
        BigRational total = 0;
        for (int kk : ks) total += BigRational(1) / (c * kk);
        CHECK(total == BigRational(1));
    }
}

TEST_CASE("ford weights reject the degenerate singleton") {
    CHECK_THROWS_AS(ford_weights(ExponentSet({4})), ValidationError);
    CHECK_THROWS_AS(ford_weights(ExponentSet({266})), ValidationError);
}

TEST_CASE("phi worked example: K={4}, a=2, lambda(4,2)=8 gives 1/2") {
    auto t = LambdaTable::from_rows({{4, 2, 8.0}}, "synthetic");
    HolderAssignment a;
    a.weights[4] = 2.0;
    auto r = phi(ExponentSet({4}), a, t);
    CHECK(r.phi == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.per_k_terms.at(4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.reciprocal_part == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("phi worked example: interpolated lambdas give -5/12") {
    auto t = LambdaTable::from_rows({{4, 1, 1.0}, {4, 2, 2.0}, {6, 2, 2.0}, {6, 3, 3.0}},
                                    "synthetic");
    HolderAssignment a;
    a.weights[4] = 5.0 / 3.0;
    a.weights[6] = 2.5;
    auto r = phi(ExponentSet({4, 6}), a, t);
    CHECK(r.phi == doctest::Approx(-5.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("phi worked example: lambda = k*s with ford weights gives 7/6") {
    auto t = linear_table({4, 6}, 10, 1.0);
    auto w = ford_weights(ExponentSet({4, 6}));
    auto r = phi(ExponentSet({4, 6}), w, t);
    // each per-k term is exactly 1, reciprocal part is 5/6
    CHECK(r.phi == doctest::Approx(7.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("phi is invariant under presentation order and monotone in the table") {
    auto t = linear_table({4, 6, 8}, 12, 0.5);
    ExponentSet K({4, 6, 8});
    auto w = ford_weights(K);
    double p1 = phi(K, w, t).phi;

    HolderAssignment shuffled;
    shuffled.weights[8] = w.weights.at(8);
    shuffled.weights[4] = w.weights.at(4);
    shuffled.weights[6] = w.weights.at(6);
    CHECK(phi(K, shuffled, t).phi == p1);

    auto t_up = linear_table({4, 6, 8}, 12, 0.6); // every lambda strictly larger
    CHECK(phi(K, w, t_up).phi > p1);
}

TEST_CASE("phi propagates coverage errors and validates alignment") {
    auto t = LambdaTable::from_rows({{4, 2, 8.0}}, "synthetic");
    HolderAssignment a;
    a.weights[4] = 3.5; // needs (4,3),(4,4)
    CHECK_THROWS_AS(phi(ExponentSet({4}), a, t), CoverageError);
    HolderAssignment b;
    b.weights[6] = 2.0;
    CHECK_THROWS_AS(phi(ExponentSet({4}), b, t), ValidationError);
}

TEST_CASE("optimizer: flat landscape returns the seed unchanged") {
    auto t = linear_table({4, 6}, 60, 1.0);
    ExponentSet K({4, 6});
    auto seed = ford_weights(K);
    auto [w, p] = optimize_weights(K, t, 25);
    CHECK(w.weights.at(4) == seed.weights.at(4));
    CHECK(w.weights.at(6) == seed.weights.at(6));
    CHECK(p.phi == phi(K, seed, t).phi);
}

TEST_CASE("optimizer: budget 0 returns the seed exactly") {
    auto t = quadratic_table({4, 6}, 60);
    ExponentSet K({4, 6});
    auto seed = ford_weights(K);
    auto [w, p] = optimize_weights(K, t, 0);
    CHECK(w.weights.at(4) == seed.weights.at(4));
    CHECK(w.weights.at(6) == seed.weights.at(6));
}

TEST_CASE("optimizer beats the seed on a convex landscape and matches grid search") {
    auto t = quadratic_table({4, 6}, 60);
    ExponentSet K({4, 6});
    double seed_phi = phi(K, ford_weights(K), t).phi;
    auto [w, p] = optimize_weights(K, t, 40);
    CHECK(p.phi <= seed_phi + 1e-12);
    CHECK(w.is_valid(1e-9));

    // grid-search oracle over the constraint surface at resolution 1e-3:
    // u in (0,1), a4 = 1/u, a6 = 1/(1-u), phi evaluated through the same table
    double best = seed_phi;
    for (double u = 1e-3; u < 1.0; u += 1e-3) {
        double a4 = 1.0 / u;
        double a6 = 1.0 / (1.0 - u);
        if (a4 <= 1.0 || a6 <= 1.0 || a4 > 60.0 || a6 > 60.0) continue;
        HolderAssignment cand;
        cand.weights[4] = a4;
        cand.weights[6] = a6;
        double v = phi(K, cand, t).phi;
        if (v < best) best = v;
    }
    CHECK(p.phi <= best + 1e-6);
}

TEST_CASE("optimizer descent property on assorted tables") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::tuple<int, int, double>> rows;
        std::vector<int> ks = {4, 8, 14};
        for (int k : ks) {
            double v = 0.0;
            for (int s = 1; s <= 40; ++s) {
                v += static_cast<double>(rng() % 1000) / 500.0; // non-decreasing
                rows.emplace_back(k, s, v);
            }
        }
        auto t = LambdaTable::from_rows(rows, "synthetic-random");
        ExponentSet K(ks);
        double seed_phi = phi(K, ford_weights(K), t).phi;
        auto [w, p] = optimize_weights(K, t, 15);
        CHECK(p.phi <= seed_phi + 1e-12);
        CHECK(weighted_constraint_residual(
                  [&] {
                      WeightedBlock b;
                      for (int k : ks) b.multiplicity[k] = 2;
                      return b;
                  }(),
                  w) <= 1e-9);
    }
}

TEST_CASE("weighted phi with multiplicity 2 reduces to plain phi") {
    auto t = quadratic_table({4, 6}, 60);
    ExponentSet K({4, 6});
    auto w = ford_weights(K);
    WeightedBlock b;
    b.multiplicity[4] = 2;
    b.multiplicity[6] = 2;
    CHECK(phi_weighted(b, w, t).phi == phi(K, w, t).phi);
    auto fw = ford_weights_weighted(b);
    CHECK(fw.weights.at(4) == w.weights.at(4));
    CHECK(fw.weights.at(6) == w.weights.at(6));
}

TEST_CASE("weighted phi: 6th/8th power split") {
    // lambda = k*s makes each term u * a = m/2 regardless of a, so
    // phi = sum m_k/2 - sum m_k/k, hand-computable.
    auto t = linear_table({4, 6}, 80, 1.0);
    WeightedBlock b;
    b.multiplicity[4] = 6;
    b.multiplicity[6] = 8;
    auto w = ford_weights_weighted(b);
    CHECK(weighted_constraint_residual(b, w) <= 1e-12);
    auto r = phi_weighted(b, w, t);
    double expect = (6.0 + 8.0) / 2.0 - (6.0 / 4.0 + 8.0 / 6.0);
    CHECK(r.phi == doctest::Approx(expect).epsilon(1e-13));
    // optimizer cannot do better on the flat landscape
    auto [ow, op] = optimize_weights_weighted(b, t, 10);
    CHECK(op.phi == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("mixed phi: singleton forced to x = 1") {
    NuTable nu;
    nu.add_grid(2, 8, {{1.0, 4.0}, {2.0, 6.0}});
    auto r = mixed_phi(2, ExponentSet({8}), nu);
    REQUIRE(r.x.size() == 1);
    CHECK(r.x[0] == 1.0);
    CHECK(r.phi == doctest::Approx(0.5).epsilon(1e-15)); // nu(2,8,1)/8
}

TEST_CASE("mixed phi: constant nu drives the mass to the larger exponent") {
    NuTable nu;
    nu.add_grid(2, 4, {{1.0, 3.0}, {25.0, 3.0}});
    nu.add_grid(2, 6, {{1.0, 3.0}, {25.0, 3.0}});
    auto r = mixed_phi(2, ExponentSet({4, 6}), nu, 0.05);
    CHECK(r.phi == doctest::Approx(0.5).epsilon(1e-9)); // min(3/4, 3/6)
    CHECK(r.x[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mixed phi: invalid resolution and coverage propagation") {
    NuTable nu;
    nu.add_grid(2, 4, {{1.0, 3.0}, {2.0, 3.0}});
    nu.add_grid(2, 6, {{1.0, 3.0}, {2.0, 3.0}});
    CHECK_THROWS_AS(mixed_phi(2, ExponentSet({4, 6}), nu, 1.5), ValidationError);
    CHECK_THROWS_AS(mixed_phi(2, ExponentSet({4, 6}), nu, 0.0), ValidationError);
    // resolution 0.05 probes 1/x up to 20, outside the [1,2] grid
    CHECK_THROWS_AS(mixed_phi(2, ExponentSet({4, 6}), nu, 0.05), CoverageError);
}

TEST_CASE("holder assignment validity checks") {
    HolderAssignment a;
    a.weights[4] = 1.0;
    a.weights[6] = 2.0;
    CHECK_FALSE(a.is_valid());
    CHECK_THROWS_AS(a.require_valid(), ValidationError);
    HolderAssignment b;
    b.weights[4] = 3.0;
    b.weights[6] = 3.0;
    CHECK(b.constraint_residual() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(b.require_valid(), ValidationError);
}
