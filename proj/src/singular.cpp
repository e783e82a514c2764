#include "ascpow/singular.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <string>

#include "ascpow/dickman.hpp"
#include "ascpow/errors.hpp"
#include "ascpow/intmath.hpp"

namespace ascpow {

namespace {

constexpr double kImagTol = 1e-9;

// P(a) = prod_k S_k(q, a) / q for all a in [0, q). Dividing by q per factor
// keeps the products in a sane floating range for large s.
std::vector<std::complex<double>> scaled_products(std::uint64_t q, const ExponentSet& K) {
    std::vector<std::complex<double>> eq(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        eq[j] = unit_exp(static_cast<double>(j) / static_cast<double>(q));
    }
    std::vector<std::complex<double>> prod(q, std::complex<double>(1.0, 0.0));
    std::vector<std::uint64_t> powers(q);
    for (int k : K.members()) {
        for (std::uint64_t m = 1; m <= q; ++m) {
            powers[m - 1] = pow_mod(m, static_cast<std::uint64_t>(k), q);
        }
        for (std::uint64_t a = 0; a < q; ++a) {
            std::complex<double> s(0.0, 0.0);
            for (std::uint64_t m = 0; m < q; ++m) {
                s += eq[mul_mod(a, powers[m], q)];
            }
            prod[a] *= s / static_cast<double>(q);
        }
    }
    return prod;
}

double check_real(std::complex<double> z, std::uint64_t n, std::uint64_t q) {
    if (std::abs(z.imag()) > kImagTol) {
        throw NumericError("A(n,q): imaginary residue " + std::to_string(z.imag()) +
                           " above tolerance at n=" + std::to_string(n) +
                           ", q=" + std::to_string(q));
    }
    return z.real();
}

} // namespace

std::vector<double> A_coeff_all(std::uint64_t q, const ExponentSet& K) {
    if (q == 0) throw PreconditionError("A_coeff_all: q must be positive");
    if (q > 2'000'000ULL) {
        throw ScaleError("A_coeff_all: q=" + std::to_string(q) + " exceeds the desk-scale cap");
    }
    auto prod = scaled_products(q, K);
    std::vector<std::complex<double>> eq(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        eq[j] = unit_exp(static_cast<double>(j) / static_cast<double>(q));
    }
    std::vector<double> out(q);
    for (std::uint64_t n = 0; n < q; ++n) {
        std::complex<double> acc(0.0, 0.0);
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            std::uint64_t an = mul_mod(a % q, n, q);
            acc += prod[a % q] * eq[(q - an) % q];
        }
        out[n] = check_real(acc, n, q);
    }
    return out;
}

double A_coeff(std::uint64_t n, std::uint64_t q, const ExponentSet& K) {
    if (q == 0) throw PreconditionError("A_coeff: q must be positive");
    if (q > 2'000'000ULL) {
        throw ScaleError("A_coeff: q=" + std::to_string(q) + " exceeds the desk-scale cap");
    }
    auto prod = scaled_products(q, K);
    std::vector<std::complex<double>> eq(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        eq[j] = unit_exp(static_cast<double>(j) / static_cast<double>(q));
    }
    std::complex<double> acc(0.0, 0.0);
    for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::uint64_t an = mul_mod(a % q, n % q, q);
        acc += prod[a % q] * eq[(q - an) % q];
    }
    return check_real(acc, n, q);
}

double SingularSeriesResult::tail_bound_or_throw() const {
    if (!tail_bound) {
        throw NumericError(
            "singular series: tail bound undefined, sum of reciprocal exponents " +
            std::to_string(omega_floor) +
            " does not exceed 2 so sum_{q>Z} q^{1-omega} diverges");
    }
    return *tail_bound;
}

SingularSeriesResult singular_series(std::uint64_t n, std::uint64_t Z, const ExponentSet& K) {
    if (Z < 1) throw PreconditionError("singular_series: Z must be >= 1");
    SingularSeriesResult out;
    out.Z = Z;
    out.omega_floor = K.reciprocal_sum_real();
    double acc = 0.0;
    for (std::uint64_t q = 1; q <= Z; ++q) {
        double a = A_coeff(n, q, K);
        out.terms[q] = a;
        acc += a;
    }
    out.partial = acc;
    if (out.omega_floor > 2.0) {
        double om = out.omega_floor;
        out.tail_bound = std::pow(static_cast<double>(Z), 2.0 - om) / (om - 2.0);
    }
    return out;
}

namespace {

bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

} // namespace

ChiResult chi_p(std::uint64_t n, std::uint64_t p, const ExponentSet& K, unsigned h_max) {
    if (!is_prime_u64(p)) {
        throw PreconditionError("chi_p: p=" + std::to_string(p) + " is not prime");
    }
    ChiResult out;
    out.value = 1.0; // h = 0 term, A(n, 1) = 1
    std::uint64_t q = 1;
    for (unsigned h = 1; h <= h_max; ++h) {
        q *= p;
        out.value += A_coeff(n, q, K);
    }
    double omega = K.reciprocal_sum_real();
    out.truncation_estimate =
        std::pow(static_cast<double>(p), static_cast<double>(h_max) * (1.0 - omega));
    return out;
}

namespace {

struct Range {
    int k;
    std::uint64_t lo; // exclusive
    std::uint64_t hi; // inclusive
};

std::vector<Range> integral_ranges(std::uint64_t n, const ExponentSet& K, double gamma) {
    std::vector<Range> rs;
    for (int k : K.members()) {
        Range r;
        r.k = k;
        r.hi = n;
        if (k <= 6) {
            r.lo = k < 64 ? (n >> k) : 0; // n / 2^k
        } else {
            r.lo = floor_pow_real(n, gamma * k);
            if (r.lo >= n) r.lo = n; // empty
        }
        rs.push_back(r);
    }
    return rs;
}

double integral_weight(const Range& r, std::uint64_t m, double gamma, double log_n) {
    double md = static_cast<double>(m);
    double base = std::pow(md, 1.0 / r.k - 1.0);
    if (r.k >= 8) {
        double u = std::log(md) / (gamma * r.k * log_n);
        base *= dickman_rho(u);
    }
    return base;
}

double factorial(unsigned s) {
    double f = 1.0;
    for (unsigned i = 2; i <= s; ++i) f *= i;
    return f;
}

} // namespace

SingularIntegralResult singular_integral(std::uint64_t n, const ExponentSet& K, double gamma,
                                         IntegralMode mode, std::uint64_t mc_samples,
                                         std::uint64_t seed) {
    if (n < 1) throw PreconditionError("singular_integral: n must be >= 1");
    if (!(gamma > 0.0)) throw PreconditionError("singular_integral: gamma must be positive");
    const auto s = static_cast<unsigned>(K.size());
    if (s > 4) {
        throw ScaleError("singular_integral: |K|=" + std::to_string(s) +
                         " exceeds the desk-scale cap of 4 exponents");
    }
    if (n > 1'000'000ULL && mode == IntegralMode::Exact) {
        throw ScaleError("singular_integral: exact mode capped at n <= 1e6");
    }

    auto ranges = integral_ranges(n, K, gamma);
    SingularIntegralResult out;

    // Quick feasibility: sum of minima <= n <= sum of maxima.
    std::uint64_t min_sum = 0, max_sum = 0;
    for (const auto& r : ranges) {
        if (r.lo + 1 > r.hi) {
            out.infeasible = true;
            return out;
        }
        min_sum += r.lo + 1;
        max_sum += r.hi;
    }
    if (min_sum > n || max_sum < n) {
        out.infeasible = true;
        return out;
    }

    const double log_n = std::log(static_cast<double>(n));
    const double prefactor = 1.0 / (std::pow(2.0, static_cast<double>(s)) * factorial(s));

    // Estimated lattice cost: product of the free ranges (all but the last).
    double cost = 1.0;
    for (std::size_t i = 0; i + 1 < ranges.size(); ++i) {
        cost *= static_cast<double>(ranges[i].hi - ranges[i].lo);
    }
    bool exact = (mode == IntegralMode::Exact) ||
                 (mode == IntegralMode::Auto && cost <= 5e7 && n <= 1'000'000ULL);
    if (mode == IntegralMode::Exact && cost > 5e8) {
        throw ScaleError("singular_integral: exact enumeration needs ~" + std::to_string(cost) +
                         " lattice points; use Monte Carlo");
    }

    if (exact) {
        double total = 0.0;
        // Recursive enumeration over all coordinates but the last, with
        // partial-sum window pruning.
        std::vector<std::uint64_t> m(ranges.size());
        auto rec = [&](auto&& self, std::size_t i, std::uint64_t left, double w) -> void {
            const auto& r = ranges[i];
            if (i + 1 == ranges.size()) {
                if (left > r.lo && left <= r.hi) {
                    total += w * integral_weight(r, left, gamma, log_n);
                }
                return;
            }
            std::uint64_t rest_min = 0, rest_max = 0;
            for (std::size_t j = i + 1; j < ranges.size(); ++j) {
                rest_min += ranges[j].lo + 1;
                rest_max += ranges[j].hi;
            }
            std::uint64_t lo = std::max(r.lo + 1, left > rest_max ? left - rest_max : 1);
            std::uint64_t hi = std::min(r.hi, left > rest_min ? left - rest_min : 0);
            for (std::uint64_t v = lo; v <= hi; ++v) {
                self(self, i + 1, left - v, w * integral_weight(r, v, gamma, log_n));
            }
        };
        rec(rec, 0, n, 1.0);
        out.value = prefactor * total;
        return out;
    }

    // Stratified Monte Carlo over the free coordinates; the last coordinate is
    // forced by the composition constraint.
    out.monte_carlo = true;
    std::mt19937_64 rng(seed);
    double free_volume = 1.0;
    for (std::size_t i = 0; i + 1 < ranges.size(); ++i) {
        free_volume *= static_cast<double>(ranges[i].hi - ranges[i].lo);
    }
    const auto& last = ranges.back();
    const std::uint64_t strata = 64;
    const std::uint64_t per = std::max<std::uint64_t>(1, mc_samples / strata);
    double sum_w = 0.0, sum_w2 = 0.0;
    std::uint64_t total_samples = 0;
    std::uint64_t span0 = ranges[0].hi - ranges[0].lo;
    for (std::uint64_t st = 0; st < strata; ++st) {
        std::uint64_t a0 = ranges[0].lo + 1 + st * span0 / strata;
        std::uint64_t b0 = ranges[0].lo + (st + 1) * span0 / strata;
        if (b0 < a0) continue;
        for (std::uint64_t i = 0; i < per; ++i) {
            std::uint64_t left = n;
            double w = 1.0;
            bool dead = false;
            for (std::size_t j = 0; j + 1 < ranges.size(); ++j) {
                std::uint64_t lo = ranges[j].lo + 1, hi = ranges[j].hi;
                if (j == 0) {
                    lo = a0;
                    hi = b0;
                }
                std::uniform_int_distribution<std::uint64_t> pick(lo, hi);
                std::uint64_t v = pick(rng);
                if (v >= left) {
                    dead = true;
                    break;
                }
                w *= integral_weight(ranges[j], v, gamma, log_n);
                left -= v;
            }
            ++total_samples;
            double contrib = 0.0;
            if (!dead && left > last.lo && left <= last.hi) {
                contrib = w * integral_weight(last, left, gamma, log_n);
            }
            sum_w += contrib;
            sum_w2 += contrib * contrib;
        }
    }
    double mean = sum_w / static_cast<double>(total_samples);
    double var = sum_w2 / static_cast<double>(total_samples) - mean * mean;
    if (var < 0.0) var = 0.0;
    out.samples = total_samples;
    out.value = prefactor * free_volume * mean;
    out.standard_error =
        prefactor * free_volume * std::sqrt(var / static_cast<double>(total_samples));
    return out;
}

} // namespace ascpow
