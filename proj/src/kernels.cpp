#include "ascpow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "ascpow/dickman.hpp"
#include "ascpow/errors.hpp"

namespace ascpow {

namespace {

// Kahan-compensated complex accumulator; summation ranges can run into many
// millions of terms.
struct CompensatedSum {
    double re = 0.0, im = 0.0;
    double cre = 0.0, cim = 0.0;

    void add(std::complex<double> z) {
        double yr = z.real() - cre;
        double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        double yi = z.imag() - cim;
        double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
    std::complex<double> value() const { return {re, im}; }
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// m^k as a big integer only when it leaves uint64.
bool pow_u64(std::uint64_t m, unsigned k, std::uint64_t& out) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (m != 0 && r > UINT64_MAX / m) return false;
        r *= m;
    }
    out = r;
    return true;
}

} // namespace

ArcPoint::ArcPoint(std::int64_t q_, std::int64_t a_, double beta_) : q(q_), a(a_), beta(beta_) {
    if (q < 1 || a < 1 || a > q) {
        throw PreconditionError("arc point: need 1 <= a <= q, got a=" + std::to_string(a) +
                                ", q=" + std::to_string(q));
    }
    if (std::gcd(a, q) != 1) {
        throw PreconditionError("arc point: gcd(a, q) must be 1, got a=" + std::to_string(a) +
                                ", q=" + std::to_string(q));
    }
    if (!(std::abs(beta) < 0.5)) {
        throw PreconditionError("arc point: need |beta| < 1/2, got " + std::to_string(beta));
    }
}

std::complex<double> complete_sum_S(unsigned k, std::uint64_t q, std::uint64_t a) {
    if (q == 0) throw PreconditionError("complete_sum_S: q must be positive");
    if (gcd_u64(a % q == 0 ? q : a % q, q) != 1 && q > 1) {
        throw PreconditionError("complete_sum_S: gcd(a, q) must be 1");
    }
    if (k == 0) throw PreconditionError("complete_sum_S: k must be >= 1");
    // Unit-root table keeps each term a single multiply-free lookup.
    std::vector<std::complex<double>> eq(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        eq[j] = unit_exp(static_cast<double>(j) / static_cast<double>(q));
    }
    CompensatedSum acc;
    for (std::uint64_t m = 1; m <= q; ++m) {
        std::uint64_t r = mul_mod(a % q, pow_mod(m, k, q), q);
        acc.add(eq[r]);
    }
    return acc.value();
}

namespace {

SumResult sum_over_range(unsigned k, std::uint64_t lo, std::uint64_t hi, double alpha) {
    SumResult out;
    if (hi < lo) return out;
    CompensatedSum acc;
    for (std::uint64_t m = lo; m <= hi; ++m) {
        std::uint64_t p64;
        double frac;
        if (pow_u64(m, k, p64)) {
            frac = phase_frac(alpha, p64);
        } else {
            frac = phase_frac(alpha, boost::multiprecision::pow(BigInt(m), k));
        }
        acc.add(unit_exp(frac));
        ++out.terms;
    }
    out.value = acc.value();
    return out;
}

SumResult sum_over_range_arc(unsigned k, std::uint64_t lo, std::uint64_t hi, std::uint64_t a,
                             std::uint64_t q, double beta) {
    SumResult out;
    if (hi < lo) return out;
    CompensatedSum acc;
    for (std::uint64_t m = lo; m <= hi; ++m) {
        std::uint64_t p64;
        double rat, dyad;
        if (pow_u64(m, k, p64)) {
            rat = static_cast<double>(mul_mod(a % q, p64 % q, q)) / static_cast<double>(q);
            dyad = phase_frac(beta, p64);
        } else {
            BigInt p = boost::multiprecision::pow(BigInt(m), k);
            auto pm = (p % q).convert_to<std::uint64_t>();
            rat = static_cast<double>(mul_mod(a % q, pm, q)) / static_cast<double>(q);
            dyad = phase_frac(beta, p);
        }
        double frac = rat + dyad;
        if (frac >= 1.0) frac -= 1.0;
        acc.add(unit_exp(frac));
        ++out.terms;
    }
    out.value = acc.value();
    return out;
}

} // namespace

SumResult exp_sum_f(unsigned k, std::uint64_t n, double alpha) {
    if (k == 0 || n == 0) throw PreconditionError("exp_sum_f: need k >= 1 and n >= 1");
    std::uint64_t lo = iroot(n, k) + 1;
    std::uint64_t hi = iroot_scaled(n, k, 2);
    return sum_over_range(k, lo, hi, alpha);
}

SumResult exp_sum_f(unsigned k, std::uint64_t n, const ArcPoint& arc) {
    if (k == 0 || n == 0) throw PreconditionError("exp_sum_f: need k >= 1 and n >= 1");
    std::uint64_t lo = iroot(n, k) + 1;
    std::uint64_t hi = iroot_scaled(n, k, 2);
    return sum_over_range_arc(k, lo, hi, static_cast<std::uint64_t>(arc.a),
                              static_cast<std::uint64_t>(arc.q), arc.beta);
}

SumResult exp_sum_f_rational(unsigned k, std::uint64_t n, std::uint64_t a, std::uint64_t q) {
    if (k == 0 || n == 0 || q == 0) {
        throw PreconditionError("exp_sum_f_rational: need k, n, q >= 1");
    }
    std::uint64_t lo = iroot(n, k) + 1;
    std::uint64_t hi = iroot_scaled(n, k, 2);
    return sum_over_range_arc(k, lo, hi, a % q == 0 ? q : a % q, q, 0.0);
}

SmoothSet smooth_numbers(std::uint64_t X, std::uint64_t Y) {
    if (X < 1) throw PreconditionError("smooth_numbers: X must be >= 1");
    if (Y < 2) throw PreconditionError("smooth_numbers: Y must be >= 2");
    if (X > 100'000'000ULL) {
        throw ScaleError("smooth_numbers: X=" + std::to_string(X) +
                         " exceeds the sieve limit 1e8");
    }
    SmoothSet out;
    out.X = X;
    out.Y = Y;
    // Largest-prime-factor sieve: ascending p overwrites, so lpf[m] ends as
    // the largest prime factor of m.
    std::vector<std::uint32_t> lpf(X + 1, 0);
    for (std::uint64_t p = 2; p <= X; ++p) {
        if (lpf[p] == 0) {
            for (std::uint64_t m = p; m <= X; m += p) lpf[m] = static_cast<std::uint32_t>(p);
        }
    }
    out.members.push_back(1);
    for (std::uint64_t m = 2; m <= X; ++m) {
        if (lpf[m] <= Y) out.members.push_back(m);
    }
    return out;
}

namespace {

SumResult sum_over_list(unsigned k, const std::vector<std::uint64_t>& ms, double alpha) {
    SumResult out;
    CompensatedSum acc;
    for (std::uint64_t m : ms) {
        std::uint64_t p64;
        double frac;
        if (pow_u64(m, k, p64)) {
            frac = phase_frac(alpha, p64);
        } else {
            frac = phase_frac(alpha, boost::multiprecision::pow(BigInt(m), k));
        }
        acc.add(unit_exp(frac));
        ++out.terms;
    }
    out.value = acc.value();
    return out;
}

std::vector<std::uint64_t> smooth_range_for_g(unsigned k, std::uint64_t n, double gamma) {
    std::uint64_t X = iroot(n, k);
    std::uint64_t Y = ceil_pow_real(n, gamma);
    if (Y < 2) Y = 2;
    return smooth_numbers(std::max<std::uint64_t>(X, 1), Y).members;
}

} // namespace

SumResult exp_sum_g(unsigned k, std::uint64_t n, double gamma, double alpha) {
    if (k == 0 || n == 0) throw PreconditionError("exp_sum_g: need k >= 1 and n >= 1");
    if (!(gamma > 0.0)) throw PreconditionError("exp_sum_g: gamma must be positive");
    return sum_over_list(k, smooth_range_for_g(k, n, gamma), alpha);
}

namespace {

SumResult sum_over_list_arc(unsigned k, const std::vector<std::uint64_t>& ms, std::uint64_t a,
                            std::uint64_t q, double beta) {
    SumResult out;
    CompensatedSum acc;
    for (std::uint64_t m : ms) {
        std::uint64_t p64;
        double rat, dyad;
        if (pow_u64(m, k, p64)) {
            rat = static_cast<double>(mul_mod(a % q, p64 % q, q)) / static_cast<double>(q);
            dyad = phase_frac(beta, p64);
        } else {
            BigInt p = boost::multiprecision::pow(BigInt(m), k);
            auto pm = (p % q).convert_to<std::uint64_t>();
            rat = static_cast<double>(mul_mod(a % q, pm, q)) / static_cast<double>(q);
            dyad = phase_frac(beta, p);
        }
        double frac = rat + dyad;
        if (frac >= 1.0) frac -= 1.0;
        acc.add(unit_exp(frac));
        ++out.terms;
    }
    out.value = acc.value();
    return out;
}

} // namespace

SumResult exp_sum_g(unsigned k, std::uint64_t n, double gamma, const ArcPoint& arc) {
    if (k == 0 || n == 0) throw PreconditionError("exp_sum_g: need k >= 1 and n >= 1");
    if (!(gamma > 0.0)) throw PreconditionError("exp_sum_g: gamma must be positive");
    return sum_over_list_arc(k, smooth_range_for_g(k, n, gamma),
                             static_cast<std::uint64_t>(arc.a),
                             static_cast<std::uint64_t>(arc.q), arc.beta);
}

SumResult exp_sum_g_rational(unsigned k, std::uint64_t n, double gamma, std::uint64_t a,
                             std::uint64_t q) {
    if (k == 0 || n == 0 || q == 0) {
        throw PreconditionError("exp_sum_g_rational: need k, n, q >= 1");
    }
    if (!(gamma > 0.0)) throw PreconditionError("exp_sum_g_rational: gamma must be positive");
    return sum_over_list_arc(k, smooth_range_for_g(k, n, gamma), a % q, q, 0.0);
}

std::complex<double> w_approx(unsigned k, std::uint64_t n, double gamma, double beta) {
    if (k == 0 || n == 0) throw PreconditionError("w_approx: need k >= 1 and n >= 1");
    CompensatedSum acc;
    double inv_k = 1.0 / static_cast<double>(k);
    if (k <= 4) {
        for (std::uint64_t m = 1; m <= n; ++m) {
            double w = inv_k * std::pow(static_cast<double>(m), inv_k - 1.0);
            acc.add(w * unit_exp(phase_frac(beta, m)));
        }
        return acc.value();
    }
    if (!(gamma > 0.0 && gamma <= inv_k)) {
        throw PreconditionError("w_approx: for k >= 5 need gamma in (0, 1/k]");
    }
    std::uint64_t lo = floor_pow_real(n, gamma * k) + 1;
    double log_n = std::log(static_cast<double>(n));
    double denom = gamma * k * log_n;
    for (std::uint64_t m = lo; m <= n; ++m) {
        double u = std::log(static_cast<double>(m)) / denom;
        double w = inv_k * std::pow(static_cast<double>(m), inv_k - 1.0) * dickman_rho(u);
        acc.add(w * unit_exp(phase_frac(beta, m)));
    }
    return acc.value();
}

std::complex<double> W_approx(unsigned k, std::uint64_t n, double gamma, const ArcPoint& arc) {
    std::complex<double> S =
        complete_sum_S(k, static_cast<std::uint64_t>(arc.q), static_cast<std::uint64_t>(arc.a));
    return S * w_approx(k, n, gamma, arc.beta) / static_cast<double>(arc.q);
}

std::complex<double> delta_k(unsigned k, std::uint64_t n, double gamma, const ArcPoint& arc) {
    std::complex<double> W = W_approx(k, n, gamma, arc);
    if (k < 8) return exp_sum_f(k, n, arc).value - W;
    return exp_sum_g(k, n, gamma, arc).value - W;
}

bool is_major_arc(double alpha, double X, std::uint64_t n) {
    // Best rational approximations with q <= X are continued-fraction
    // convergents; the arc width X/(qn) is well below 1/(2q^2) whenever
    // 2X^2 < n, so checking convergents is exhaustive.
    double a0 = std::floor(alpha);
    double x = alpha - a0;
    double nd = static_cast<double>(n);
    // q = 1 arc around the nearest integers.
    if (std::min(x, 1.0 - x) <= X / nd) return true;
    std::uint64_t h0 = 1, k0 = 0;
    std::uint64_t h1 = 0, k1 = 1; // convergents of the fractional part
    double frac = x;
    for (int it = 0; it < 64; ++it) {
        if (frac <= 1e-18) break;
        frac = 1.0 / frac;
        double ai_f = std::floor(frac);
        if (ai_f > 1e18) break;
        auto ai = static_cast<std::uint64_t>(ai_f);
        frac -= ai_f;
        std::uint64_t h2 = ai * h1 + h0;
        std::uint64_t k2 = ai * k1 + k0;
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        if (static_cast<double>(k1) > X) break;
        double approx = static_cast<double>(h1) / static_cast<double>(k1);
        if (std::abs(x - approx) <= X / (static_cast<double>(k1) * nd)) return true;
    }
    return false;
}

MinorArcScan minor_arc_scan(std::uint64_t n, double tau, std::size_t sample_count,
                            std::uint64_t seed, unsigned threads) {
    if (!(tau > 0.0 && tau < 0.5)) {
        throw PreconditionError("minor_arc_scan: need 0 < tau < 1/2");
    }
    if (sample_count == 0) throw PreconditionError("minor_arc_scan: need samples >= 1");
    double X = std::pow(static_cast<double>(n), tau);
    if (X < 1.0) {
        throw PreconditionError("minor_arc_scan: n^tau < 1, no admissible modulus q <= n^tau");
    }
    if (!(X < 0.5 * std::sqrt(static_cast<double>(n)))) {
        throw PreconditionError(
            "minor_arc_scan: arcs overlap, need n^tau < sqrt(n)/2 (n too small for this tau)");
    }
    double f2_zero = static_cast<double>(exp_sum_f(2, n, 0.0).terms);
    if (f2_zero == 0.0) throw PreconditionError("minor_arc_scan: empty dyadic range");

    std::vector<double> ratios(sample_count, -1.0); // -1 marks rejected
    unsigned nt = std::max(1u, threads);
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            // Per-index RNG: identical samples regardless of thread count.
            std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double alpha = unif(rng);
            if (is_major_arc(alpha, X, n)) continue;
            ratios[i] = std::abs(exp_sum_f(2, n, alpha).value) / f2_zero;
        }
    };
    if (nt == 1) {
        worker(0, sample_count);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (sample_count + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            std::size_t b = t * chunk;
            std::size_t e = std::min(sample_count, b + chunk);
            if (b >= e) break;
            pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    MinorArcScan out;
    out.n = n;
    out.tau = tau;
    out.seed = seed;
    out.requested = sample_count;
    std::vector<double> kept;
    kept.reserve(sample_count);
    for (double r : ratios) {
        if (r >= 0.0) kept.push_back(r);
    }
    out.kept = kept.size();
    out.rejected = sample_count - kept.size();
    if (kept.empty()) {
        throw PreconditionError("minor_arc_scan: every sample fell on a major arc");
    }
    std::sort(kept.begin(), kept.end());
    auto at = [&](double p) {
        auto idx = static_cast<std::size_t>(p * static_cast<double>(kept.size() - 1));
        return kept[idx];
    };
    out.max_ratio = kept.back();
    out.median = at(0.5);
    out.q90 = at(0.9);
    out.q99 = at(0.99);
    return out;
}

} // namespace ascpow
