#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ascpow/intmath.hpp"

namespace ascpow {

// A point alpha = a/q + beta on a Farey arc: gcd(a,q) = 1, 1 <= a <= q,
// |beta| < 1/2.
struct ArcPoint {
    std::int64_t q = 1;
    std::int64_t a = 1;
    double beta = 0.0;

    ArcPoint() = default;
    ArcPoint(std::int64_t q_, std::int64_t a_, double beta_);
    double alpha() const { return static_cast<double>(a) / static_cast<double>(q) + beta; }
};

// Complete exponential sum S_k(q, a) = sum_{m=1}^{q} e_q(a m^k), exact
// term-by-term summation; |S| <= q.
std::complex<double> complete_sum_S(unsigned k, std::uint64_t q, std::uint64_t a);

struct SumResult {
    std::complex<double> value{0.0, 0.0};
    std::uint64_t terms = 0; // 0 flags an empty summation range
};

// Dyadic sum f_k(alpha) over m in [floor(n^{1/k})+1, floor(2 n^{1/k})].
SumResult exp_sum_f(unsigned k, std::uint64_t n, double alpha);
// Same range, alpha = a/q + beta with the rational part reduced exactly mod q.
SumResult exp_sum_f(unsigned k, std::uint64_t n, const ArcPoint& arc);
// Same range at alpha = a/q exactly (both parts integer-exact).
SumResult exp_sum_f_rational(unsigned k, std::uint64_t n, std::uint64_t a, std::uint64_t q);

// Y-smooth numbers up to X (inclusive), sorted; 1 is smooth.
struct SmoothSet {
    std::uint64_t X = 0;
    std::uint64_t Y = 0;
    std::vector<std::uint64_t> members;
};

SmoothSet smooth_numbers(std::uint64_t X, std::uint64_t Y);

// Smooth sum g_k(alpha) over the ceil(n^gamma)-smooth numbers <= floor(n^{1/k}).
SumResult exp_sum_g(unsigned k, std::uint64_t n, double gamma, double alpha);
SumResult exp_sum_g(unsigned k, std::uint64_t n, double gamma, const ArcPoint& arc);
SumResult exp_sum_g_rational(unsigned k, std::uint64_t n, double gamma, std::uint64_t a,
                             std::uint64_t q);

// Major-arc approximant pieces:
//   w_k(beta) = sum_{m <= n} k^{-1} m^{1/k-1} e(beta m)              (k <= 4)
//   w_k(beta) = sum_{n^{gamma k} < m <= n} ... rho(log m / (gamma k log n)) (k >= 5)
//   W_k(alpha) = q^{-1} S_k(q, a) w_k(beta)
//   delta_k = f_k - W_k for k in {2,4,6}; g_k - W_k for k >= 8.
std::complex<double> w_approx(unsigned k, std::uint64_t n, double gamma, double beta);
std::complex<double> W_approx(unsigned k, std::uint64_t n, double gamma, const ArcPoint& arc);
std::complex<double> delta_k(unsigned k, std::uint64_t n, double gamma, const ArcPoint& arc);

// Uniform sampling of the minor arcs m(n^tau): points with a rational
// approximation a/q, q <= n^tau, within X/(q n) are rejected (membership via
// continued-fraction convergents). Reports |f_2(alpha)| / f_2(0) statistics.
struct MinorArcScan {
    std::uint64_t n = 0;
    double tau = 0.0;
    std::uint64_t seed = 0;
    std::size_t requested = 0;
    std::size_t kept = 0;
    std::size_t rejected = 0;
    double max_ratio = 0.0;
    double median = 0.0;
    double q90 = 0.0;
    double q99 = 0.0;
};

MinorArcScan minor_arc_scan(std::uint64_t n, double tau, std::size_t sample_count,
                            std::uint64_t seed = 0, unsigned threads = 1);

// True iff alpha lies in a major arc M(X; q, a) for some q <= X.
bool is_major_arc(double alpha, double X, std::uint64_t n);

} // namespace ascpow
