#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ascpow/exponent_set.hpp"

namespace ascpow {

// A(n, q) = q^{-s} sum_{(a,q)=1} S_{k_1} ... S_{k_s}(q, a) e_q(-a n) for the
// exponents in K (s = |K|). Exact complex accumulation; the imaginary part
// must vanish below 1e-9 (the a <-> q-a pairing makes A real) and is checked.
double A_coeff(std::uint64_t n, std::uint64_t q, const ExponentSet& K);

// A(n mod q, q) for every residue at once; the per-residue work is one DFT
// pass, which makes chi_p scans and multiplicativity sweeps cheap.
std::vector<double> A_coeff_all(std::uint64_t q, const ExponentSet& K);

struct SingularSeriesResult {
    std::uint64_t Z = 0;
    double partial = 0.0;                  // sum of A(n,q), q <= Z
    std::map<std::uint64_t, double> terms; // q -> A(n,q)
    std::optional<double> tail_bound;      // Z^{2-omega}/(omega-2), only when omega > 2
    double omega_floor = 0.0;              // sum 1/k over K (epsilon = 0)

    // The tail estimate, or a NumericError explaining divergence when the
    // reciprocal sum does not exceed 2.
    double tail_bound_or_throw() const;
};

SingularSeriesResult singular_series(std::uint64_t n, std::uint64_t Z, const ExponentSet& K);

struct ChiResult {
    double value = 0.0;
    double truncation_estimate = 0.0; // p^{h_max (1 - omega)}
};

// Truncated local factor sum_{h <= h_max} A(n, p^h); h_max = 0 gives exactly 1.
ChiResult chi_p(std::uint64_t n, std::uint64_t p, const ExponentSet& K, unsigned h_max);

enum class IntegralMode { Auto, Exact, MonteCarlo };

struct SingularIntegralResult {
    double value = 0.0;
    bool infeasible = false;          // ranges cannot compose n
    bool monte_carlo = false;
    double standard_error = 0.0;      // MC only
    std::uint64_t samples = 0;        // MC only
};

// I(n) = (2^s s!)^{-1} * sum over compositions n = sum m_k, with
// n/2^k < m_k <= n for k in {2,4,6} and n^{gamma k} < m_k <= n for k >= 8,
// of prod_k m_k^{1/k-1} (Dickman-weighted for k >= 8).
// Exact enumeration at desk scale (|K| <= 4, n <= 1e6, affordable lattice),
// stratified Monte Carlo with a 95% CI otherwise.
SingularIntegralResult singular_integral(std::uint64_t n, const ExponentSet& K, double gamma,
                                         IntegralMode mode = IntegralMode::Auto,
                                         std::uint64_t mc_samples = 200'000,
                                         std::uint64_t seed = 0);

} // namespace ascpow
