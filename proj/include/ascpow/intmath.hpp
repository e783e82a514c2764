#pragma once

#include <cstdint>
#include <complex>

#include "ascpow/rational.hpp"

namespace ascpow {

// Exact floor k-th root of n.
std::uint64_t iroot(std::uint64_t n, unsigned k);

// Exact floor of c * n^{1/k} for small integer c (largest B with B^k <= c^k * n).
// Handles arbitrarily large k via big integers.
std::uint64_t iroot_scaled(std::uint64_t n, unsigned k, unsigned c);

// floor(base^gamma) and ceil(base^gamma) with a snap guard so that values a
// hair away from an integer (floating pow noise at exact powers) land on it.
std::uint64_t floor_pow_real(std::uint64_t base, double gamma);
std::uint64_t ceil_pow_real(std::uint64_t base, double gamma);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// alpha * N mod 1, exact: the double alpha is the dyadic rational A/2^E, and the
// reduction A*N mod 2^E is done in integer arithmetic. This keeps exponential
// sums exactly 1-periodic and conjugate-symmetric even when N is huge.
double phase_frac(double alpha, const BigInt& N);
double phase_frac(double alpha, std::uint64_t N);

// e(x) = exp(2*pi*i*x)
std::complex<double> unit_exp(double frac);

} // namespace ascpow
