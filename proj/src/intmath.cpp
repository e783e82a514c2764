#include "ascpow/intmath.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ascpow/errors.hpp"

namespace ascpow {

namespace {

// Checked power: returns true and sets out = b^k if it fits in uint64.
bool pow_fits_u64(std::uint64_t b, unsigned k, std::uint64_t& out) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) return false;
        r *= b;
    }
    out = r;
    return true;
}

} // namespace

std::uint64_t iroot(std::uint64_t n, unsigned k) {
    if (k == 0) throw PreconditionError("iroot: k must be >= 1");
    if (k == 1 || n <= 1) return n;
    // Float seed, then fix up with exact integer comparisons.
    auto guess = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    std::uint64_t lo = guess > 2 ? guess - 2 : 0;
    std::uint64_t hi = guess + 2;
    std::uint64_t p;
    while (pow_fits_u64(hi + 1, k, p) && p <= n) ++hi;
    std::uint64_t r = lo;
    for (std::uint64_t b = lo; b <= hi; ++b) {
        if (pow_fits_u64(b, k, p) && p <= n) r = b;
    }
    return r;
}

std::uint64_t iroot_scaled(std::uint64_t n, unsigned k, unsigned c) {
    if (k == 0) throw PreconditionError("iroot_scaled: k must be >= 1");
    // Largest B with B^k <= c^k * n; exact via big integers (c^k * n can
    // overflow uint64 for large k).
    BigInt target = boost::multiprecision::pow(BigInt(c), k) * n;
    double seed = static_cast<double>(c) * std::pow(static_cast<double>(n), 1.0 / k);
    auto b = static_cast<std::uint64_t>(seed);
    while (boost::multiprecision::pow(BigInt(b + 1), k) <= target) ++b;
    while (b > 0 && boost::multiprecision::pow(BigInt(b), k) > target) --b;
    return b;
}

namespace {

std::uint64_t snapped(double x) {
    // Relative snap for pow() noise at exact integer powers.
    double r = std::nearbyint(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
    return 0; // no snap
}

} // namespace

std::uint64_t floor_pow_real(std::uint64_t base, double gamma) {
    double x = std::pow(static_cast<double>(base), gamma);
    if (std::uint64_t s = snapped(x); s != 0 || std::nearbyint(x) == 0.0) return s;
    return static_cast<std::uint64_t>(std::floor(x));
}

std::uint64_t ceil_pow_real(std::uint64_t base, double gamma) {
    double x = std::pow(static_cast<double>(base), gamma);
    if (std::uint64_t s = snapped(x); s != 0 || std::nearbyint(x) == 0.0) return s;
    return static_cast<std::uint64_t>(std::ceil(x));
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

namespace {

// Core reduction: alpha in [0,1), N >= 0. alpha = A / 2^E exactly.
double phase_frac_core(double alpha, const BigInt& N) {
    if (alpha == 0.0) return 0.0;
    int e2 = 0;
    double m = std::frexp(alpha, &e2); // alpha = m * 2^e2, m in [0.5, 1)
    auto A = static_cast<std::uint64_t>(std::ldexp(m, 53));
    long E = 53 - e2; // alpha = A / 2^E, E >= 53 since alpha < 1
    // Strip factors of 2 from A so E stays small for typical alpha.
    while ((A & 1) == 0 && E > 0) {
        A >>= 1;
        --E;
    }
    if (E <= 0) return 0.0; // alpha integral
    BigInt mask = (BigInt(1) << E) - 1;
    BigInt r = (BigInt(A) * (N & mask)) & mask;
    // r / 2^E as double; take the top bits to avoid huge ldexp arguments.
    if (r == 0) return 0.0;
    long bits = static_cast<long>(boost::multiprecision::msb(r)) + 1;
    if (bits > 64) {
        BigInt top = r >> (bits - 64);
        return std::ldexp(top.convert_to<double>(), static_cast<int>(bits - 64 - E));
    }
    return std::ldexp(r.convert_to<double>(), static_cast<int>(-E));
}

double phase_frac_fast(double alpha, std::uint64_t N) {
    // __int128 path when A*(N mod 2^E) fits. Returns -1 when it does not.
    int e2 = 0;
    double m = std::frexp(alpha, &e2);
    auto A = static_cast<std::uint64_t>(std::ldexp(m, 53));
    long E = 53 - e2;
    while ((A & 1) == 0 && E > 0) {
        A >>= 1;
        --E;
    }
    if (E <= 0) return 0.0;
    if (E > 74) return -1.0; // A < 2^53, N' < 2^74 would overflow 128 bits
    unsigned __int128 mask = (static_cast<unsigned __int128>(1) << E) - 1;
    unsigned __int128 Np = static_cast<unsigned __int128>(N) & mask;
    if (Np != 0 && A > static_cast<std::uint64_t>(~static_cast<unsigned __int128>(0) / Np)) return -1.0;
    unsigned __int128 r = (static_cast<unsigned __int128>(A) * Np) & mask;
    return std::ldexp(static_cast<double>(r), static_cast<int>(-E));
}

} // namespace

double phase_frac(double alpha, std::uint64_t N) {
    if (!std::isfinite(alpha)) throw PreconditionError("phase_frac: alpha must be finite");
    if (alpha < 0.0) {
        // Complement after reduction: computing 1 - |alpha| first would smear
        // its rounding error across N.
        double f = phase_frac(-alpha, N);
        return f == 0.0 ? 0.0 : 1.0 - f;
    }
    double a = alpha - std::floor(alpha);
    if (a == 1.0) a = 0.0;
    double f = phase_frac_fast(a, N);
    if (f >= 0.0) return f;
    return phase_frac_core(a, BigInt(N));
}

double phase_frac(double alpha, const BigInt& N) {
    if (!std::isfinite(alpha)) throw PreconditionError("phase_frac: alpha must be finite");
    if (N < 0) {
        double f = phase_frac(alpha, BigInt(-N));
        return f == 0.0 ? 0.0 : 1.0 - f;
    }
    if (N <= std::numeric_limits<std::uint64_t>::max()) {
        return phase_frac(alpha, N.convert_to<std::uint64_t>());
    }
    if (alpha < 0.0) {
        double f = phase_frac(-alpha, N);
        return f == 0.0 ? 0.0 : 1.0 - f;
    }
    double a = alpha - std::floor(alpha);
    if (a == 1.0) a = 0.0;
    return phase_frac_core(a, N);
}

std::complex<double> unit_exp(double frac) {
    double t = 2.0 * std::numbers::pi * frac;
    return {std::cos(t), std::sin(t)};
}

} // namespace ascpow
