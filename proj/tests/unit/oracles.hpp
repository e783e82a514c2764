#pragma once

// Test-side oracles, implemented independently of the library code paths they
// check.

#include <cstdint>
#include <vector>

namespace oracles {

// Y-smooth numbers <= X by plain trial division.
std::vector<std::uint64_t> smooth_by_trial_division(std::uint64_t X, std::uint64_t Y);

// Dickman rho via RK4 on the delay ODE u rho'(u) = -rho(u-1), fixed step h,
// cubic interpolation of the stored history. Independent of the production
// integral-equation continuation.
double dickman_rk4(double u, double h = 1e-4);

// Exact representation count by odometer enumeration over the full tuple
// space (no pruning, no splitting).
std::uint64_t count_odometer(std::uint64_t n, const std::vector<int>& ks, bool allow_zero);

// Count with explicit per-exponent candidate value lists.
std::uint64_t count_filtered(std::uint64_t target,
                             const std::vector<std::vector<std::uint64_t>>& value_lists,
                             const std::vector<int>& ks);

} // namespace oracles
