#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ascpow/exponent_set.hpp"
#include "ascpow/lambda_table.hpp"
#include "ascpow/nu_table.hpp"

namespace ascpow {

// Weights a_k > 1 over an exponent set. Hoelder's inequality needs
// sum_k 1/a_k = 1; constraint_residual records how far a given assignment is
// from that surface. ford_weights/optimize_weights always return assignments
// with residual below 1e-12; phi() evaluates the linear form for any weights.
struct HolderAssignment {
    std::map<int, double> weights; // k -> a_k

    double constraint_residual() const;
    bool is_valid(double tol = 1e-12) const;
    // Throws ValidationError when a weight is <= 1 or the residual exceeds tol.
    void require_valid(double tol = 1e-12) const;
};

struct PhiResult {
    double phi = 0.0;
    std::map<int, double> per_k_terms; // k -> lambda(k, a_k) / (k * a_k)
    double reciprocal_part = 0.0;      // 2 * sum 1/k
};

// Proportional weights a_k = c*k with c = sum_{j in K} 1/j; the unique
// a_k ~ k solution of sum 1/a_k = 1. Exact in rational arithmetic.
// ValidationError for a singleton (a_k = 1 is not a Hoelder exponent).
HolderAssignment ford_weights(const ExponentSet& K);

// phi = sum_k lambda(k, a_k)/(k a_k) - 2 sum_k 1/k.
// Propagates table coverage errors. Assignment must cover exactly K.
PhiResult phi(const ExponentSet& K, const HolderAssignment& assignment,
              const LambdaTable& table);

// Minimizes phi over the constraint surface sum 1/a_k = 1 by projected
// pairwise coordinate descent seeded at ford_weights, clamped to the table's
// covered s-range per k. Never returns a phi above the seed's. budget is the
// number of descent sweeps; budget = 0 returns the seed untouched.
std::pair<HolderAssignment, PhiResult> optimize_weights(const ExponentSet& K,
                                                        const LambdaTable& table,
                                                        int budget = 40);

// Generalized form for products with per-exponent multiplicities m_k:
// the integral of prod |g_k|^{m_k} splits under weights with
// sum_k m_k/(2 a_k) = 1 and exponent
//   phi = sum_k (m_k / (2 a_k)) * lambda(k, a_k) / k - sum_k m_k / k.
// multiplicity m_k = 2 for every k recovers the plain phi above.
struct WeightedBlock {
    std::map<int, int> multiplicity; // k -> m_k (positive even in practice)
};

double weighted_constraint_residual(const WeightedBlock& block,
                                    const HolderAssignment& assignment);
PhiResult phi_weighted(const WeightedBlock& block, const HolderAssignment& assignment,
                       const LambdaTable& table);
HolderAssignment ford_weights_weighted(const WeightedBlock& block);
std::pair<HolderAssignment, PhiResult> optimize_weights_weighted(const WeightedBlock& block,
                                                                 const LambdaTable& table,
                                                                 int budget = 40);

// Mixed mean value: minimize sum_i (x_i / k_i) * nu(h, k_i, 1/x_i) over the
// simplex x_i >= 0, sum x_i = 1. Terms with x_i = 0 contribute zero and make
// no coverage demand. Exhaustive simplex grid at the given resolution when the
// lattice is small enough, pairwise descent otherwise; both modes finish with
// a local refinement pass down to 1e-6.
struct MixedPhiResult {
    std::vector<double> x; // aligned with S.members()
    double phi = 0.0;
};

MixedPhiResult mixed_phi(int h, const ExponentSet& S, const NuTable& nu,
                         double resolution = 1e-3);

} // namespace ascpow
