#include "ascpow/holder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ascpow/errors.hpp"

namespace ascpow {

double HolderAssignment::constraint_residual() const {
    double s = 0.0;
    for (const auto& [k, a] : weights) s += 1.0 / a;
    return std::abs(s - 1.0);
}

bool HolderAssignment::is_valid(double tol) const {
    for (const auto& [k, a] : weights) {
        if (!(a > 1.0)) return false;
    }
    return constraint_residual() <= tol;
}

void HolderAssignment::require_valid(double tol) const {
    for (const auto& [k, a] : weights) {
        if (!(a > 1.0)) {
            throw ValidationError("holder weights: a_" + std::to_string(k) + " = " +
                                  std::to_string(a) + " must exceed 1");
        }
    }
    if (constraint_residual() > tol) {
        throw ValidationError("holder weights: sum of reciprocals off by " +
                              std::to_string(constraint_residual()));
    }
}

namespace {

WeightedBlock plain_block(const ExponentSet& K) {
    WeightedBlock b;
    for (int k : K.members()) b.multiplicity[k] = 2;
    return b;
}

void check_alignment(const WeightedBlock& block, const HolderAssignment& assignment) {
    if (block.multiplicity.size() != assignment.weights.size()) {
        throw ValidationError("holder: weights do not match the exponent set");
    }
    for (const auto& [k, m] : block.multiplicity) {
        (void)m;
        if (!assignment.weights.count(k)) {
            throw ValidationError("holder: no weight for exponent " + std::to_string(k));
        }
    }
}

} // namespace

double weighted_constraint_residual(const WeightedBlock& block,
                                    const HolderAssignment& assignment) {
    check_alignment(block, assignment);
    double s = 0.0;
    for (const auto& [k, m] : block.multiplicity) s += m / (2.0 * assignment.weights.at(k));
    return std::abs(s - 1.0);
}

HolderAssignment ford_weights_weighted(const WeightedBlock& block) {
    if (block.multiplicity.empty()) throw ValidationError("holder: empty block");
    BigRational c = 0;
    for (const auto& [k, m] : block.multiplicity) {
        if (m <= 0) throw ValidationError("holder: multiplicity must be positive");
        c += BigRational(m, 2 * k);
    }
    HolderAssignment out;
    for (const auto& [k, m] : block.multiplicity) {
        (void)m;
        double a = to_double(c * k);
        if (!(a > 1.0)) {
            throw ValidationError("holder: proportional weights degenerate, a_" +
                                  std::to_string(k) + " = " + std::to_string(a) +
                                  " (singleton set?)");
        }
        out.weights[k] = a;
    }
    return out;
}

HolderAssignment ford_weights(const ExponentSet& K) {
    return ford_weights_weighted(plain_block(K));
}

PhiResult phi_weighted(const WeightedBlock& block, const HolderAssignment& assignment,
                       const LambdaTable& table) {
    check_alignment(block, assignment);
    PhiResult r;
    BigRational rec = 0;
    for (const auto& [k, m] : block.multiplicity) rec += BigRational(m, k);
    r.reciprocal_part = to_double(rec);
    double sum = 0.0;
    for (const auto& [k, m] : block.multiplicity) {
        double a = assignment.weights.at(k);
        double u = m / (2.0 * a);
        double term = u * table.lambda_real(k, a) / k;
        r.per_k_terms[k] = term;
        sum += term;
    }
    r.phi = sum - r.reciprocal_part;
    return r;
}

PhiResult phi(const ExponentSet& K, const HolderAssignment& assignment,
              const LambdaTable& table) {
    return phi_weighted(plain_block(K), assignment, table);
}

namespace {

// 1-D minimization of f over [lo, hi]: coarse grid then golden-section around
// the best sample. The objective is piecewise linear between table knots, so
// this is accurate enough and cheap.
double line_min(const std::function<double(double)>& f, double lo, double hi, double& best_f) {
    constexpr int kGrid = 25;
    double best_t = lo;
    best_f = f(lo);
    for (int i = 1; i <= kGrid; ++i) {
        double t = lo + (hi - lo) * i / kGrid;
        double v = f(t);
        if (v < best_f) {
            best_f = v;
            best_t = t;
        }
    }
    double step = (hi - lo) / kGrid;
    double a = std::max(lo, best_t - step);
    double b = std::min(hi, best_t + step);
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 48 && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    double mid = 0.5 * (a + b);
    double fm = f(mid);
    if (fm < best_f) {
        best_f = fm;
        best_t = mid;
    }
    return best_t;
}

} // namespace

std::pair<HolderAssignment, PhiResult> optimize_weights_weighted(const WeightedBlock& block,
                                                                 const LambdaTable& table,
                                                                 int budget) {
    HolderAssignment seed = ford_weights_weighted(block);
    PhiResult seed_phi = phi_weighted(block, seed, table); // also proves coverage
    if (budget <= 0) return {seed, seed_phi};

    std::vector<int> ks;
    std::vector<double> mult;
    for (const auto& [k, m] : block.multiplicity) {
        ks.push_back(k);
        mult.push_back(static_cast<double>(m));
    }
    const std::size_t r = ks.size();

    // Work in u_k = m_k / (2 a_k): simplex coordinates, sum u = 1. Clamp each
    // a_k to the contiguous covered s-run around the seed so the search never
    // walks off the table.
    std::vector<double> u(r), u_lo(r), u_hi(r), a_lo(r), a_hi(r);
    for (std::size_t i = 0; i < r; ++i) {
        double a_seed = seed.weights.at(ks[i]);
        u[i] = mult[i] / (2.0 * a_seed);
        auto run = table.contiguous_range(ks[i], static_cast<int>(std::floor(a_seed)));
        double a_min = 1.0 + 1e-9;
        double a_max = a_seed;
        if (run) {
            a_min = std::max(a_min, static_cast<double>(run->first));
            a_max = static_cast<double>(run->second);
        }
        a_max = std::max(a_max, a_seed);
        a_lo[i] = a_min;
        a_hi[i] = a_max;
        u_lo[i] = mult[i] / (2.0 * a_max);
        u_hi[i] = mult[i] / (2.0 * a_min);
    }

    // The u <-> a roundtrip can round a hair past the covered run; clamping a
    // here keeps every probe inside it.
    auto term = [&](std::size_t i, double ui) {
        double a = std::clamp(mult[i] / (2.0 * ui), a_lo[i], a_hi[i]);
        return ui * table.lambda_real(ks[i], a) / ks[i];
    };
    std::vector<double> terms(r);
    for (std::size_t i = 0; i < r; ++i) terms[i] = term(i, u[i]);

    bool improved = true;
    for (int sweep = 0; sweep < budget && improved; ++sweep) {
        improved = false;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                if (i == j) continue;
                // Move mass t from u_j to u_i.
                double t_hi = std::min(u_hi[i] - u[i], u[j] - u_lo[j]);
                if (t_hi <= 0.0) continue;
                double base = terms[i] + terms[j];
                auto f = [&](double t) { return term(i, u[i] + t) + term(j, u[j] - t); };
                double best_f;
                double t_best = line_min(f, 0.0, t_hi, best_f);
                if (best_f < base - 1e-15 && t_best > 0.0) {
                    u[i] += t_best;
                    u[j] -= t_best;
                    terms[i] = term(i, u[i]);
                    terms[j] = term(j, u[j]);
                    improved = true;
                }
            }
        }
    }

    HolderAssignment out;
    for (std::size_t i = 0; i < r; ++i) {
        out.weights[ks[i]] = std::clamp(mult[i] / (2.0 * u[i]), a_lo[i], a_hi[i]);
    }
    PhiResult out_phi = phi_weighted(block, out, table);
    // Descent guarantee: never report worse than the seed.
    if (out_phi.phi > seed_phi.phi) return {seed, seed_phi};
    return {out, out_phi};
}

std::pair<HolderAssignment, PhiResult> optimize_weights(const ExponentSet& K,
                                                        const LambdaTable& table, int budget) {
    return optimize_weights_weighted(plain_block(K), table, budget);
}

namespace {

double mixed_objective(int h, const std::vector<int>& ks, const NuTable& nu,
                       const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (x[i] <= 0.0) continue; // zero coefficient: factor unused
        s += (x[i] / ks[i]) * nu.value(h, ks[i], 1.0 / x[i]);
    }
    return s;
}

// Number of compositions of n into r nonneg parts, capped.
double composition_count(long n, std::size_t r) {
    double c = 1.0;
    for (std::size_t i = 1; i < r; ++i) {
        c *= static_cast<double>(n + static_cast<long>(i)) / static_cast<double>(i);
        if (c > 1e16) return c;
    }
    return c;
}

} // namespace

MixedPhiResult mixed_phi(int h, const ExponentSet& S, const NuTable& nu, double resolution) {
    if (!(resolution > 0.0) || resolution > 1.0) {
        throw ValidationError("mixed_phi: invalid grid resolution " + std::to_string(resolution) +
                              " (need 0 < resolution <= 1)");
    }
    const auto& ks = S.members();
    const std::size_t r = ks.size();
    if (r == 1) {
        // Forced by the convexity constraint.
        MixedPhiResult out;
        out.x = {1.0};
        out.phi = nu.value(h, ks[0], 1.0) / ks[0];
        return out;
    }

    const long N = std::lround(1.0 / resolution);
    std::vector<double> best_x;
    double best_phi = 0.0;

    if (composition_count(N, r) <= 2e6) {
        // Exhaustive lattice scan of x_i = c_i / N, sum c_i = N.
        std::vector<long> c(r, 0);
        std::vector<double> x(r, 0.0);
        bool first = true;
        std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
            if (i + 1 == r) {
                c[i] = left;
                for (std::size_t t = 0; t < r; ++t) x[t] = static_cast<double>(c[t]) / N;
                double v = mixed_objective(h, ks, nu, x);
                if (first || v < best_phi) {
                    first = false;
                    best_phi = v;
                    best_x = x;
                }
                return;
            }
            for (long v = 0; v <= left; ++v) {
                c[i] = v;
                rec(i + 1, left - v);
            }
        };
        rec(0, N);
    } else {
        // Lattice too large: pairwise projected descent from the uniform point
        // at the same resolution.
        std::vector<double> x(r, 1.0 / static_cast<double>(r));
        best_phi = mixed_objective(h, ks, nu, x);
        double step = resolution;
        bool moved = true;
        while (moved) {
            moved = false;
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) {
                    if (i == j || x[j] < step) continue;
                    x[i] += step;
                    x[j] -= step;
                    double v = mixed_objective(h, ks, nu, x);
                    if (v < best_phi - 1e-15) {
                        best_phi = v;
                        moved = true;
                    } else {
                        x[i] -= step;
                        x[j] += step;
                    }
                }
            }
        }
        best_x = x;
    }

    // Local refinement: shrink pairwise steps from the grid resolution to 1e-6.
    // Probes that leave the table's covered region are rejected, not fatal;
    // the incumbent from the grid phase is always coverable.
    auto try_objective = [&](const std::vector<double>& x, double& out) {
        try {
            out = mixed_objective(h, ks, nu, x);
            return true;
        } catch (const CoverageError&) {
            return false;
        }
    };
    for (double step = resolution / 2.0; step >= 1e-6; step /= 2.0) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) {
                    if (i == j || best_x[j] < step) continue;
                    best_x[i] += step;
                    best_x[j] -= step;
                    double v;
                    if (try_objective(best_x, v) && v < best_phi - 1e-15) {
                        best_phi = v;
                        moved = true;
                    } else {
                        best_x[i] -= step;
                        best_x[j] += step;
                    }
                }
            }
        }
    }

    MixedPhiResult out;
    out.x = std::move(best_x);
    out.phi = best_phi;
    return out;
}

} // namespace ascpow
