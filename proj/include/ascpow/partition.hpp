#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ascpow/exponent_set.hpp"
#include "ascpow/holder.hpp"
#include "ascpow/lambda_table.hpp"

namespace ascpow {

enum class ShapeFamily { A, B, Free };
enum class WeightMode { Ford, Optimized };

// A split of the exponent universe into blocks K_1, K_2 (and K_3 for free
// shapes). Family A: K1 = {6, 8, ..., n}, K2 = {4, n+2, ..., 2s} over the
// universe {4, ..., 2s}. Family B: K1 = {22, ..., n},
// K2 = {6, ..., 20, n+2, ..., 2s} over {6, ..., 2s}.
class PartitionShape {
public:
    static PartitionShape shape_a(int split_n, int two_s);
    static PartitionShape shape_b(int split_n, int two_s);
    static PartitionShape free_blocks(std::vector<ExponentSet> blocks);

    ShapeFamily family() const { return family_; }
    int split_n() const { return split_n_; }
    int two_s() const { return two_s_; }
    const std::vector<ExponentSet>& blocks() const { return blocks_; }

    // Union of all blocks; throws if blocks overlap.
    ExponentSet universe() const;

private:
    PartitionShape() = default;
    ShapeFamily family_ = ShapeFamily::Free;
    int split_n_ = 0;
    int two_s_ = 0;
    std::vector<ExponentSet> blocks_;
};

struct PartitionEval {
    std::vector<double> phis;                  // one per block
    std::vector<HolderAssignment> assignments; // matching order
};

// phi per block via the Hoelder machinery. Coverage errors are rethrown with
// the offending block named.
PartitionEval evaluate_partition(const PartitionShape& shape, const LambdaTable& table,
                                 WeightMode mode);

// Feasibility predicate on (tau, phi_1, phi_2): feasible iff margin >= 0.
struct ConstraintPredicate {
    std::string name;
    std::function<double(double tau, const std::vector<double>& phis)> margin;
};

// Minor-arc bound: -tau/2 + phi1/2 + phi2/2 <= -1.
ConstraintPredicate minor_arc_predicate();
// Quartic replacement: phi1 <= -tau and tau + phi2 <= -1/2.
ConstraintPredicate replace_f4_predicate();

struct SearchBounds {
    int two_s_min = 4;
    int two_s_max = 0; // inclusive
    int n_min = 0;     // 0 = family default
    int n_max = 0;     // 0 = up to 2s - 2
};

struct SearchResult {
    double tau = 0.0;
    int best_2s = 0;
    int best_n = 0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    bool feasible = false;
    double best_margin = 0.0; // margin at the reported candidate
};

// Exhaustive scan over even 2s ascending, then n ascending: the first
// feasible candidate is the minimum 2s with ties broken by smallest n.
// Infeasible in bounds: feasible = false and the best margin found.
SearchResult search_min_s(ShapeFamily family, double tau, const ConstraintPredicate& predicate,
                          const LambdaTable& table, const SearchBounds& bounds,
                          WeightMode mode = WeightMode::Ford);

} // namespace ascpow
