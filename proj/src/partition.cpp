#include "ascpow/partition.hpp"

#include <algorithm>
#include <limits>

#include "ascpow/errors.hpp"

namespace ascpow {

namespace {

std::vector<int> even_seq(int first, int last) {
    std::vector<int> v;
    for (int k = first; k <= last; k += 2) v.push_back(k);
    return v;
}

} // namespace

PartitionShape PartitionShape::shape_a(int split_n, int two_s) {
    if (split_n % 2 != 0 || two_s % 2 != 0 || split_n < 6 || split_n > two_s) {
        throw ValidationError("shape A: need even 6 <= n <= 2s, got n=" +
                              std::to_string(split_n) + ", 2s=" + std::to_string(two_s));
    }
    PartitionShape p;
    p.family_ = ShapeFamily::A;
    p.split_n_ = split_n;
    p.two_s_ = two_s;
    p.blocks_.push_back(ExponentSet(even_seq(6, split_n)));
    std::vector<int> k2{4};
    for (int k : even_seq(split_n + 2, two_s)) k2.push_back(k);
    p.blocks_.push_back(ExponentSet(std::move(k2)));
    return p;
}

PartitionShape PartitionShape::shape_b(int split_n, int two_s) {
    if (split_n % 2 != 0 || two_s % 2 != 0 || split_n < 22 || split_n > two_s) {
        throw ValidationError("shape B: need even 22 <= n <= 2s, got n=" +
                              std::to_string(split_n) + ", 2s=" + std::to_string(two_s));
    }
    PartitionShape p;
    p.family_ = ShapeFamily::B;
    p.split_n_ = split_n;
    p.two_s_ = two_s;
    p.blocks_.push_back(ExponentSet(even_seq(22, split_n)));
    std::vector<int> k2 = even_seq(6, 20);
    for (int k : even_seq(split_n + 2, two_s)) k2.push_back(k);
    p.blocks_.push_back(ExponentSet(std::move(k2)));
    return p;
}

PartitionShape PartitionShape::free_blocks(std::vector<ExponentSet> blocks) {
    if (blocks.size() < 2 || blocks.size() > 3) {
        throw ValidationError("free partition: need 2 or 3 blocks");
    }
    PartitionShape p;
    p.family_ = ShapeFamily::Free;
    p.blocks_ = std::move(blocks);
    p.universe(); // validates disjointness
    return p;
}

ExponentSet PartitionShape::universe() const {
    ExponentSet u = blocks_.at(0);
    for (std::size_t i = 1; i < blocks_.size(); ++i) u = u.disjoint_union(blocks_[i]);
    return u;
}

PartitionEval evaluate_partition(const PartitionShape& shape, const LambdaTable& table,
                                 WeightMode mode) {
    PartitionEval out;
    const auto& blocks = shape.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string where = "block K" + std::to_string(i + 1) + ": ";
        try {
            if (mode == WeightMode::Ford) {
                HolderAssignment w = ford_weights(blocks[i]);
                out.phis.push_back(phi(blocks[i], w, table).phi);
                out.assignments.push_back(std::move(w));
            } else {
                auto [w, p] = optimize_weights(blocks[i], table);
                out.phis.push_back(p.phi);
                out.assignments.push_back(std::move(w));
            }
        } catch (const CoverageError& e) {
            throw CoverageError(where + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(where + e.what());
        }
    }
    return out;
}

ConstraintPredicate minor_arc_predicate() {
    return {"minor-arc",
            [](double tau, const std::vector<double>& phis) {
                double achieved = -tau / 2.0 + phis.at(0) / 2.0 + phis.at(1) / 2.0;
                return -1.0 - achieved;
            }};
}

ConstraintPredicate replace_f4_predicate() {
    return {"replace-f4",
            [](double tau, const std::vector<double>& phis) {
                double m1 = -tau - phis.at(0);
                double m2 = -0.5 - (tau + phis.at(1));
                return std::min(m1, m2);
            }};
}

SearchResult search_min_s(ShapeFamily family, double tau, const ConstraintPredicate& predicate,
                          const LambdaTable& table, const SearchBounds& bounds,
                          WeightMode mode) {
    if (family == ShapeFamily::Free) {
        throw PreconditionError("search_min_s: free shapes are single evaluations, not searches");
    }
    if (bounds.two_s_max < bounds.two_s_min) {
        throw PreconditionError("search_min_s: empty 2s range");
    }
    const int n_floor = (family == ShapeFamily::A) ? 6 : 22;

    SearchResult best;
    best.tau = tau;
    best.feasible = false;
    best.best_margin = -std::numeric_limits<double>::infinity();

    int two_s_min = bounds.two_s_min + (bounds.two_s_min % 2);
    for (int two_s = two_s_min; two_s <= bounds.two_s_max; two_s += 2) {
        int n_lo = std::max(bounds.n_min > 0 ? bounds.n_min : n_floor, n_floor);
        n_lo += n_lo % 2;
        int n_hi = std::min(bounds.n_max > 0 ? bounds.n_max : two_s - 2, two_s - 2);
        for (int n = n_lo; n <= n_hi; n += 2) {
            PartitionShape shape = (family == ShapeFamily::A) ? PartitionShape::shape_a(n, two_s)
                                                              : PartitionShape::shape_b(n, two_s);
            PartitionEval ev;
            try {
                ev = evaluate_partition(shape, table, mode);
            } catch (const ValidationError&) {
                continue; // degenerate block (singleton weights), not a candidate
            }
            double margin = predicate.margin(tau, ev.phis);
            if (margin >= 0.0) {
                SearchResult r;
                r.tau = tau;
                r.best_2s = two_s;
                r.best_n = n;
                r.phi1 = ev.phis.at(0);
                r.phi2 = ev.phis.at(1);
                r.feasible = true;
                r.best_margin = margin;
                return r;
            }
            if (margin > best.best_margin) {
                best.best_margin = margin;
                best.best_2s = two_s;
                best.best_n = n;
                best.phi1 = ev.phis.at(0);
                best.phi2 = ev.phis.at(1);
            }
        }
    }
    return best;
}

} // namespace ascpow
