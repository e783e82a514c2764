#pragma once

#include <initializer_list>
#include <vector>

#include "ascpow/rational.hpp"

namespace ascpow {

// An ordered set of exponents k >= 2 (strictly increasing). All even in the
// intended application, but the type only enforces the set structure.
class ExponentSet {
public:
    ExponentSet() = default;
    explicit ExponentSet(std::vector<int> members);
    ExponentSet(std::initializer_list<int> members)
        : ExponentSet(std::vector<int>(members)) {}

    // {first, first+2, ..., last}
    static ExponentSet even_range(int first, int last);

    const std::vector<int>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    bool contains(int k) const;

    // Sum of 1/k over the set, exact.
    BigRational reciprocal_sum() const;
    double reciprocal_sum_real() const { return to_double(reciprocal_sum()); }

    // Set union; throws ValidationError if the sets overlap.
    ExponentSet disjoint_union(const ExponentSet& other) const;

    bool operator==(const ExponentSet& other) const = default;

private:
    std::vector<int> members_;
};

} // namespace ascpow
