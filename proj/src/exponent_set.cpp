#include "ascpow/exponent_set.hpp"

#include <algorithm>
#include <string>

#include "ascpow/errors.hpp"

namespace ascpow {

ExponentSet::ExponentSet(std::vector<int> members) : members_(std::move(members)) {
    if (members_.empty()) throw ValidationError("exponent set must be non-empty");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 2) {
            throw ValidationError("exponent set: member " + std::to_string(members_[i]) +
                                  " is below 2");
        }
        if (i > 0 && members_[i] <= members_[i - 1]) {
            throw ValidationError("exponent set must be strictly increasing (saw " +
                                  std::to_string(members_[i - 1]) + " then " +
                                  std::to_string(members_[i]) + ")");
        }
    }
}

ExponentSet ExponentSet::even_range(int first, int last) {
    if (first % 2 != 0 || last % 2 != 0 || first > last) {
        throw ValidationError("even_range: need even first <= last, got [" +
                              std::to_string(first) + ", " + std::to_string(last) + "]");
    }
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>((last - first) / 2 + 1));
    for (int k = first; k <= last; k += 2) v.push_back(k);
    return ExponentSet(std::move(v));
}

bool ExponentSet::contains(int k) const {
    return std::binary_search(members_.begin(), members_.end(), k);
}

BigRational ExponentSet::reciprocal_sum() const {
    BigRational s = 0;
    for (int k : members_) s += BigRational(1, k);
    return s;
}

ExponentSet ExponentSet::disjoint_union(const ExponentSet& other) const {
    std::vector<int> merged;
    merged.reserve(members_.size() + other.members_.size());
    std::merge(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
               std::back_inserter(merged));
    for (std::size_t i = 1; i < merged.size(); ++i) {
        if (merged[i] == merged[i - 1]) {
            throw ValidationError("blocks overlap at exponent " + std::to_string(merged[i]));
        }
    }
    return ExponentSet(std::move(merged));
}

} // namespace ascpow
