#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ascpow {

// Mean-value exponent table lambda(k, s): k even >= 4, s integer >= 1.
// Immutable after construction; lookups outside stored keys fail loudly,
// never extrapolate.
class LambdaTable {
public:
    using Key = std::pair<int, int>; // (k, s)

    // The bundled diagonal lambda(k, k) for even k in [4, 74], at full printed
    // precision (36 entries).
    static const LambdaTable& builtin_diagonal();

    // CSV with header "k,s,lambda"; '#' comment lines permitted.
    static LambdaTable load_csv(std::istream& in, std::string provenance);
    static LambdaTable load_csv_file(const std::string& path);

    // Programmatic construction (tests, synthetic tables). Rows are validated
    // the same way as CSV input.
    static LambdaTable from_rows(const std::vector<std::tuple<int, int, double>>& rows,
                                 std::string provenance);

    const std::string& provenance() const { return provenance_; }
    std::size_t size() const { return entries_.size(); }
    const std::map<Key, double>& entries() const { return entries_; }

    bool has(int k, int s) const;
    // Exact stored value; CoverageError if the key is absent.
    double at(int k, int s) const;

    // lambda at real s: exact at stored integer keys, otherwise the linear
    // interpolation (1-theta)*lambda(k,h) + theta*lambda(k,h+1), h = floor(s).
    // CoverageError identifies (k, floor(s), ceil(s)) when brackets are missing.
    double lambda_real(int k, double s) const;

    // Stored integer s keys for k, ascending (empty if k unknown).
    std::vector<int> s_keys(int k) const;

    // Widest contiguous run of integer s keys containing s0, as [lo, hi].
    std::optional<std::pair<int, int>> contiguous_range(int k, int s0) const;

    // Writes the same CSV dialect load_csv reads, at round-trip precision.
    void save_csv(std::ostream& out) const;

private:
    LambdaTable() = default;
    void insert_checked(int k, int s, double lambda, long line_no);
    void check_monotone() const;

    std::map<Key, double> entries_;
    std::string provenance_;
};

} // namespace ascpow
