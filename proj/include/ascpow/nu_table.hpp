#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ascpow {

// Mixed mean-value exponent table nu(h, k, x) on per-(h,k) grids of x > 0.
// Strictly increasing grids; within-grid interpolation only.
class NuTable {
public:
    using Key = std::pair<int, int>; // (h, k)
    struct GridPoint {
        double x;
        double nu;
    };

    NuTable() = default;

    // CSV with header "h,k,x,nu"; '#' comment lines permitted. Rows for one
    // (h,k) may appear in any order; the assembled grid must be strictly
    // increasing in x.
    static NuTable load_csv(std::istream& in, std::string provenance);
    static NuTable load_csv_file(const std::string& path);

    // Programmatic grid (tests). Points need not be sorted on entry.
    void add_grid(int h, int k, std::vector<GridPoint> points);

    const std::string& provenance() const { return provenance_; }
    bool has(int h, int k) const;
    const std::vector<GridPoint>& grid(int h, int k) const;

    // Piecewise-linear interpolation on the stored x-grid; exact at grid
    // points. CoverageError if (h,k) is absent or x falls outside the grid.
    double value(int h, int k, double x) const;

    void save_csv(std::ostream& out) const;

private:
    void validate_grid(int h, int k, std::vector<GridPoint>& points) const;

    std::map<Key, std::vector<GridPoint>> grids_;
    std::string provenance_;
};

} // namespace ascpow
