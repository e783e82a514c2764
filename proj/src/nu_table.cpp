#include "ascpow/nu_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ascpow/errors.hpp"

namespace ascpow {

namespace {

std::string key_str(int h, int k) {
    return "(h=" + std::to_string(h) + ", k=" + std::to_string(k) + ")";
}

void strip_ws(std::string& s) {
    auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && issp(s[i])) ++i;
    s.erase(0, i);
}

} // namespace

void NuTable::validate_grid(int h, int k, std::vector<GridPoint>& points) const {
    if (points.empty()) throw ValidationError("nu table: empty grid for " + key_str(h, k));
    std::sort(points.begin(), points.end(),
              [](const GridPoint& a, const GridPoint& b) { return a.x < b.x; });
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].x > 0.0) || !std::isfinite(points[i].x) ||
            !std::isfinite(points[i].nu)) {
            throw ValidationError("nu table: invalid grid point for " + key_str(h, k));
        }
        if (i > 0 && points[i].x == points[i - 1].x) {
            throw ValidationError("nu table: duplicate x=" + std::to_string(points[i].x) +
                                  " for " + key_str(h, k));
        }
    }
}

void NuTable::add_grid(int h, int k, std::vector<GridPoint> points) {
    validate_grid(h, k, points);
    if (!grids_.emplace(Key{h, k}, std::move(points)).second) {
        throw ValidationError("nu table: grid already present for " + key_str(h, k));
    }
}

NuTable NuTable::load_csv(std::istream& in, std::string provenance) {
    NuTable t;
    t.provenance_ = std::move(provenance);
    std::map<Key, std::vector<GridPoint>> staged;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        strip_ws(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            std::string hline = line;
            std::erase(hline, ' ');
            if (hline != "h,k,x,nu") {
                throw ParseError("nu table: expected header 'h,k,x,nu', got '" + line +
                                 "' (line " + std::to_string(line_no) + ")");
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string f[4], extra;
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(row, f[i], ',')) {
                throw ParseError("nu table: malformed row '" + line + "' (line " +
                                 std::to_string(line_no) + ")");
            }
            strip_ws(f[i]);
        }
        if (std::getline(row, extra, ',')) {
            throw ParseError("nu table: too many fields (line " + std::to_string(line_no) + ")");
        }
        try {
            std::size_t p = 0;
            int h = std::stoi(f[0], &p);
            if (p != f[0].size()) throw std::invalid_argument("h");
            int k = std::stoi(f[1], &p);
            if (p != f[1].size()) throw std::invalid_argument("k");
            double x = std::stod(f[2], &p);
            if (p != f[2].size()) throw std::invalid_argument("x");
            double nu = std::stod(f[3], &p);
            if (p != f[3].size()) throw std::invalid_argument("nu");
            staged[Key{h, k}].push_back(GridPoint{x, nu});
        } catch (const std::exception&) {
            throw ParseError("nu table: malformed row '" + line + "' (line " +
                             std::to_string(line_no) + ")");
        }
    }
    if (!header_seen) throw ParseError("nu table: empty input, no header");
    for (auto& [key, pts] : staged) t.add_grid(key.first, key.second, std::move(pts));
    return t;
}

NuTable NuTable::load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("nu table: cannot open '" + path + "'");
    return load_csv(in, path);
}

bool NuTable::has(int h, int k) const { return grids_.count(Key{h, k}) > 0; }

const std::vector<NuTable::GridPoint>& NuTable::grid(int h, int k) const {
    auto it = grids_.find(Key{h, k});
    if (it == grids_.end()) {
        throw CoverageError("nu table [" + provenance_ + "]: no grid for " + key_str(h, k));
    }
    return it->second;
}

double NuTable::value(int h, int k, double x) const {
    const auto& g = grid(h, k);
    if (x < g.front().x || x > g.back().x) {
        throw CoverageError("nu table [" + provenance_ + "]: x=" + std::to_string(x) +
                            " outside grid [" + std::to_string(g.front().x) + ", " +
                            std::to_string(g.back().x) + "] for " + key_str(h, k));
    }
    auto it = std::lower_bound(g.begin(), g.end(), x,
                               [](const GridPoint& p, double v) { return p.x < v; });
    if (it->x == x) return it->nu;
    const GridPoint& hi = *it;
    const GridPoint& lo = *(it - 1);
    double t = (x - lo.x) / (hi.x - lo.x);
    return (1.0 - t) * lo.nu + t * hi.nu;
}

void NuTable::save_csv(std::ostream& out) const {
    out << "h,k,x,nu\n";
    char bx[40], bn[40];
    for (const auto& [key, pts] : grids_) {
        for (const auto& p : pts) {
            std::snprintf(bx, sizeof bx, "%.17g", p.x);
            std::snprintf(bn, sizeof bn, "%.17g", p.nu);
            out << key.first << ',' << key.second << ',' << bx << ',' << bn << '\n';
        }
    }
}

} // namespace ascpow
