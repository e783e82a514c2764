#include "ascpow/lambda_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "ascpow/errors.hpp"

namespace ascpow {

namespace {

// Table of lambda(k, k), even k from 4 to 74, as printed.
constexpr struct {
    int k;
    const char* lambda;
} kDiagonal[] = {
    {4, "4.60572553279363"},   {6, "7.31830866162191"},   {8, "9.92905727118400"},
    {10, "12.5085676596728"},  {12, "15.0810335354744"},  {14, "17.6492420253841"},
    {16, "20.2147016775680"},  {18, "22.7782942010074"},  {20, "25.3405652008671"},
    {22, "27.9018686743506"},  {24, "30.4624435937399"},  {26, "33.0224567697859"},
    {28, "35.5820280054141"},  {30, "38.1412454741396"},  {32, "40.7001754622901"},
    {34, "43.2588687351309"},  {36, "45.8173648117595"},  {38, "48.3756949057251"},
    {40, "50.9338839916435"},  {42, "53.4919522856964"},  {44, "56.0499163246911"},
    {46, "58.6077897648850"},  {48, "61.1655839817793"},  {50, "63.7233085263161"},
    {52, "66.2809714759776"},  {54, "68.8385797079435"},  {56, "71.3961391137431"},
    {58, "73.9536547694960"},  {60, "76.5111310720912"},  {62, "79.0685718489890"},
    {64, "81.6259804474121"},  {66, "84.1833598073007"},  {68, "86.7407126613713"},
    {70, "89.2980408848625"},  {72, "91.8553469369745"},  {74, "94.4126324955738"},
};

std::string key_str(int k, int s) {
    return "(k=" + std::to_string(k) + ", s=" + std::to_string(s) + ")";
}

void strip_ws(std::string& s) {
    auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && issp(s[i])) ++i;
    s.erase(0, i);
}

} // namespace

const LambdaTable& LambdaTable::builtin_diagonal() {
    static const LambdaTable table = [] {
        LambdaTable t;
        t.provenance_ = "builtin-diagonal";
        for (const auto& e : kDiagonal) {
            t.insert_checked(e.k, e.k, std::strtod(e.lambda, nullptr), -1);
        }
        t.check_monotone();
        return t;
    }();
    return table;
}

void LambdaTable::insert_checked(int k, int s, double lambda, long line_no) {
    auto where = [line_no] {
        return line_no >= 0 ? " (line " + std::to_string(line_no) + ")" : std::string();
    };
    if (k < 4 || k % 2 != 0) {
        throw ValidationError("lambda table: k must be even and >= 4, got " + std::to_string(k) +
                              where());
    }
    if (s < 1) {
        throw ValidationError("lambda table: s must be a positive integer, got " +
                              std::to_string(s) + where());
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("lambda table: lambda must be finite and >= 0 at " + key_str(k, s) +
                              where());
    }
    auto [it, inserted] = entries_.emplace(Key{k, s}, lambda);
    (void)it;
    if (!inserted) {
        throw ValidationError("lambda table: duplicate key " + key_str(k, s) + where());
    }
}

void LambdaTable::check_monotone() const {
    // Within each k, lambda must be non-decreasing in s: more moments cannot
    // shrink the exponent.
    const Key* prev = nullptr;
    double prev_val = 0.0;
    for (const auto& [key, val] : entries_) {
        if (prev && prev->first == key.first && val < prev_val) {
            throw ValidationError("lambda table: monotonicity violation at " +
                                  key_str(key.first, key.second) + ": lambda=" +
                                  std::to_string(val) + " < lambda" +
                                  key_str(prev->first, prev->second) + "=" +
                                  std::to_string(prev_val));
        }
        prev = &key;
        prev_val = val;
    }
}

LambdaTable LambdaTable::load_csv(std::istream& in, std::string provenance) {
    LambdaTable t;
    t.provenance_ = std::move(provenance);
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        strip_ws(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            std::string h = line;
            std::erase(h, ' ');
            if (h != "k,s,lambda") {
                throw ParseError("lambda table: expected header 'k,s,lambda', got '" + line +
                                 "' (line " + std::to_string(line_no) + ")");
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string f1, f2, f3, extra;
        if (!std::getline(row, f1, ',') || !std::getline(row, f2, ',') ||
            !std::getline(row, f3, ',')) {
            throw ParseError("lambda table: malformed row '" + line + "' (line " +
                             std::to_string(line_no) + ")");
        }
        if (std::getline(row, extra, ',')) {
            throw ParseError("lambda table: too many fields (line " + std::to_string(line_no) +
                             ")");
        }
        strip_ws(f1);
        strip_ws(f2);
        strip_ws(f3);
        try {
            std::size_t p1 = 0, p2 = 0, p3 = 0;
            int k = std::stoi(f1, &p1);
            int s = std::stoi(f2, &p2);
            double lambda = std::stod(f3, &p3);
            if (p1 != f1.size() || p2 != f2.size() || p3 != f3.size()) {
                throw std::invalid_argument("trailing junk");
            }
            t.insert_checked(k, s, lambda, line_no);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("lambda table: malformed row '" + line + "' (line " +
                             std::to_string(line_no) + ")");
        }
    }
    if (!header_seen) throw ParseError("lambda table: empty input, no header");
    t.check_monotone();
    return t;
}

LambdaTable LambdaTable::load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("lambda table: cannot open '" + path + "'");
    return load_csv(in, path);
}

LambdaTable LambdaTable::from_rows(const std::vector<std::tuple<int, int, double>>& rows,
                                   std::string provenance) {
    LambdaTable t;
    t.provenance_ = std::move(provenance);
    for (const auto& [k, s, lambda] : rows) t.insert_checked(k, s, lambda, -1);
    t.check_monotone();
    return t;
}

bool LambdaTable::has(int k, int s) const { return entries_.count(Key{k, s}) > 0; }

double LambdaTable::at(int k, int s) const {
    auto it = entries_.find(Key{k, s});
    if (it == entries_.end()) {
        throw CoverageError("lambda table [" + provenance_ + "]: key absent " + key_str(k, s));
    }
    return it->second;
}

double LambdaTable::lambda_real(int k, double s) const {
    if (!(s >= 1.0)) {
        throw PreconditionError("lambda_real: s must be >= 1, got " + std::to_string(s));
    }
    double fl = std::floor(s);
    auto h = static_cast<int>(fl);
    if (s == fl) {
        if (!has(k, h)) {
            throw CoverageError("lambda table [" + provenance_ + "]: coverage gap at " +
                                key_str(k, h));
        }
        return at(k, h);
    }
    if (!has(k, h) || !has(k, h + 1)) {
        throw CoverageError("lambda table [" + provenance_ + "]: coverage gap, need keys " +
                            key_str(k, h) + " and " + key_str(k, h + 1));
    }
    double theta = s - fl;
    return (1.0 - theta) * at(k, h) + theta * at(k, h + 1);
}

std::vector<int> LambdaTable::s_keys(int k) const {
    std::vector<int> out;
    for (auto it = entries_.lower_bound(Key{k, 0});
         it != entries_.end() && it->first.first == k; ++it) {
        out.push_back(it->first.second);
    }
    return out;
}

std::optional<std::pair<int, int>> LambdaTable::contiguous_range(int k, int s0) const {
    auto keys = s_keys(k);
    if (keys.empty()) return std::nullopt;
    // Locate the run of consecutive integers containing s0 (or its floor).
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < keys.size() && keys[j + 1] == keys[j] + 1) ++j;
        if (keys[i] <= s0 && s0 <= keys[j]) return std::make_pair(keys[i], keys[j]);
        i = j;
    }
    return std::nullopt;
}

void LambdaTable::save_csv(std::ostream& out) const {
    out << "k,s,lambda\n";
    char buf[40];
    for (const auto& [key, val] : entries_) {
        // max_digits10 so reload reproduces bits exactly
        std::snprintf(buf, sizeof buf, "%.17g", val);
        out << key.first << ',' << key.second << ',' << buf << '\n';
    }
}

} // namespace ascpow
