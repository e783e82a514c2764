#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "ascpow/errors.hpp"
#include "ascpow/lambda_table.hpp"

using namespace ascpow;

namespace {

// The printed diagonal, frozen independently of the library's copy.
constexpr struct {
    int k;
    const char* lambda;
} kPrinted[] = {
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

} // namespace

TEST_CASE("builtin diagonal carries exactly the 36 printed values") {
    const LambdaTable& t = LambdaTable::builtin_diagonal();
    CHECK(t.size() == 36);
    CHECK(t.provenance() == "builtin-diagonal");
    for (const auto& e : kPrinted) {
        double expected = std::strtod(e.lambda, nullptr);
        CHECK(t.at(e.k, e.k) == expected); // bitwise: same decimal string parsed
    }
    CHECK(t.at(4, 4) == doctest::Approx(4.60572553279363).epsilon(1e-15));
    CHECK(t.at(74, 74) == doctest::Approx(94.4126324955738).epsilon(1e-15));
    CHECK_THROWS_AS(t.at(5, 5), CoverageError);
    CHECK_THROWS_AS(t.at(76, 76), CoverageError);
}

TEST_CASE("lambda_real reproduces stored values exactly at integer s") {
    const LambdaTable& t = LambdaTable::builtin_diagonal();
    for (const auto& e : kPrinted) {
        CHECK(t.lambda_real(e.k, static_cast<double>(e.k)) == t.at(e.k, e.k));
    }
}

TEST_CASE("lambda_real linear interpolation") {
    auto t = LambdaTable::from_rows({{4, 4, 4.0}, {4, 5, 6.0}}, "synthetic");
    CHECK(t.lambda_real(4, 4.5) == doctest::Approx(5.0).epsilon(1e-15));
    auto t2 = LambdaTable::from_rows({{6, 6, 7.31830866162191}, {6, 7, 8.0}}, "synthetic");
    CHECK(t2.lambda_real(6, 6.25) ==
          doctest::Approx(7.48873149621643).epsilon(1e-14)); // 0.75*l(6,6) + 0.25*8
    // monotone non-decreasing in s across the covered interval
    double prev = t.lambda_real(4, 4.0);
    for (double s = 4.05; s <= 5.0; s += 0.05) {
        double v = t.lambda_real(4, s);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("lambda_real coverage errors identify the missing bracket") {
    const LambdaTable& t = LambdaTable::builtin_diagonal();
    CHECK_THROWS_WITH_AS(t.lambda_real(4, 4.5), doctest::Contains("s=5"), CoverageError);
    CHECK_THROWS_AS(t.lambda_real(8, 3.0), CoverageError);
    CHECK_THROWS_AS(t.lambda_real(4, 0.5), PreconditionError);
}

TEST_CASE("csv load happy path") {
    std::istringstream in(
        "# comment\n"
        "k,s,lambda\n"
        "4,4,4.60572553279363\n"
        "4,5,5.0\n");
    auto t = LambdaTable::load_csv(in, "test");
    CHECK(t.size() == 2);
    CHECK(t.at(4, 4) == doctest::Approx(4.60572553279363).epsilon(1e-15));
    CHECK(t.at(4, 5) == 5.0);
}

TEST_CASE("csv rejects duplicates, bad rows, monotonicity violations") {
    {
        std::istringstream in("k,s,lambda\n4,4,4.6\n4,4,4.6\n");
        CHECK_THROWS_AS(LambdaTable::load_csv(in, "t"), ValidationError);
    }
    {
        std::istringstream in("k,s,lambda\n4,4\n");
        CHECK_THROWS_WITH_AS(LambdaTable::load_csv(in, "t"), doctest::Contains("line 2"),
                             ParseError);
    }
    {
        std::istringstream in("k,s,lambda\n4,4,abc\n");
        CHECK_THROWS_AS(LambdaTable::load_csv(in, "t"), ParseError);
    }
    {
        // lambda(4,5) < lambda(4,4): monotonicity violation names (k, s)
        std::istringstream in("k,s,lambda\n4,4,4.60572553279363\n4,5,4.0\n");
        CHECK_THROWS_WITH_AS(LambdaTable::load_csv(in, "t"), doctest::Contains("(k=4, s=5)"),
                             ValidationError);
    }
    {
        std::istringstream in("k,s,lambda\n3,4,1.0\n");
        CHECK_THROWS_AS(LambdaTable::load_csv(in, "t"), ValidationError); // odd k
    }
    {
        std::istringstream in("k,s,lambda\n4,0,1.0\n");
        CHECK_THROWS_AS(LambdaTable::load_csv(in, "t"), ValidationError);
    }
    {
        std::istringstream in("k,s,lambda\n4,4,-1.0\n");
        CHECK_THROWS_AS(LambdaTable::load_csv(in, "t"), ValidationError);
    }
    {
        std::istringstream in("wrong,header,here\n");
        CHECK_THROWS_AS(LambdaTable::load_csv(in, "t"), ParseError);
    }
}

TEST_CASE("csv round-trip reproduces entries bit-for-bit") {
    const LambdaTable& t = LambdaTable::builtin_diagonal();
    std::ostringstream out;
    t.save_csv(out);
    std::istringstream in(out.str());
    auto t2 = LambdaTable::load_csv(in, "reload");
    REQUIRE(t2.size() == t.size());
    for (const auto& [key, val] : t.entries()) {
        CHECK(t2.at(key.first, key.second) == val);
    }
}
