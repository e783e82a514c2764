#include <doctest.h>

#include <sstream>

#include "ascpow/errors.hpp"
#include "ascpow/nu_table.hpp"

using namespace ascpow;

TEST_CASE("nu grid points are exact, interior is linear") {
    NuTable t;
    t.add_grid(2, 8, {{0.5, 1.0}});
    CHECK(t.value(2, 8, 0.5) == 1.0);

    NuTable t2;
    t2.add_grid(2, 8, {{0.25, 2.0}, {0.75, 4.0}});
    CHECK(t2.value(2, 8, 0.5) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(t2.value(2, 8, 0.25) == 2.0);
    CHECK(t2.value(2, 8, 0.75) == 4.0);
    CHECK_THROWS_AS(t2.value(2, 8, 0.9), CoverageError);
    CHECK_THROWS_AS(t2.value(2, 8, 0.1), CoverageError);
    CHECK_THROWS_AS(t2.value(4, 8, 0.5), CoverageError); // (h,k) absent
}

TEST_CASE("nu grids must be strictly increasing and positive") {
    NuTable t;
    CHECK_THROWS_AS(t.add_grid(2, 8, {{0.5, 1.0}, {0.5, 2.0}}), ValidationError);
    CHECK_THROWS_AS(t.add_grid(2, 8, {{-0.5, 1.0}}), ValidationError);
    CHECK_THROWS_AS(t.add_grid(2, 8, {}), ValidationError);
    t.add_grid(2, 8, {{1.0, 1.0}, {2.0, 2.0}});
    CHECK_THROWS_AS(t.add_grid(2, 8, {{1.0, 1.0}}), ValidationError); // duplicate grid
}

TEST_CASE("nu csv load and round trip") {
    std::istringstream in(
        "h,k,x,nu\n"
        "2,8,1.0,0.5\n"
        "2,8,2.0,0.75\n"
        "2,10,1.0,0.25\n");
    auto t = NuTable::load_csv(in, "test");
    CHECK(t.value(2, 8, 1.5) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(t.value(2, 10, 1.0) == 0.25);

    std::ostringstream out;
    t.save_csv(out);
    std::istringstream in2(out.str());
    auto t2 = NuTable::load_csv(in2, "reload");
    CHECK(t2.value(2, 8, 1.0) == t.value(2, 8, 1.0));
    CHECK(t2.value(2, 8, 2.0) == t.value(2, 8, 2.0));
}

TEST_CASE("nu csv rejects malformed rows") {
    {
        std::istringstream in("h,k,x,nu\n2,8,1.0\n");
        CHECK_THROWS_AS(NuTable::load_csv(in, "t"), ParseError);
    }
    {
        std::istringstream in("h,k,x\n");
        CHECK_THROWS_AS(NuTable::load_csv(in, "t"), ParseError);
    }
    {
        std::istringstream in("h,k,x,nu\n2,8,zz,1\n");
        CHECK_THROWS_AS(NuTable::load_csv(in, "t"), ParseError);
    }
}
