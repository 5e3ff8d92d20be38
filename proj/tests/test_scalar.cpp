#include "sqf/error.hpp"
#include "sqf/scalar.hpp"

#include "doctest.h"

using namespace sqf;

namespace {

Scalar t(int m, Kind k = Kind::dense) { return Scalar::tangible(Mag(m), k); }
Scalar g(int m, Kind k = Kind::dense) { return Scalar::ghost(Mag(m), k); }

} // namespace

TEST_CASE("addition keeps the larger magnitude") {
    CHECK(t(1) + t(3) == t(3));
    CHECK(t(3) + g(1) == t(3));
    CHECK(g(3) + t(1) == g(3));
    CHECK(t(2) + Scalar::zero() == t(2));
}

TEST_CASE("equal magnitudes collapse to a ghost") {
    CHECK(t(2) + g(2) == g(2));
    CHECK(t(2) + t(2) == g(2));
    CHECK(g(2) + g(2) == g(2));
}

TEST_CASE("multiplication adds magnitudes, ghost absorbs") {
    CHECK(t(1) * t(2) == t(3));
    CHECK(t(1) * g(2) == g(3));
    CHECK(g(0) * g(0) == g(0));
    CHECK((t(5) * Scalar::zero()).is_zero());
}

TEST_CASE("ghost map and squaring") {
    CHECK(nu(t(4)) == g(4));
    CHECK(nu(Scalar::zero()).is_zero());
    CHECK(square(g(1, Kind::discrete)) == g(2, Kind::discrete));
    CHECK(square(t(1) + t(2)) == square(t(1)) + square(t(2)));
    CHECK(square(t(1) + t(2)) == t(4));
}

TEST_CASE("c0 squared is strictly above c0") {
    Scalar c = c0();
    CHECK(c == g(1, Kind::discrete));
    CHECK(lt_nu(c, square(c)));
    CHECK_FALSE(square(c) == c);
}

TEST_CASE("nu comparisons ignore the tag") {
    CHECK(eq_nu(g(2), t(2)));
    CHECK(le_nu(t(1), g(2)));
    CHECK(lt_nu(Scalar::zero(), t(-7)));
    CHECK_FALSE(lt_nu(g(2), t(2)));
}

TEST_CASE("units") {
    CHECK(unit(Kind::dense) == t(0));
    CHECK(ghost_unit(Kind::discrete) == g(0, Kind::discrete));
    CHECK(t(3) * unit(Kind::dense) == t(3));
}

TEST_CASE("discrete scalars reject fractional magnitudes") {
    CHECK_THROWS_AS(Scalar::tangible(Mag(1, 2), Kind::discrete), ConfigError);
    CHECK_NOTHROW(Scalar::tangible(Mag(1, 2), Kind::dense));
}

TEST_CASE("scalar text round trip") {
    for (const char* s : {"t:3", "g:-2", "0", "t:1/2"}) {
        Scalar a = parse_scalar(s, Kind::dense);
        CHECK(to_string(a) == s);
        CHECK(parse_scalar(to_string(a), Kind::dense) == a);
    }
    CHECK_THROWS_AS(parse_scalar("x:1", Kind::dense), ParseError);
    CHECK_THROWS_AS(parse_scalar("t:", Kind::dense), ParseError);
}
