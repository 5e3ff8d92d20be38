#include "sqf/error.hpp"
#include "sqf/ray.hpp"

#include "doctest.h"

#include <random>

using namespace sqf;

namespace {

const Kind D = Kind::discrete;

Ray R(const char* s, Kind k = Kind::dense) { return parse_ray(s, k); }

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mag(-3, 3), tag(0, 3);
    Vector x;
    for (std::size_t i = 0; i < n; ++i) {
        int t = tag(rng);
        x.push_back(t == 0 ? Scalar::zero() : t == 1 ? Scalar::ghost(mag(rng)) : Scalar::tangible(mag(rng)));
    }
    return x;
}

// Searches a, b in a magnitude grid with a x and b y equal up to tags.
bool same_ray_by_search(const Vector& x, const Vector& y) {
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) {
            Vector u = Scalar::tangible(a) * x, v = Scalar::tangible(b) * y;
            bool eq = true;
            for (std::size_t i = 0; i < u.size() && eq; ++i)
                eq = u[i].is_zero() == v[i].is_zero() && (u[i].is_zero() || u[i].mag() == v[i].mag());
            if (eq) return true;
        }
    return false;
}

Ray random_ray(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        Vector x = random_vector(n, rng);
        if (!is_zero_vector(x)) return ray_of(x);
    }
}

} // namespace

TEST_CASE("ray of a vector is shifted to a zero maximum") {
    Vector x{Scalar::tangible(2), Scalar::ghost(5), Scalar::zero()};
    CHECK(ray_of(x) == R("(-3, 0, _)"));
    CHECK(ray_of(Scalar::tangible(4) * x) == ray_of(x));
    CHECK(ray_of(Scalar::ghost(0) * x) == ray_of(x));
    CHECK_THROWS_AS(ray_of(zero_vector(3, Kind::dense)), PreconditionError);
}

TEST_CASE("ray equality matches the definitional search") {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 300; ++s) {
        Vector x = random_vector(2, rng), y = random_vector(2, rng);
        if (is_zero_vector(x) || is_zero_vector(y)) continue;
        CHECK((ray_of(x) == ray_of(y)) == same_ray_by_search(x, y));
    }
}

TEST_CASE("representatives cover every tag pattern") {
    auto reps = representatives(R("(0, _)"), Kind::dense);
    CHECK(reps.size() == 2);
    Ray X = R("(-1, 0, _, -2)");
    auto all = representatives(X, Kind::dense);
    CHECK(all.size() == 8);
    for (const Vector& v : all) CHECK(ray_of(v) == X);
}

TEST_CASE("g-isotropy on Fixtures B and C") {
    GramForm b = fixture('B');
    CHECK(is_g_isotropic(b, basis_ray(3, 0)));
    CHECK(g_isotropy(b, ray_of(basis_vector(3, 1, D) + basis_vector(3, 2, D))) == GIso::g_anisotropic);
    GramForm c = fixture('C');
    // A ray forgets tags, so the ghost scaling gives the same ray as the tangible one.
    Vector y = basis_vector(3, 1, D) + Scalar::ghost(1, D) * basis_vector(3, 2, D);
    Vector yt = basis_vector(3, 1, D) + Scalar::tangible(1, D) * basis_vector(3, 2, D);
    CHECK(ray_of(y) == ray_of(yt));
    CHECK_FALSE(is_g_isotropic(c, ray_of(y)));
    CHECK(is_g_isotropic(c, basis_ray(3, 0)));
}

TEST_CASE("CS ratios on rays of Fixture C") {
    GramForm c = fixture('C');
    CHECK(cs_rays(c, basis_ray(3, 0), basis_ray(3, 2)).is_c0());
    Vector y = basis_vector(3, 1, D) + Scalar::tangible(2, D) * basis_vector(3, 2, D);
    CHECK(cs_rays(c, basis_ray(3, 0), ray_of(y)).is_c0());
    GramForm b = fixture('B');
    for (std::size_t i = 0; i < 3; ++i) CHECK(cs_rays(b, basis_ray(3, i), basis_ray(3, i)).mag == Mag(0));
}

TEST_CASE("CS ratio does not depend on the representative") {
    GramForm c = fixture('C');
    std::mt19937_64 rng(12);
    for (int s = 0; s < 40; ++s) {
        Ray X = random_ray(3, rng), Y = random_ray(3, rng);
        CsValue ref = cs_rays(c, X, Y);
        for (const Vector& x : representatives(X, D))
            for (const Vector& y : representatives(Y, D)) CHECK(cs_vectors(c, x, y) == ref);
    }
}

TEST_CASE("interval membership") {
    Ray X = R("(_, 0, 3)"), Y = R("(_, 0, 1)");
    CHECK(interval_member(X, X, Y));
    CHECK(interval_member(Y, X, Y));
    CHECK(interval_member(R("(_, 0, 2)"), X, Y));
    CHECK_FALSE(interval_member(R("(0, _)"), R("(_, 0)"), R("(-1, 0)")));
}

TEST_CASE("hull of two rays agrees with the interval") {
    std::mt19937_64 rng(13);
    for (int s = 0; s < 1000; ++s) {
        Ray X = random_ray(3, rng), Y = random_ray(3, rng), Z = random_ray(3, rng);
        std::vector<Ray> gens{X, Y};
        CHECK(hull_member(Z, gens) == interval_member(Z, X, Y));
    }
}

TEST_CASE("combinations of generators are hull members") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> sh(-3, 3), drop(0, 2);
    for (int s = 0; s < 300; ++s) {
        std::vector<Ray> gens{random_ray(4, rng), random_ray(4, rng), random_ray(4, rng)};
        std::vector<Coord> shifts;
        for (int j = 0; j < 3; ++j) shifts.push_back(drop(rng) == 0 ? Coord{} : Coord{Mag(sh(rng))});
        if (shifts == std::vector<Coord>(3)) shifts[0] = Mag(0);
        Ray Z = combine(gens, shifts);
        CHECK(hull_member(Z, gens));
        auto cell = hull_cell(Z, gens);
        REQUIRE(cell.has_value());
        std::vector<Ray> sub;
        for (std::size_t j : cell->cell) sub.push_back(gens[j]);
        CHECK(hull_member(Z, sub));
    }
}

TEST_CASE("hull cells on Fixture B basis rays") {
    std::vector<Ray> gens{basis_ray(3, 0), basis_ray(3, 1), basis_ray(3, 2)};
    Ray Z = R("(0, 0, 0)");
    CHECK(hull_member(Z, gens));
    auto cell = hull_cell(Z, gens);
    REQUIRE(cell.has_value());
    CHECK(cell->cell == std::vector<std::size_t>{0, 1, 2});
    auto single = hull_cell(gens[1], gens);
    REQUIRE(single.has_value());
    CHECK(single->cell == std::vector<std::size_t>{1});
    std::vector<Ray> two{gens[0], gens[1]};
    CHECK_FALSE(hull_cell(gens[2], two).has_value());
}

TEST_CASE("interval skeleton") {
    GramForm c = fixture('C');
    Ray X = basis_ray(3, 1), Y = basis_ray(3, 2);
    CHECK(interval_skeleton(c, X, X) == std::vector<Ray>{X});
    auto sk = interval_skeleton(c, X, Y);
    CHECK(std::find(sk.begin(), sk.end(), X) != sk.end());
    CHECK(std::find(sk.begin(), sk.end(), Y) != sk.end());
    for (const Ray& Z : sk) CHECK(interval_member(Z, X, Y));
    GramForm two(Kind::dense, {Scalar::tangible(0), Scalar::tangible(0)});
    auto s2 = interval_skeleton(two, R("(0, _)"), R("(_, 0)"));
    CHECK(std::find(s2.begin(), s2.end(), R("(0, 0)")) != s2.end());
}

TEST_CASE("ray text and JSON round trip") {
    std::mt19937_64 rng(15);
    for (int s = 0; s < 50; ++s) {
        Ray X = random_ray(4, rng);
        CHECK(parse_ray(to_string(X), Kind::dense) == X);
        CHECK(ray_from_json(ray_to_json(X), Kind::dense) == X);
    }
    CHECK_THROWS_AS(parse_ray("(_, _)", Kind::dense), ParseError);
    CHECK_THROWS_AS(parse_ray("(1/2, 0)", D), ParseError);
}
