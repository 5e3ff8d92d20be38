#include "sqf/error.hpp"
#include "sqf/qlcore.hpp"

#include "doctest.h"

#include <random>

using namespace sqf;

namespace {

const Kind D = Kind::discrete;

Universe basis_universe(char name, Closure c = {}) {
    GramForm f = fixture(name);
    std::vector<Ray> gens;
    for (std::size_t i = 0; i < f.dim(); ++i) gens.push_back(basis_ray(f.dim(), i));
    return build_universe(f, gens, c);
}

// Random subset-sum universe on a random valid dense form.
Universe random_universe(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> m(-2, 2), pick(0, 2);
    GramForm f(Kind::dense, {Scalar::tangible(m(rng)), Scalar::tangible(m(rng)), Scalar::tangible(m(rng))});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            f.set_cross(i, j, pick(rng) == 0 ? Scalar::zero() : Scalar::tangible(m(rng)));
    std::vector<Ray> gens;
    for (std::size_t i = 0; i < 3; ++i) gens.push_back(basis_ray(3, i));
    return build_universe(f, gens, Closure{ClosureKind::subset_sums, 1});
}

RaySet random_set(const Universe& U, std::mt19937_64& rng) {
    RaySet s = U.empty();
    while (s.none())
        for (std::size_t i = 0; i < U.size(); ++i)
            if (rng() % 3 == 0) s.set(i);
    return s;
}

} // namespace

TEST_CASE("quasilinear pairs on the fixtures") {
    GramForm a = fixture('A');
    CHECK(is_ql_pair(a, basis_ray(4, 0), basis_ray(4, 3)));
    CHECK_FALSE(is_ql_pair(a, basis_ray(4, 0), basis_ray(4, 1)));
    GramForm c = fixture('C');
    Ray z = ray_of(basis_vector(3, 1, D) + Scalar::tangible(2, D) * basis_vector(3, 2, D));
    CHECK_FALSE(is_ql_pair(c, basis_ray(3, 0), z));
    CHECK(is_nu_ql_pair(c, basis_ray(3, 0), z));
    CHECK(is_excessive_pair(c, basis_ray(3, 0), z));
    GramForm b = fixture('B');
    CHECK_FALSE(oracle_is_ql_pair(b, basis_ray(3, 1), basis_ray(3, 2)));
    CHECK(is_excessive_pair(b, basis_ray(3, 1), basis_ray(3, 2)));
}

TEST_CASE("pair decision agrees with the oracle on fixture universes") {
    for (char name : {'A', 'B', 'C', 'D'}) {
        Universe U = basis_universe(name, Closure{ClosureKind::subset_sums, 1});
        for (std::size_t i = 0; i < U.size(); ++i) {
            CHECK(U.adjacent(i, i));
            for (std::size_t j = 0; j < U.size(); ++j)
                CHECK(is_ql_pair(U.form(), U.ray(i), U.ray(j)) == oracle_is_ql_pair(U.form(), U.ray(i), U.ray(j)));
        }
    }
}

TEST_CASE("universe construction") {
    CHECK(basis_universe('B', Closure{ClosureKind::subset_sums, 1}).size() == 7);
    CHECK(basis_universe('B').size() == 3);
    Universe d = basis_universe('D');
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(d.adjacent(i, j) == (i == j || i + 1 == j || j + 1 == i));
}

TEST_CASE("stars and saturation") {
    Universe a = basis_universe('A');
    CHECK(ql_star(a, 3) == a.full());
    CHECK(preceq(a, 0, 3));
    CHECK_FALSE(preceq(a, 3, 0));
    Universe d = basis_universe('D');
    CHECK(sat_ql(d, d.single(2)) == d.single(2));
    for (std::size_t x = 0; x < d.size(); ++x) {
        CHECK(ql_star(d, x).test(x));
        CHECK(subset_of(d.single(x), sat_ql(d, d.single(x))));
        for (std::size_t y = 0; y < d.size(); ++y)
            CHECK((preceq(d, x, y) && preceq(d, y, x)) == ql_equiv(d, x, y));
    }
}

TEST_CASE("quasilinear sets") {
    Universe a = basis_universe('A');
    CHECK(is_quasilinear_set(a, a.single(1)));
    CHECK(is_quasilinear_set(a, a.set_of({0, 3})));
    CHECK_FALSE(is_quasilinear_set(a, a.set_of({0, 1, 2})));
    Universe d = basis_universe('D');
    CHECK(is_quasilinear_set(d, d.set_of({0, 1})));
}

TEST_CASE("enlargements") {
    Universe a = basis_universe('A');
    RaySet c = a.set_of({0, 3});
    CHECK(enlargement(a, c, a.single(3)).result == c);
    CHECK_THROWS_AS(enlargement(a, a.single(0), a.single(1)), PreconditionError);
    Universe d = basis_universe('D');
    CHECK(max_enlargement(d, d.set_of({1, 2})) == d.set_of({1, 2}));
    for (std::size_t x = 0; x < d.size(); ++x) {
        RaySet sx = d.single(x);
        CHECK(max_enlargement(d, sx) == d.hull(sat_ql(d, sx)));
        CHECK(subset_of(max_enlargement(d, sx), tilde_c(d, sx)));
    }
}

TEST_CASE("atomic covers amalgamate back") {
    Universe d = basis_universe('D');
    for (std::size_t x = 0; x + 1 < d.size(); ++x) {
        RaySet c = d.set_of({x, x + 1});
        auto fam = atomic_cover(d, c, c);
        Amalgamation am = amalgamate(d, fam);
        CHECK(am.c == c);
        CHECK(am.special);
        CHECK(subset_of(am.c0, c));
    }
    auto one = std::vector<EnlargementPair>{{d.single(0), d.set_of({0, 1})}};
    Amalgamation am = amalgamate(d, one);
    CHECK(am.c0 == d.single(0));
    CHECK(am.c == d.set_of({0, 1}));
}

TEST_CASE("maximal quasilinear sets") {
    Universe a = basis_universe('A');
    MaxSets m = max_ql_sets(a, a.single(0));
    REQUIRE(m.sets.size() == 1);
    CHECK(m.sets[0] == a.set_of({0, 3}));
}

TEST_CASE("maximal sets cover the common star") {
    std::mt19937_64 rng(21);
    for (int s = 0; s < 100; ++s) {
        Universe U = random_universe(rng);
        RaySet c = random_set(U, rng);
        if (!is_quasilinear_set(U, c)) continue;
        MaxSets m = max_ql_sets(U, c);
        RaySet uni = U.empty();
        for (const RaySet& k : m.sets) {
            uni |= k;
            CHECK(ql_of_set(U, k) == k);
        }
        CHECK(uni == ql_of_set(U, c));
        CHECK(tilde_c(U, c) == sat_ql(U, c));
        MaxSets mt = max_ql_sets(U, tilde_c(U, c));
        auto sorted = [](std::vector<RaySet> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(mt.sets) == sorted(m.sets));
    }
}

TEST_CASE("stars are convex over dense fixtures") {
    for (char name : {'A', 'D'}) {
        Universe U = basis_universe(name, Closure{ClosureKind::subset_sums, 1});
        for (std::size_t x = 0; x < U.size(); ++x) CHECK(star_convexity(U, x).convex);
    }
}

TEST_CASE("non-convex star in Fixture C") {
    GramForm c = fixture('C');
    NonconvexWitness w = nonconvex_witness(c, basis_ray(3, 0), basis_ray(3, 1), basis_ray(3, 2));
    CHECK(w.lambda0 == Mag(1));
    CHECK(w.rays.y1 == parse_ray("(_, 0, 3)", D));
    CHECK(w.rays.y2 == parse_ray("(_, 0, 1)", D));
    CHECK(w.rays.z == parse_ray("(_, 0, 2)", D));
    CHECK(w.q_z == Scalar::tangible(5, D));
    CHECK(w.cs_z.is_c0());
    CHECK(w.z_in_interval);
    CHECK(w.z_g_anisotropic);
    Universe U = build_universe(c, {basis_ray(3, 0), basis_ray(3, 1), basis_ray(3, 2), w.rays.y1, w.rays.y2,
                                    w.rays.z});
    CHECK(star_convexity(U, U.index_of(basis_ray(3, 2))).convex);
}
