#include "sqf/error.hpp"
#include "sqf/form.hpp"

#include "doctest.h"

#include <random>

using namespace sqf;

namespace {

const Kind D = Kind::discrete;

Vector e(std::size_t n, std::size_t i, Kind k = D) { return basis_vector(n, i, k); }

Vector random_vector(std::size_t n, Kind k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mag(-4, 4), tag(0, 3);
    Vector x;
    for (std::size_t i = 0; i < n; ++i) {
        int t = tag(rng);
        x.push_back(t == 0 ? Scalar::zero(k) : t == 1 ? Scalar::ghost(mag(rng), k) : Scalar::tangible(mag(rng), k));
    }
    return x;
}

} // namespace

TEST_CASE("bilinear form on Fixture B") {
    GramForm f = fixture('B');
    CHECK(eval_b(f, e(3, 0), e(3, 1) + e(3, 2)) == c0());
    CHECK(eval_b(f, e(3, 1), e(3, 1)) == Scalar::ghost(0, D));
    CHECK(eval_b(f, e(3, 1), zero_vector(3, D)).is_zero());
}

TEST_CASE("quadratic form on Fixture B") {
    GramForm f = fixture('B');
    CHECK(eval_q(f, e(3, 1) + e(3, 2)) == Scalar::tangible(1, D));
    CHECK(eval_q(f, zero_vector(3, D)).is_zero());
    CHECK(eval_q(f, e(3, 0)) == Scalar::ghost(0, D));
}

TEST_CASE("q is homogeneous of degree two") {
    std::mt19937_64 rng(5);
    for (char name : {'A', 'B', 'C', 'D'}) {
        GramForm f = fixture(name);
        for (int s = 0; s < 50; ++s) {
            Vector x = random_vector(f.dim(), f.kind(), rng);
            Scalar a = Scalar::tangible(Mag(int(rng() % 7) - 3), f.kind());
            CHECK(eval_q(f, a * x) == square(a) * eval_q(f, x));
            Vector y = random_vector(f.dim(), f.kind(), rng);
            CHECK(eval_b(f, a * x, y) == a * eval_b(f, x, y));
            CHECK(eval_b(f, x, y) == eval_b(f, y, x));
        }
    }
}

TEST_CASE("valid forms are anisotropic on random vectors") {
    std::mt19937_64 rng(6);
    for (char name : {'A', 'B', 'C', 'D'}) {
        GramForm f = fixture(name);
        for (int s = 0; s < 100; ++s) {
            Vector x = random_vector(f.dim(), f.kind(), rng);
            if (!is_zero_vector(x)) CHECK_FALSE(eval_q(f, x).is_zero());
        }
    }
}

TEST_CASE("validation") {
    CHECK(validate(fixture('B')).ok);
    GramForm iso(Kind::dense, {Scalar::tangible(0), Scalar::zero(), Scalar::tangible(0)});
    auto r = validate(iso);
    CHECK_FALSE(r.ok);
    CHECK(r.violations.size() == 1);
    GramForm heavy(Kind::dense, {Scalar::tangible(0), Scalar::tangible(0)});
    heavy.set_self(0, Scalar::tangible(5));
    CHECK_FALSE(validate(heavy).ok);
    CHECK_THROWS_AS(require_valid(heavy), PreconditionError);
}

TEST_CASE("quasilinear part and rigid complement") {
    GramForm f = fixture('B');
    Decomposition d = decompose(f);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(d.quasilinear_part.q(i) == Scalar::ghost(0, D));
        for (std::size_t j = i + 1; j < 3; ++j) {
            CHECK(d.quasilinear_part.b(i, j).is_zero());
            CHECK(d.rigid_complement.b(i, j) == Scalar::tangible(1, D));
        }
    }
    std::mt19937_64 rng(7);
    for (char name : {'A', 'B', 'C', 'D'}) {
        GramForm g = fixture(name);
        Decomposition dg = decompose(g);
        for (int s = 0; s < 500; ++s) {
            Vector x = random_vector(g.dim(), g.kind(), rng);
            CHECK(eval_q(g, x) == eval_q(dg.quasilinear_part, x) + eval_q(dg.rigid_complement, x));
        }
    }
    GramForm diag(Kind::dense, {Scalar::tangible(1), Scalar::tangible(2)});
    Decomposition dd = decompose(diag);
    CHECK(dd.rigid_complement.b(0, 1).is_zero());
}

TEST_CASE("CS ratios on Fixture B") {
    GramForm f = fixture('B');
    CsValue c = cs_vectors(f, e(3, 0), e(3, 1) + e(3, 2));
    CHECK(c.is_c0());
    CHECK(cs_vectors(f, e(3, 1), e(3, 2)).mag == Mag(2));
    CHECK(cs_vectors(f, e(3, 1) + e(3, 2), e(3, 1) + e(3, 2)).mag == Mag(0));
    CHECK_THROWS_AS(cs_vectors(fixture('B'), zero_vector(3, D), e(3, 0)), PreconditionError);
}

TEST_CASE("quasilinear vector pairs") {
    GramForm f = fixture('B');
    CHECK_FALSE(is_ql_vectors(f, e(3, 0), e(3, 1)));
    CHECK(is_ql_vectors(f, e(3, 0), e(3, 0)));
    GramForm diag(Kind::dense, {Scalar::tangible(1), Scalar::tangible(2), Scalar::tangible(0)});
    std::mt19937_64 rng(8);
    for (int s = 0; s < 100; ++s)
        CHECK(is_ql_vectors(diag, random_vector(3, Kind::dense, rng), random_vector(3, Kind::dense, rng)));
}

TEST_CASE("form JSON round trip") {
    for (char name : {'A', 'B', 'C', 'D'}) {
        GramForm f = fixture(name);
        CHECK(form_from_json(form_to_json(f)) == f);
    }
    CHECK_THROWS_AS(form_from_json(nlohmann::json{{"dim", 2}}), ParseError);
}
