#include "sqf/error.hpp"
#include "sqf/checks.hpp"
#include "sqf/generators.hpp"

#include "doctest.h"

#include <random>

using namespace sqf;

namespace {

Universe fixture_a() {
    std::vector<Ray> gens;
    for (std::size_t i = 0; i < 4; ++i) gens.push_back(basis_ray(4, i));
    return build_universe(fixture('A'), gens);
}

Path chain_path(const Universe& U) {
    Path p;
    for (std::size_t i = 0; i < 5; ++i) p.push_back(U.index_of(basis_ray(5, i)));
    return p;
}

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

} // namespace

TEST_CASE("QL-graph of the chain") {
    Universe d = chain_universe();
    QlGraph g = build_ql_graph(d);
    CHECK(g.edges == Pairs{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(g.loops.size() == 5);
    // The end stars nest into their neighbours.
    CHECK(decorate(d).arrows == Pairs{{0, 1}, {4, 3}});
}

TEST_CASE("QL-graph of Fixture A is a star") {
    Universe a = fixture_a();
    QlGraph g = decorate(a);
    CHECK(g.edges == Pairs{{0, 3}, {1, 3}, {2, 3}});
    CHECK(g.arrows == Pairs{{0, 3}, {1, 3}, {2, 3}});
    CHECK(g.equivalent.empty());
}

TEST_CASE("paths and directness") {
    Universe d = chain_universe();
    Path p = chain_path(d);
    CHECK(is_path(d, p));
    CHECK(is_direct(d, p));
    CHECK_FALSE(is_direct(d, Path{0, 0}));
    CHECK_FALSE(is_path(d, Path{0, 2}));
    Universe a = fixture_a();
    CHECK(is_direct(a, Path{0, 3, 1}));
}

TEST_CASE("basic reductions") {
    Universe a = fixture_a();
    auto r = basic_reduction(a, Path{0, 3, 1, 3, 2}, 1, Dir::forward);
    REQUIRE(r.has_value());
    CHECK(*r == Path{0, 3, 2});
    Universe d = chain_universe();
    Path p = chain_path(d);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK_FALSE(basic_reduction(d, p, i, Dir::forward).has_value());
        CHECK_FALSE(basic_reduction(d, p, i, Dir::backward).has_value());
    }
}

TEST_CASE("basic reduction reaches a direct path within n-1 steps") {
    std::mt19937_64 rng(31);
    for (const Universe& U : path_universes(3, 6)) {
        for (int s = 0; s < 20; ++s) {
            auto w = random_walk(U, 2 + rng() % 8, rng);
            if (!w || w->front() == w->back()) continue;
            auto trace = reduce(U, *w, ReduceMode::basic);
            CHECK(trace.size() <= w->size() - 2);
            Path out = trace.empty() ? *w : trace.back().after;
            CHECK(is_path(U, out));
            CHECK(is_direct(U, out));
        }
    }
}

TEST_CASE("elementary reduction with Y = X_i is the basic reduction") {
    Universe a = fixture_a();
    Path p{0, 3, 1, 3, 2};
    auto e = elementary_reduction(a, p, 1, p[1], Dir::forward);
    auto b = basic_reduction(a, p, 1, Dir::forward);
    REQUIRE(e.has_value());
    REQUIRE(b.has_value());
    CHECK(e->path == *b);
}

TEST_CASE("optimality") {
    Universe d = chain_universe();
    CHECK(is_optimal(d, chain_path(d)));
    Universe a = fixture_a();
    CHECK_THROWS_AS(is_optimal(a, Path{0, 3, 1}), PreconditionError);
    for (const Universe& U : path_universes(4, 4))
        for (const Path& p : minimal_paths(U, 3)) CHECK(is_optimal(U, p));
}

TEST_CASE("widened stars") {
    Universe d = chain_universe();
    CHECK(widehat_ql(d, 2) == d.set_of({1, 2, 3}));
    for (std::size_t x = 0; x < d.size(); ++x) CHECK(subset_of(ql_star(d, x), widehat_ql(d, x)));
    Universe a = fixture_a();
    CHECK(widehat_ql(a, 0) == a.full());
}

TEST_CASE("distances and minimal paths") {
    Universe d = chain_universe();
    CHECK(*distances(d, 0)[4] == 4);
    auto mp = minimal_path(d, 0, 4);
    REQUIRE(mp.has_value());
    CHECK(mp->size() == 5);
    CHECK(is_minimal(d, *mp));
    CHECK(minimal_path(d, 1, 2)->size() == 2);
    Universe a = fixture_a();
    CHECK(*distances(a, 0)[1] == 2);
    CHECK(*minimal_path(a, 0, 1) == Path{0, 3, 1});
}

TEST_CASE("up- and downsets") {
    Universe a = fixture_a();
    CHECK(downset(a, a.single(3)) == a.full());
    CHECK(upset(a, a.single(0)) == a.set_of({0, 3}));
    std::mt19937_64 rng(32);
    for (const Universe& U : path_universes(5, 3)) {
        for (std::size_t x = 0; x < U.size(); ++x) {
            CHECK(upset(U, U.single(x)).test(x));
            CHECK(downset(U, U.single(x)).test(x));
        }
        for (int s = 0; s < 30; ++s) {
            RaySet small = U.empty(), big = U.empty();
            for (std::size_t i = 0; i < U.size(); ++i) {
                if (rng() % 4 == 0) small.set(i);
                if (rng() % 2 == 0) big.set(i);
            }
            big |= small;
            CHECK(subset_of(upset(U, small), upset(U, big)));
            CHECK(subset_of(downset(U, small), downset(U, big)));
        }
    }
}

TEST_CASE("twin pairs and anchors on the chain") {
    Universe d = chain_universe();
    Path p = chain_path(d);
    TwinAnnotation ta = twins_and_singles(d, p);
    CHECK(ta.twin_pair == std::vector<bool>{true, false, false, true});
    CHECK(ta.single == std::vector<bool>{false, false, true, false, false});
    for (Strategy s : {Strategy::greedy, Strategy::special}) {
        AnchorSet S = anchor_set(d, p, s);
        CHECK(S.m() == 2);
        CHECK(S.anchors == std::vector<std::size_t>{0, 2, 4});
        CHECK(is_direct_sql_sequence(d, S.anchors));
        CHECK(tracks(d, S).tracks.empty());
        CHECK(is_flocky(d, p, S));
        CHECK(total_flock_modification(d, p, S) == p);
        FlockPartition F = flocks(d, p, S);
        CHECK(F.flocks.empty());
        CHECK(F.isolated == std::vector<std::size_t>{0, 3});
    }
}

TEST_CASE("twin pairs and anchors on the chain with a twin ray") {
    Universe u = chain_twin_universe();
    Path p = chain_path(u);
    CHECK(is_minimal(u, p));
    CHECK(twins_and_singles(u, p).twin_pair == std::vector<bool>{true, true, false, true});
    std::size_t y = u.index_of(parse_ray("(_, 0, 0, _, _)", Kind::dense));
    AnchorSet S = anchor_set(u, p, Strategy::special);
    CHECK(S.m() == 2);
    CHECK(S.anchors == std::vector<std::size_t>{p[0], y, p[4]});
    FlockPartition F = flocks(u, p, S);
    CHECK(F.flocks == Pairs{{0, 2}});
    CHECK(F.isolated == std::vector<std::size_t>{3});
    CHECK(tracks(u, S).tracks.size() == 1);
    CHECK(is_flocky(u, p, S));
}

TEST_CASE("anchor sets of one path share their length") {
    std::mt19937_64 rng(33);
    for (const Universe& U : path_universes(6, 6)) {
        auto paths = minimal_paths(U, 1);
        for (std::size_t k = 0; k < paths.size() && k < 40; ++k) {
            const Path& p = paths[rng() % paths.size()];
            AnchorSet g = anchor_set(U, p, Strategy::greedy);
            AnchorSet s = anchor_set(U, p, Strategy::special);
            CHECK(g.m() == s.m());
            CHECK(is_anchor_set(U, p, g.anchors));
            if (s.m() >= 1) CHECK(is_direct_sql_sequence(U, s.anchors));
            CHECK(s.m() <= p.size() - 1);
            CHECK(p.size() - 1 <= 2 * s.m() + 1);
        }
    }
}

TEST_CASE("sql pairs include quasilinear pairs") {
    Universe d = chain_universe();
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (d.adjacent(i, j)) CHECK(is_sql_pair(d, i, j));
}

TEST_CASE("anchor row never has a chord") {
    for (const Universe& U : path_universes(7, 6))
        for (const Path& p : minimal_paths(U, 2)) {
            AnchorSet S = anchor_set(U, p, Strategy::special);
            for (std::size_t a = 0; a < S.anchors.size(); ++a)
                for (std::size_t b = a + 2; b < S.anchors.size(); ++b)
                    CHECK_FALSE(U.adjacent(S.anchors[a], S.anchors[b]));
        }
}

TEST_CASE("anchor diagram round trip") {
    Universe u = chain_twin_universe();
    Path p = chain_path(u);
    AnchorDiagram dg = anchor_diagram(u, p, anchor_set(u, p, Strategy::special));
    CHECK(dg.upper.size() == 5);
    CHECK(dg.lower.size() == 3);
    CHECK(diagram_from_json(diagram_to_json(dg)) == dg);
}

TEST_CASE("flock modifications keep minimal paths minimal") {
    std::size_t spliced = 0;
    for (const Universe& U : path_universes(8, 8))
        for (const Path& p : minimal_paths(U, 2)) {
            AnchorSet S = anchor_set(U, p, Strategy::greedy);
            if (tracks(U, S).tracks.empty()) continue;
            Path q;
            try {
                q = total_flock_modification(U, p, S);
            } catch (const PreconditionError&) {
                // Tracks over adjacent anchored rays have no splice of the same length.
                continue;
            }
            ++spliced;
            CHECK(q.size() == p.size());
            CHECK(is_minimal(U, q));
            CHECK(is_anchor_set(U, q, S.anchors));
        }
    CHECK(spliced > 0);
}

TEST_CASE("domination") {
    Universe d = chain_universe();
    Path p = chain_path(d);
    CHECK(dominates(d, p, p));
    CHECK(is_enlargement_of(d, p, p));
    for (const CheckResult& c : check_domination_theorems(d, p, p)) CHECK_MESSAGE(c.status != CheckResult::fail, c.name);
    Path q = p;
    q[2] = p[0];
    CHECK_FALSE(dominates(d, q, p));
}

TEST_CASE("path JSON round trip") {
    Universe u = chain_twin_universe();
    Path p = chain_path(u);
    CHECK(path_from_json(u, path_to_json(u, p)) == p);
}
