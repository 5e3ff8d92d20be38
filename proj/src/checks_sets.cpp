#include "sqf/checks.hpp"
#include "sqf/error.hpp"
#include "sqf/generators.hpp"
#include "check_util.hpp"

#include <algorithm>
#include <set>

namespace sqf {

using namespace detail;

namespace {

std::vector<Ray> rays_of(const Universe& U, const RaySet& s) {
    std::vector<Ray> out;
    for (auto i : members(s)) out.push_back(U.ray(i));
    return out;
}

// The generators, their pairwise interval skeletons and `samples` random combinations.
std::vector<Ray> hull_points(const GramForm& f, const std::vector<Ray>& gens, std::span<const Ray> witnesses,
                             std::size_t samples, std::mt19937_64& rng, std::size_t max_pairs = 12) {
    std::vector<Ray> pts = gens;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < gens.size() && pairs < max_pairs; ++a)
        for (std::size_t b = a + 1; b < gens.size() && pairs < max_pairs; ++b, ++pairs)
            for (auto& z : interval_skeleton(f, gens[a], gens[b], witnesses)) pts.push_back(z);
    std::uniform_int_distribution<int> shift(-4, 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Coord> sh(gens.size());
        bool any = false;
        for (auto& c : sh) {
            int v = shift(rng);
            if (v <= 0) {
                c = Mag(v);
                any = true;
            }
        }
        if (!any) sh[0] = Mag(0);
        pts.push_back(combine(gens, sh));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// ---- CS on hulls ----------------------------------------------------------

struct HullConfig {
    GramForm f;
    std::vector<Ray> S, T;
};

GramForm anisotropic_form(Kind k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> diag(0, 2), cross(-3, 1), tag(0, 3);
    std::vector<Scalar> d;
    for (int i = 0; i < 3; ++i) d.push_back(Scalar::tangible(diag(rng), k));
    GramForm f(k, d);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            int t = tag(rng);
            f.set_cross(i, j, t == 0 ? Scalar::zero(k) : t == 1 ? Scalar::ghost(cross(rng), k)
                                                                  : Scalar::tangible(cross(rng), k));
        }
    return f;
}

struct PairStats {
    CsValue lo, hi;
    bool all_nu_ql = true;
    bool all_below_e = true;
    bool all_c0 = true;
    bool one_parity = true;  // all nonzero with the same parity of magnitude
    bool odd = false;
};

bool odd_mag(const CsValue& c) { return !c.zero && c.mag.denominator() == 1 && c.mag.numerator() % 2 != 0; }

PairStats pair_stats(const HullConfig& c) {
    PairStats p;
    bool first = true;
    std::optional<bool> parity;
    for (auto& X : c.S)
        for (auto& Y : c.T) {
            CsValue v = cs_rays(c.f, X, Y);
            if (first || v < p.lo) p.lo = v;
            if (first || p.hi < v) p.hi = v;
            first = false;
            p.all_nu_ql = p.all_nu_ql && is_nu_ql_pair(c.f, X, Y);
            p.all_below_e = p.all_below_e && (v.zero || v.mag < Mag(0));
            p.all_c0 = p.all_c0 && v.is_c0();
            if (v.zero || v.mag.denominator() != 1) {
                p.one_parity = false;
            } else {
                bool o = odd_mag(v);
                if (parity && *parity != o) p.one_parity = false;
                parity = o;
            }
        }
    p.one_parity = p.one_parity && c.f.kind() == Kind::discrete;
    p.odd = p.one_parity && parity && *parity;
    return p;
}

enum class Target { any, nu_ql, below_e, c0, odd_class };

bool meets(const PairStats& p, Target t, Kind k) {
    switch (t) {
    case Target::any: return true;
    case Target::nu_ql: return p.all_nu_ql;
    case Target::below_e: return p.all_below_e;
    case Target::c0: return k == Kind::discrete && p.all_c0;
    case Target::odd_class: return k == Kind::discrete && p.all_nu_ql && p.odd;
    }
    return false;
}

HullConfig hull_config(Target t, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> sz(1, 3), kind(0, 1);
    HullConfig c;
    for (int tries = 0;; ++tries) {
        Kind k = (t == Target::c0 || t == Target::odd_class || kind(rng)) ? Kind::discrete : Kind::dense;
        c.f = anisotropic_form(k, rng);
        c.S.clear();
        c.T.clear();
        int ns = t == Target::c0 ? 1 : sz(rng), nt = t == Target::c0 ? sz(rng) : sz(rng);
        for (int i = 0; i < ns; ++i) c.S.push_back(random_ray(3, rng, 2));
        for (int i = 0; i < nt; ++i) c.T.push_back(random_ray(3, rng, 2));
        if (meets(pair_stats(c), t, k) || tries > 5000) return c;
    }
}

bool in_range(const CsValue& v, const CsValue& lo, const CsValue& hi) { return lo <= v && v <= hi; }

void hull_cs_config(Report& r, const HullConfig& c, std::size_t samples, std::mt19937_64& rng) {
    PairStats p = pair_stats(c);
    auto HS = hull_points(c.f, c.S, c.T, samples, rng), HT = hull_points(c.f, c.T, c.S, samples, rng);
    auto where = [&](const Ray& Z, const Ray& W) {
        std::string gens = " S=";
        for (auto& X : c.S) gens += to_string(X);
        gens += " T=";
        for (auto& Y : c.T) gens += to_string(Y);
        return "form " + form_to_json(c.f).dump() + gens + " Z=" + to_string(Z) + " W=" + to_string(W) +
               " CS=" + to_string(cs_rays(c.f, Z, W)) + " range " + to_string(p.lo) + ".." + to_string(p.hi);
    };
    bool discrete = c.f.kind() == Kind::discrete;
    auto pairwise_ql = [&](const std::vector<Ray>& g) {
        for (auto& a : g)
            for (auto& b : g)
                if (!is_ql_pair(c.f, a, b)) return false;
        return true;
    };
    bool gens_ql = pairwise_ql(c.S) && pairwise_ql(c.T);
    for (auto& Z : HS)
        for (auto& W : HT) {
            CsValue v = cs_rays(c.f, Z, W);
            r.tally("CS bound carries over to hulls").record(v <= p.hi, [&] { return where(Z, W); });
            if (p.all_nu_ql) {
                r.tally("nu-quasilinearity carries over to hulls").record(is_nu_ql_pair(c.f, Z, W),
                                                                          [&] { return where(Z, W); });
                r.tally("CS range stays in the convex range of the generators")
                    .record(in_range(v, p.lo, p.hi), [&] { return where(Z, W); });
                if (discrete && p.one_parity)
                    r.tally("discrete CS square class carries over to hulls")
                        .record(!v.zero && odd_mag(v) == p.odd, [&] { return where(Z, W); });
                if (!gens_ql) continue;
                r.tally("CS range stays in the generator range, quasilinear generator sets", false)
                    .record(in_range(v, p.lo, p.hi), [&] { return where(Z, W); });
                if (discrete && p.one_parity)
                    r.tally("discrete CS square class carries over, quasilinear generator sets", false)
                        .record(!v.zero && odd_mag(v) == p.odd, [&] { return where(Z, W); });
            }
        }
    bool disjoint_expected = p.all_below_e || (discrete && p.all_c0) || (discrete && p.all_nu_ql && p.odd);
    if (!disjoint_expected) return;
    const char* name = p.all_below_e ? "hulls disjoint when all CS < e"
                       : p.all_c0    ? "hulls disjoint when all CS = c0"
                                     : "hulls disjoint for a non-square CS class";
    for (auto& Z : HS) r.tally(name).record(!hull_member(Z, c.T), [&] { return where(Z, Z); });
    for (auto& W : HT) r.tally(name).record(!hull_member(W, c.S), [&] { return where(W, W); });
}

// ---- saturations and hulls inside a universe -------------------------------

void hull_and_saturation(Report& r, const Universe& U, const std::string& label, std::size_t samples,
                         std::mt19937_64& rng) {
    const GramForm& f = U.form();
    for (std::size_t x = 0; x < U.size(); ++x) {
        RaySet sat = sat_ql(U, U.single(x));
        auto where = [&] { return label + " X=" + to_string(U.ray(x)); };
        r.tally("saturation is quasilinear").record(is_quasilinear_set(U, sat), where);
        r.tally("saturation is convex").record(is_convex(U, sat), where);
        r.tally("maximal enlargement of {X} is its saturation").record(max_enlargement(U, U.single(x)) == sat, where);

        auto gens = rays_of(U, sat);
        auto star = members(U.star(x));
        std::vector<Ray> wit;
        for (auto w : star) wit.push_back(U.ray(w));
        for (auto& Z : hull_points(f, gens, {}, samples, rng, 6)) {
            if (U.find(Z)) continue;
            bool ok = std::all_of(wit.begin(), wit.end(), [&](const Ray& W) { return is_ql_pair(f, Z, W); });
            r.tally("off-universe hull points of a saturation pair with all of QL(X)", samples > 0)
                .record(ok, [&] { return where() + " Z=" + to_string(Z); });
        }
    }
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t x = 0; x < U.size(); ++x)
        for (auto& c : max_ql_sets(U, U.single(x)).sets) {
            if (!seen.insert(members(c)).second) continue;
            r.tally("hull of a quasilinear set is quasilinear")
                .record(is_quasilinear_set(U, U.hull(c)), [&] { return label + " " + set_to_json(U, c).dump(); });
            auto gens = rays_of(U, c);
            auto pts = hull_points(f, gens, {}, samples, rng, 6);
            for (std::size_t a = 0; a < pts.size(); ++a)
                for (std::size_t b = a; b < pts.size(); ++b) {
                    if (U.find(pts[a]) && U.find(pts[b])) continue;
                    r.tally("off-universe hull points of a quasilinear set pair quasilinearly")
                        .record(is_ql_pair(f, pts[a], pts[b]),
                                [&] { return label + " " + to_string(pts[a]) + ", " + to_string(pts[b]); });
                }
        }
}

// ---- maximal quasilinear sets ---------------------------------------------

using Family = std::set<std::vector<std::size_t>>;

struct SetFacts {
    RaySet c, ql, tilde;
    Family max;
};

Family family_of(const MaxSets& m) {
    Family f;
    for (auto& s : m.sets) f.insert(members(s));
    return f;
}

SetFacts maximal_set_identities(Report& r, const Universe& U, const RaySet& c, const std::string& label) {
    auto where = [&] { return label + " C=" + set_to_json(U, c).dump(); };
    MaxSets m = max_ql_sets(U, c);
    SetFacts s{c, ql_of_set(U, c), tilde_c(U, c), family_of(m)};
    RaySet uni = U.empty();
    for (auto& e : m.sets) uni |= e;
    r.tally("QL(C) is the union of Max(C)").record(uni == s.ql, where);
    r.tally("C~ equals sat_QL(C)").record(s.tilde == sat_ql(U, c), where);
    r.tally("Max(C) = Max(C~)").record(family_of(max_ql_sets(U, s.tilde)) == s.max, where);
    r.tally("C is maximal iff QL(C) = C").record((s.max.size() == 1 && *s.max.begin() == members(c)) == (s.ql == c),
                                                 where);
    RaySet d = U.empty();
    for (auto x : members(c)) d |= sat_ql(U, U.single(x));
    RaySet e = U.hull(d);
    r.tally("E(C) lies inside C~").record(e.is_subset_of(s.tilde), where);
    if (is_convex(U, c)) r.tally("max_enlargement matches conv of the saturations").record(max_enlargement(U, c) == e, where);
    return s;
}

void three_way(Report& r, const Universe& U, const SetFacts& C, const SetFacts& D, const std::string& label) {
    bool i = C.tilde.is_subset_of(D.tilde);
    bool ii = std::includes(C.max.begin(), C.max.end(), D.max.begin(), D.max.end());
    bool iii = D.ql.is_subset_of(C.ql);
    r.tally("C~ in D~ iff Max(D) in Max(C) iff QL(D) in QL(C)").record(i == ii && ii == iii, [&] {
        return label + " C=" + set_to_json(U, C.c).dump() + " D=" + set_to_json(U, D.c).dump();
    });
}

void all_ql_sets(const Universe& U, RaySet cur, RaySet cand, std::vector<RaySet>& out) {
    if (cur.any()) out.push_back(cur);
    for (auto v : members(cand)) {
        cand.reset(v);
        RaySet next = cur;
        next.set(v);
        RaySet nc = cand & U.star(v);
        // Only later candidates, so each set is produced once.
        for (std::size_t w = 0; w <= v; ++w) nc.reset(w);
        all_ql_sets(U, next, nc, out);
    }
}

Universe small_universe(Kind k, std::size_t target, std::mt19937_64& rng) {
    GramForm f = random_gram(3, k, rng);
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < 3; ++i) rays.push_back(basis_ray(3, i));
    while (rays.size() < target) {
        Ray r = random_ray(3, rng, 2);
        if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
    }
    return Universe(f, rays);
}

void nonconvex_clause(Report& r, const std::string& name, bool ok, const std::string& detail) {
    r.tally(name).record(ok, [&] { return detail; });
}

} // namespace

namespace detail {

void universe_convexity(Report& r, const Universe& U, std::size_t samples, std::mt19937_64& rng) {
    hull_and_saturation(r, U, "universe", samples, rng);
    for (std::size_t x = 0; x < U.size(); ++x) maximal_set_identities(r, U, U.single(x), "universe");
}

} // namespace detail

Report check_hull_cs(const SuiteOptions& o) {
    return timed(5, "CS-ratios on convex hulls", [&](Report& r) {
        std::mt19937_64 rng(o.seed + 5);
        std::size_t samples = o.count(50);
        const Target order[] = {Target::any, Target::nu_ql, Target::below_e, Target::c0, Target::odd_class};
        for (std::size_t i = 0; i < 200; ++i) hull_cs_config(r, hull_config(order[i % 5], rng), samples, rng);
        r.notes.push_back("200 configurations, 40 aimed at each hypothesis; hull points are skeletons plus " +
                          std::to_string(samples) + " sampled combinations per hull");
    });
}

Report check_hulls_and_saturations(const SuiteOptions& o) {
    return timed(6, "Hulls and saturations are quasilinear", [&](Report& r) {
        std::mt19937_64 rng(o.seed + 6);
        std::size_t samples = o.count(8);
        for (char name : {'A', 'B', 'C', 'D'})
            hull_and_saturation(r, fixture_universe(name), std::string("Fixture ") + name, samples, rng);
    });
}

Report check_maximal_sets(const SuiteOptions& o) {
    return timed(7, "Maximal quasilinear sets", [&](Report& r) {
        std::mt19937_64 rng(o.seed + 7);
        std::vector<std::pair<std::string, Universe>> small;
        for (std::size_t i = 0; i < 6; ++i) {
            Kind k = i % 2 ? Kind::discrete : Kind::dense;
            small.emplace_back("small universe " + std::to_string(i), small_universe(k, 10 + i % 3, rng));
        }
        for (auto& [label, U] : small) {
            std::vector<RaySet> sets;
            all_ql_sets(U, U.empty(), U.full(), sets);
            std::vector<SetFacts> facts;
            for (auto& c : sets) facts.push_back(maximal_set_identities(r, U, c, label));
            std::uniform_int_distribution<std::size_t> pick(0, facts.size() - 1);
            for (auto& C : facts)
                for (int j = 0; j < 24; ++j) three_way(r, U, C, facts[pick(rng)], label);
        }
        std::size_t n = o.count(100);
        std::vector<std::pair<std::string, Universe>> large;
        for (char name : {'A', 'D'}) large.emplace_back(std::string("Fixture ") + name, fixture_universe(name));
        for (std::size_t i = 0; large.size() < 5; ++i) {
            BandParams bp;
            bp.extra = 40;
            Universe U = band_universe(bp, rng);
            if (U.size() <= 60) large.emplace_back("band universe " + std::to_string(i), U);
        }
        for (std::size_t s = 0; s < n; ++s) {
            auto& [label, U] = large[s % large.size()];
            std::uniform_int_distribution<std::size_t> pick(0, U.size() - 1), size(1, 4);
            RaySet c = U.single(pick(rng));
            for (std::size_t want = size(rng); c.count() < want;) {
                auto cand = members(ql_of_set(U, c) - c);
                if (cand.empty()) break;
                c.set(cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)]);
            }
            RaySet d = U.single(pick(rng));
            auto C = maximal_set_identities(r, U, c, label), D = maximal_set_identities(r, U, d, label);
            three_way(r, U, C, D, label);
            three_way(r, U, D, C, label);
        }
        std::size_t biggest = 0;
        for (auto& [l, U] : large) biggest = std::max(biggest, U.size());
        r.notes.push_back("exhaustive over all nonempty quasilinear C in six universes of 10 to 12 rays; " +
                          std::to_string(n) + " random C in universes of up to " + std::to_string(biggest) + " rays");
    });
}

Report check_nonconvex_star(const SuiteOptions&) {
    return timed(8, "Non-convex QL-star", [&](Report& r) {
        GramForm f = fixture('C');
        Ray X1 = basis_ray(3, 0), X2 = basis_ray(3, 1), X3 = basis_ray(3, 2);
        try {
            auto w = nonconvex_witness(f, X1, X2, X3);
            std::string d = "Y1=" + to_string(w.rays.y1) + " Y2=" + to_string(w.rays.y2) + " Z=" + to_string(w.rays.z);
            nonconvex_clause(r, "CS(X1, Y1) = CS(X1, Y2) = CS(X1, Z) = c0", w.cs_y1.is_c0() && w.cs_y2.is_c0() &&
                                                                                w.cs_z.is_c0(), d);
            nonconvex_clause(r, "Y1 and Y2 are g-isotropic", w.y1_g_isotropic && w.y2_g_isotropic, d);
            nonconvex_clause(r, "Z is g-anisotropic", w.z_g_anisotropic, d);
            nonconvex_clause(r, "Z lies in [Y1, Y2]", w.z_in_interval, d);
            nonconvex_clause(r, "Z lies outside QL(X1)", w.z_outside_star, d);
            nonconvex_clause(r, "Y1 and Y2 lie in QL(X1)", w.y_in_star, d);
            r.notes.push_back("witness " + d + ", lambda0 = " + mag_to_string(w.lambda0));
        } catch (const PreconditionError& e) {
            nonconvex_clause(r, "witness construction applies to Fixture C", false, e.what());
        }
        for (char name : {'A', 'D'}) {
            Universe U = fixture_universe(name);
            for (std::size_t x = 0; x < U.size(); ++x)
                r.tally(std::string("stars are convex on dense Fixture ") + name).record(star_convexity(U, x).convex, [&] {
                    return to_string(U.ray(x));
                });
        }
        Universe U = fixture_universe('C');
        for (std::size_t x = 0; x < U.size(); ++x) {
            if (is_g_isotropic(f, U.ray(x))) continue;
            r.tally("stars of g-anisotropic rays of Fixture C are convex").record(star_convexity(U, x).convex, [&] {
                return to_string(U.ray(x));
            });
        }
    });
}

} // namespace sqf
