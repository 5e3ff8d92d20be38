#include "sqf/qlcore.hpp"
#include "sqf/error.hpp"
#include "pieces.hpp"

#include <algorithm>

namespace sqf {

bool is_ql_pair(const GramForm& f, const Ray& X, const Ray& Y) {
    CsValue cs = cs_rays(f, X, Y);
    if (cs.le_e()) return true;
    if (f.kind() == Kind::dense) return false;
    return cs.is_c0() && is_g_isotropic(f, X) && is_g_isotropic(f, Y);
}

bool is_nu_ql_pair(const GramForm& f, const Ray& X, const Ray& Y) {
    CsValue cs = cs_rays(f, X, Y);
    return f.kind() == Kind::dense ? cs.le_e() : cs.le_c0();
}

bool is_excessive_pair(const GramForm& f, const Ray& X, const Ray& Y) { return !is_ql_pair(f, X, Y); }

bool oracle_is_ql_pair(const GramForm& f, const Ray& X, const Ray& Y) {
    using detail::Lin;
    // q(l x + y) expanded in t = mag(l): every monomial and every coordinate tie.
    std::vector<Lin> ms;
    std::set<Mag> crit;
    std::size_t n = f.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (X[i]) ms.push_back({2, f.q(i).mag() + 2 * *X[i]});
        if (Y[i]) ms.push_back({0, f.q(i).mag() + 2 * *Y[i]});
        if (X[i] && Y[i]) {
            crit.insert(*Y[i] - *X[i]);
            if (!f.b(i, i).is_zero()) ms.push_back({1, f.b(i, i).mag() + *X[i] + *Y[i]});
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (f.b(i, j).is_zero()) continue;
            Mag c = f.b(i, j).mag();
            if (X[i] && X[j]) ms.push_back({2, c + *X[i] + *X[j]});
            if (X[i] && Y[j]) ms.push_back({1, c + *X[i] + *Y[j]});
            if (Y[i] && X[j]) ms.push_back({1, c + *Y[i] + *X[j]});
            if (Y[i] && Y[j]) ms.push_back({0, c + *Y[i] + *Y[j]});
        }
    }
    detail::ties(ms, {}, {}, crit);
    auto ts = detail::sample_points(crit, f.kind() == Kind::discrete);

    Kind k = f.kind();
    auto xs = representatives(X, k), ys = representatives(Y, k);
    for (auto& t : ts) {
        Scalar l = Scalar::tangible(t, k);
        for (auto& x : xs) {
            Vector lx = l * x;
            Scalar qlx = eval_q(f, lx);
            for (auto& y : ys)
                if (!(eval_q(f, lx + y) == qlx + eval_q(f, y))) return false;
        }
    }
    return true;
}

std::vector<std::size_t> members(const RaySet& s) {
    std::vector<std::size_t> out;
    for (auto i = s.find_first(); i != RaySet::npos; i = s.find_next(i)) out.push_back(i);
    return out;
}

bool subset_of(const RaySet& a, const RaySet& b) { return a.is_subset_of(b); }

Closure parse_closure(std::string_view s) {
    if (s == "none") return {ClosureKind::none, 0};
    if (s == "subset_sums") return {ClosureKind::subset_sums, 0};
    if (s.starts_with("skeleton")) {
        int depth = 1;
        if (s.size() > 8) {
            if (s[8] != '(' || s.back() != ')') throw ParseError("closure must be skeleton(depth)");
            depth = std::stoi(std::string(s.substr(9, s.size() - 10)));
        }
        return {ClosureKind::skeleton, depth};
    }
    throw ParseError("unknown closure '" + std::string(s) + "'");
}

std::string to_string(const Closure& c) {
    switch (c.kind) {
    case ClosureKind::none: return "none";
    case ClosureKind::subset_sums: return "subset_sums";
    case ClosureKind::skeleton: return "skeleton(" + std::to_string(c.depth) + ")";
    }
    return "?";
}

Universe::Universe(GramForm f, std::vector<Ray> rays) : f_(std::move(f)) {
    require_valid(f_);
    for (auto& r : rays) {
        if (r.dim() != f_.dim()) throw PreconditionError("ray dimension differs from form");
        if (f_.kind() == Kind::discrete && !r.integral())
            throw PreconditionError("discrete universe needs integer rays");
        if (index_.emplace(r, rays_.size()).second) rays_.push_back(r);
    }
    std::size_t n = rays_.size();
    adj_.assign(n, RaySet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (is_ql_pair(f_, rays_[i], rays_[j])) {
                adj_[i][j] = true;
                adj_[j][i] = true;
            }
    dec_.assign(n, RaySet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dec_[i][j] = adj_[i].is_subset_of(adj_[j]);
}

std::optional<std::size_t> Universe::find(const Ray& X) const {
    auto it = index_.find(X);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Universe::index_of(const Ray& X) const {
    auto i = find(X);
    if (!i) throw PreconditionError("ray " + to_string(X) + " is not in the universe");
    return *i;
}

RaySet Universe::single(std::size_t i) const {
    RaySet s(size());
    s.set(i);
    return s;
}

RaySet Universe::set_of(const std::vector<std::size_t>& idx) const {
    RaySet s(size());
    for (auto i : idx) s.set(i);
    return s;
}

RaySet Universe::hull(const RaySet& s) const {
    std::vector<Ray> gens;
    for (auto i : members(s)) gens.push_back(rays_[i]);
    RaySet h(size());
    if (gens.empty()) return h;
    for (std::size_t w = 0; w < size(); ++w)
        if (s[w] || hull_member(rays_[w], gens)) h.set(w);
    return h;
}

Universe build_universe(const GramForm& f, const std::vector<Ray>& gens, Closure closure, std::size_t cap) {
    if (gens.empty()) throw PreconditionError("universe needs at least one generator");
    std::vector<Ray> rays;
    auto add = [&](const Ray& r) {
        if (std::find(rays.begin(), rays.end(), r) != rays.end()) return;
        rays.push_back(r);
        if (rays.size() > cap) throw CapError("universe exceeds cap of " + std::to_string(cap) + " rays");
    };
    for (auto& g : gens) add(g);
    if (closure.kind == ClosureKind::subset_sums) {
        std::vector<Ray> base = rays;
        if (base.size() > 20) throw CapError("subset_sums closure over more than 20 generators");
        for (std::size_t mask = 1; mask < (std::size_t(1) << base.size()); ++mask) {
            std::vector<Coord> shifts(base.size());
            for (std::size_t j = 0; j < base.size(); ++j)
                if (mask >> j & 1) shifts[j] = Mag(0);
            add(combine(base, shifts));
        }
    } else if (closure.kind == ClosureKind::skeleton) {
        for (int d = 0; d < closure.depth; ++d) {
            std::vector<Ray> cur = rays;
            for (std::size_t i = 0; i < cur.size(); ++i)
                for (std::size_t j = i + 1; j < cur.size(); ++j)
                    for (auto& z : interval_skeleton(f, cur[i], cur[j])) add(z);
        }
    }
    return Universe(f, std::move(rays));
}

RaySet ql_star(const Universe& U, std::size_t x) { return U.star(x); }

RaySet ql_of_set(const Universe& U, const RaySet& s) {
    if (s.none()) throw PreconditionError("QL of an empty set");
    RaySet r = U.full();
    for (auto i : members(s)) r &= U.star(i);
    return r;
}

RaySet sat_ql(const Universe& U, const RaySet& s) {
    RaySet q = ql_of_set(U, s);
    if (q.none()) throw PreconditionError("saturation undefined: QL(S) is empty");
    return ql_of_set(U, q);
}

bool preceq(const Universe& U, std::size_t x, std::size_t y) { return U.preceq(x, y); }

bool ql_equiv(const Universe& U, std::size_t x, std::size_t y) { return U.preceq(x, y) && U.preceq(y, x); }

bool is_quasilinear_set(const Universe& U, const RaySet& c) {
    for (auto i : members(c))
        if (!c.is_subset_of(U.star(i))) return false;
    return true;
}

bool is_convex(const Universe& U, const RaySet& c) { return U.hull(c) == c; }

namespace {

void require_ql_convex(const Universe& U, const RaySet& c) {
    if (c.none()) throw PreconditionError("empty set");
    if (!is_quasilinear_set(U, c)) throw PreconditionError("set is not quasilinear");
    if (!is_convex(U, c)) throw PreconditionError("set is not convex relative to the universe");
}

// {Z in within : X <= Z for some X in from}
RaySet dominated_by(const Universe& U, const RaySet& from, const RaySet& within) {
    RaySet d = U.empty();
    for (auto z : members(within))
        for (auto x : members(from))
            if (U.preceq(x, z)) {
                d.set(z);
                break;
            }
    return d;
}

RaySet validated_mother(const Universe& U, const EnlargementPair& p) {
    const auto& [c0, c] = p;
    if (!c0.is_subset_of(c)) throw PreconditionError("non-enlargement input: C0 not inside C");
    require_ql_convex(U, c0);
    if (!is_quasilinear_set(U, c)) throw PreconditionError("non-enlargement input: C not quasilinear");
    RaySet d = dominated_by(U, c0, c);
    if (U.hull(d | c0) != c) throw PreconditionError("non-enlargement input: C is not conv(D u C0)");
    return d;
}

} // namespace

Enlargement enlargement(const Universe& U, const RaySet& c, const RaySet& d) {
    require_ql_convex(U, c);
    for (auto z : members(d)) {
        bool ok = false;
        for (auto x : members(c))
            if (U.preceq(x, z)) ok = true;
        if (!ok)
            throw PreconditionError("mother-set precondition violated: no X in C with X <= " +
                                    to_string(U.ray(z)));
    }
    return {U.hull(c | d), d - c};
}

RaySet max_enlargement(const Universe& U, const RaySet& c) {
    require_ql_convex(U, c);
    RaySet d = U.empty();
    for (auto x : members(c)) d |= sat_ql(U, U.single(x));
    return U.hull(d);
}

Amalgamation amalgamate(const Universe& U, const std::vector<EnlargementPair>& family) {
    if (family.empty()) throw PreconditionError("empty family");
    Amalgamation a{U.empty(), U.empty(), U.empty()};
    RaySet u0 = U.empty(), u = U.empty();
    for (auto& p : family) {
        RaySet d = validated_mother(U, p);
        a.mother |= d - p.first;
        u0 |= p.first;
        u |= p.second;
    }
    a.c0 = U.hull(u0);
    a.c = U.hull(u);
    a.special = a.c == u;
    a.very_special = a.special && a.c0 == u0;
    return a;
}

std::vector<EnlargementPair> atomic_cover(const Universe& U, const RaySet& c1, const RaySet& c) {
    RaySet d = validated_mother(U, {c1, c});
    std::vector<std::size_t> chosen;
    RaySet open = d;
    while (open.any()) {
        std::size_t best = RaySet::npos, best_count = 0;
        for (auto x : members(c1)) {
            std::size_t cnt = 0;
            for (auto z : members(open))
                if (U.preceq(x, z)) ++cnt;
            if (cnt > best_count) {
                best = x;
                best_count = cnt;
            }
        }
        chosen.push_back(best);
        for (auto z : members(open))
            if (U.preceq(best, z)) open.reset(z);
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<EnlargementPair> out;
    for (auto x : chosen) out.push_back({U.single(x), c & sat_ql(U, U.single(x))});
    return out;
}

namespace {

struct CliqueSearch {
    const Universe& U;
    std::size_t cap;
    std::vector<RaySet> found;

    void run(RaySet r, RaySet p, RaySet x) {
        if (p.none() && x.none()) {
            if (found.size() >= cap) throw CapError("more than " + std::to_string(cap) + " maximal sets");
            found.push_back(r);
            return;
        }
        RaySet px = p | x;
        std::size_t pivot = RaySet::npos, best = 0;
        for (auto u : members(px)) {
            std::size_t cnt = (p & U.star(u)).count();
            if (pivot == RaySet::npos || cnt > best) {
                pivot = u;
                best = cnt;
            }
        }
        RaySet np = U.star(pivot);
        np.reset(pivot);
        RaySet cand = p - np;
        for (auto v : members(cand)) {
            RaySet nv = U.star(v);
            nv.reset(v);
            RaySet r2 = r;
            r2.set(v);
            run(r2, p & nv, x & nv);
            p.reset(v);
            x.set(v);
        }
    }
};

} // namespace

MaxSets max_ql_sets(const Universe& U, const RaySet& c, std::size_t cap) {
    if (c.none()) throw PreconditionError("empty set");
    if (!is_quasilinear_set(U, c)) throw PreconditionError("set is not quasilinear");
    CliqueSearch s{U, cap, {}};
    s.run(c, ql_of_set(U, c) - c, U.empty());
    std::sort(s.found.begin(), s.found.end(),
              [](const RaySet& a, const RaySet& b) { return members(a) < members(b); });
    MaxSets m{std::move(s.found), {}};
    for (std::size_t i = 0; i < m.sets.size(); ++i)
        if (!is_convex(U, m.sets[i])) m.not_convex.push_back(i);
    return m;
}

RaySet tilde_c(const Universe& U, const RaySet& c) {
    auto m = max_ql_sets(U, c);
    RaySet r = U.full();
    for (auto& s : m.sets) r &= s;
    return r;
}

NonconvexWitness nonconvex_witness(const GramForm& f, const Ray& x1, const Ray& x2, const Ray& x3) {
    if (f.kind() != Kind::discrete) throw PreconditionError("nonconvex_witness needs a discrete form");
    if (!is_g_isotropic(f, x1)) throw PreconditionError("X1 must be g-isotropic");
    if (is_g_isotropic(f, x3)) throw PreconditionError("X3 must be g-anisotropic");
    CsValue c12 = cs_rays(f, x1, x2), c13 = cs_rays(f, x1, x3);
    if (!c13.is_c0() || !(c12 <= c13)) throw PreconditionError("need CS(X1,X2) <= CS(X1,X3) = c0");

    Kind k = f.kind();
    Vector e2 = tangible_rep(x2, k), e3;
    for (auto& v : representatives(x3, k))
        if (eval_q(f, v).is_tangible()) {
            e3 = v;
            break;
        }
    Mag a2 = eval_q(f, e2).mag(), a3 = eval_q(f, e3).mag();
    Scalar b23 = eval_b(f, e2, e3);
    Mag need = a2 - a3;
    if (!b23.is_zero()) {
        need = std::max(need, 2 * a3 - 2 * b23.mag());
        need = std::max(need, 2 * b23.mag() - 2 * a3);
    }
    Mag l0 = -detail::floor_mag(-need / 2);

    NonconvexWitness w;
    w.lambda0 = l0;
    Vector y2v = e2 + Scalar::ghost(l0, k) * e3;
    Vector zv = e2 + Scalar::tangible(l0 + 1, k) * e3;
    Vector y1v = e2 + Scalar::ghost(l0 + 2, k) * e3;
    w.rays = {ray_of(y1v), ray_of(y2v), ray_of(zv)};
    w.q_z = eval_q(f, zv);
    w.cs_y1 = cs_rays(f, x1, w.rays.y1);
    w.cs_y2 = cs_rays(f, x1, w.rays.y2);
    w.cs_z = cs_rays(f, x1, w.rays.z);
    w.y1_g_isotropic = is_g_isotropic(f, w.rays.y1);
    w.y2_g_isotropic = is_g_isotropic(f, w.rays.y2);
    w.z_g_anisotropic = !is_g_isotropic(f, w.rays.z);
    w.z_in_interval = interval_member(w.rays.z, w.rays.y1, w.rays.y2);
    w.z_outside_star = !is_ql_pair(f, x1, w.rays.z);
    w.y_in_star = is_ql_pair(f, x1, w.rays.y1) && is_ql_pair(f, x1, w.rays.y2);
    return w;
}

StarConvexity star_convexity(const Universe& U, std::size_t x) {
    const auto& f = U.form();
    const Ray& X = U.ray(x);
    StarConvexity r;
    r.theorem_applies = f.kind() == Kind::dense || !is_g_isotropic(f, X);
    auto star = members(U.star(x));
    Ray wit[1] = {X};
    for (std::size_t a = 0; a < star.size() && r.convex; ++a)
        for (std::size_t b = a + 1; b < star.size() && r.convex; ++b) {
            const Ray &y1 = U.ray(star[a]), &y2 = U.ray(star[b]);
            for (auto& z : interval_skeleton(f, y1, y2, wit))
                if (!is_ql_pair(f, X, z)) {
                    r.convex = false;
                    r.witness = WitnessTriple{y1, y2, z};
                    break;
                }
        }
    if (!r.convex || r.theorem_applies) return r;
    for (std::size_t a = 0; a < U.size(); ++a)
        for (std::size_t b = 0; b < U.size(); ++b) {
            if (a == b) continue;
            try {
                auto w = nonconvex_witness(f, X, U.ray(a), U.ray(b));
                if (w.certified()) {
                    r.convex = false;
                    r.witness = w.rays;
                    return r;
                }
            } catch (const PreconditionError&) {
            }
        }
    return r;
}

nlohmann::json set_to_json(const Universe& U, const RaySet& s) {
    auto j = nlohmann::json::array();
    for (auto i : members(s)) j.push_back(to_string(U.ray(i)));
    return j;
}

} // namespace sqf
