#include "sqf/ray.hpp"
#include "sqf/error.hpp"
#include "pieces.hpp"

#include <algorithm>
#include <set>

namespace sqf {

namespace {

std::vector<Coord> shift_to_zero(std::vector<Coord> p) {
    std::optional<Mag> mx;
    for (auto& c : p)
        if (c && (!mx || *c > *mx)) mx = c;
    if (!mx) throw PreconditionError("ray of the zero vector");
    for (auto& c : p)
        if (c) *c -= *mx;
    return p;
}

} // namespace

Ray::Ray(std::vector<Coord> profile) : p_(shift_to_zero(std::move(profile))) {}

std::vector<std::size_t> Ray::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < p_.size(); ++i)
        if (p_[i]) s.push_back(i);
    return s;
}

bool Ray::integral() const {
    return std::all_of(p_.begin(), p_.end(), [](const Coord& c) { return !c || c->denominator() == 1; });
}

bool operator<(const Ray& a, const Ray& b) {
    return std::lexicographical_compare(a.p_.begin(), a.p_.end(), b.p_.begin(), b.p_.end());
}

Ray ray_of(const Vector& x) {
    std::vector<Coord> p;
    for (auto& s : x) p.push_back(s.is_zero() ? Coord{} : Coord{s.mag()});
    return Ray(std::move(p));
}

Ray basis_ray(std::size_t n, std::size_t i) {
    std::vector<Coord> p(n);
    p.at(i) = Mag(0);
    return Ray(std::move(p));
}

std::vector<Vector> representatives(const Ray& X, Kind k) {
    auto supp = X.support();
    std::vector<Vector> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << supp.size()); ++mask) {
        Vector v = zero_vector(X.dim(), k);
        for (std::size_t b = 0; b < supp.size(); ++b) {
            Mag m = *X[supp[b]];
            v[supp[b]] = (mask >> b & 1) ? Scalar::ghost(m, k) : Scalar::tangible(m, k);
        }
        out.push_back(std::move(v));
    }
    return out;
}

Vector tangible_rep(const Ray& X, Kind k) {
    Vector v = zero_vector(X.dim(), k);
    for (auto i : X.support()) v[i] = Scalar::tangible(*X[i], k);
    return v;
}

CsValue cs_rays(const GramForm& f, const Ray& X, const Ray& Y) {
    return cs_vectors(f, tangible_rep(X, f.kind()), tangible_rep(Y, f.kind()));
}

GIso g_isotropy(const GramForm& f, const Ray& X) {
    for (auto& v : representatives(X, f.kind()))
        if (eval_q(f, v).is_tangible()) return GIso::g_anisotropic;
    return GIso::g_isotropic;
}

Ray combine(std::span<const Ray> gens, std::span<const Coord> shifts) {
    std::size_t n = gens.empty() ? 0 : gens[0].dim();
    std::vector<Coord> p(n);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (!shifts[j]) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (!gens[j][i]) continue;
            Mag v = *shifts[j] + *gens[j][i];
            if (!p[i] || v > *p[i]) p[i] = v;
        }
    }
    return Ray(std::move(p));
}

std::vector<Coord> principal_shifts(const Ray& Z, std::span<const Ray> gens) {
    std::vector<Coord> a;
    for (auto& P : gens) {
        if (P.dim() != Z.dim()) throw PreconditionError("dimension mismatch");
        Coord best;
        bool blocked = false;
        for (auto i : P.support()) {
            if (!Z[i]) {
                blocked = true;
                break;
            }
            Mag d = *Z[i] - *P[i];
            if (!best || d < *best) best = d;
        }
        a.push_back(blocked ? Coord{} : best);
    }
    return a;
}

namespace {

bool recovers(const Ray& Z, std::span<const Ray> gens, std::span<const Coord> a) {
    if (std::none_of(a.begin(), a.end(), [](const Coord& c) { return c.has_value(); })) return false;
    for (std::size_t i = 0; i < Z.dim(); ++i) {
        Coord m;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (!a[j] || !gens[j][i]) continue;
            Mag v = *a[j] + *gens[j][i];
            if (!m || v > *m) m = v;
        }
        if (m != Z[i]) return false;
    }
    return true;
}

} // namespace

bool hull_member(const Ray& Z, std::span<const Ray> gens) {
    if (gens.empty()) throw PreconditionError("hull of an empty set");
    auto a = principal_shifts(Z, gens);
    return recovers(Z, gens, a);
}

bool interval_member(const Ray& Z, const Ray& X, const Ray& Y) {
    Ray g[2] = {X, Y};
    return hull_member(Z, g);
}

std::optional<HullCell> hull_cell(const Ray& Z, std::span<const Ray> gens) {
    auto a = principal_shifts(Z, gens);
    if (!recovers(Z, gens, a)) return std::nullopt;
    HullCell c;
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (a[j]) c.cell.push_back(j);
    for (auto j : c.cell) {
        auto b = a;
        b[j].reset();
        if (recovers(Z, gens, b)) c.unique = false;
    }
    return c;
}

namespace {

using detail::Bound;
using detail::Lin;
using detail::for_cells;
using detail::inside;
using detail::probe;
using detail::ties;

// Coordinates of max(t + X, Y) as linear pieces valid around t.
std::vector<std::optional<Lin>> coords_at(const Ray& X, const Ray& Y, const Mag& t) {
    std::vector<std::optional<Lin>> z(X.dim());
    for (std::size_t i = 0; i < X.dim(); ++i) {
        if (X[i] && (!Y[i] || t + *X[i] >= *Y[i]))
            z[i] = Lin{1, *X[i]};
        else if (Y[i])
            z[i] = Lin{0, *Y[i]};
    }
    return z;
}

std::vector<Lin> q_monomials(const GramForm& f, const std::vector<std::optional<Lin>>& z) {
    std::vector<Lin> ms;
    for (std::size_t i = 0; i < f.dim(); ++i) {
        if (!z[i]) continue;
        ms.push_back({2 * z[i]->slope, f.q(i).mag() + 2 * z[i]->off});
        if (!f.b(i, i).is_zero()) ms.push_back({2 * z[i]->slope, f.b(i, i).mag() + 2 * z[i]->off});
        for (std::size_t j = i + 1; j < f.dim(); ++j)
            if (z[j] && !f.b(i, j).is_zero())
                ms.push_back({z[i]->slope + z[j]->slope, f.b(i, j).mag() + z[i]->off + z[j]->off});
    }
    return ms;
}

std::vector<Lin> b_monomials(const GramForm& f, const std::vector<std::optional<Lin>>& z, const Ray& W) {
    std::vector<Lin> ms;
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < f.dim(); ++j)
            if (z[i] && W[j] && !f.b(i, j).is_zero())
                ms.push_back({z[i]->slope, f.b(i, j).mag() + z[i]->off + *W[j]});
    return ms;
}

std::optional<Lin> top(const std::vector<Lin>& ms, const Mag& t) {
    std::optional<Lin> best;
    for (auto& m : ms)
        if (!best || m.at(t) > best->at(t)) best = m;
    return best;
}

} // namespace

std::vector<Ray> interval_skeleton(const GramForm& f, const Ray& X, const Ray& Y,
                                   std::span<const Ray> witnesses) {
    if (X == Y) return {X};
    std::set<Mag> pts;
    for (auto i : X.support())
        for (auto j : Y.support()) pts.insert(*Y[j] - *X[i]);

    std::set<Mag> refined = pts;
    for_cells(pts, [&](const Bound& lo, const Bound& hi) {
        auto z = coords_at(X, Y, probe(lo, hi));
        ties(q_monomials(f, z), lo, hi, refined);
        for (auto& W : witnesses) ties(b_monomials(f, z, W), lo, hi, refined);
    });

    std::set<Mag> full = refined;
    for (auto& W : witnesses) {
        Mag qw = eval_q(f, tangible_rep(W, f.kind())).mag();
        for_cells(refined, [&](const Bound& lo, const Bound& hi) {
            Mag t = probe(lo, hi);
            auto z = coords_at(X, Y, t);
            auto qm = top(q_monomials(f, z), t);
            auto bm = top(b_monomials(f, z, W), t);
            if (!qm || !bm) return;
            // CS(t) = 2 B(t) - Q(t) - q(W), linear on the cell.
            int slope = 2 * bm->slope - qm->slope;
            Mag off = 2 * bm->off - qm->off - qw;
            if (slope == 0) return;
            for (int target : {0, 1}) {
                Mag s = (Mag(target) - off) / Mag(slope);
                if (inside(s, lo, hi)) full.insert(s);
            }
        });
    }

    auto ts = detail::sample_points(full, f.kind() == Kind::discrete);

    std::vector<Ray> out{X, Y};
    Ray g[2] = {X, Y};
    for (auto& t : ts) {
        Coord a[2] = {t, Mag(0)};
        Ray z = combine(g, a);
        if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    }
    return out;
}

std::string to_string(const Ray& X) {
    std::string s = "(";
    for (std::size_t i = 0; i < X.dim(); ++i) {
        if (i) s += ", ";
        s += X[i] ? mag_to_string(*X[i]) : "_";
    }
    return s + ")";
}

Ray parse_ray(std::string_view s, Kind k) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("ray must look like (-3, 0, _): '" + std::string(s) + "'");
    std::string_view body = s.substr(1, s.size() - 2);
    std::vector<Coord> p;
    while (true) {
        auto comma = body.find(',');
        auto tok = body.substr(0, comma);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (tok == "_") {
            p.emplace_back();
        } else {
            Mag m = parse_mag(tok);
            if (k == Kind::discrete && m.denominator() != 1)
                throw ParseError("discrete ray needs integer entries: '" + std::string(s) + "'");
            p.emplace_back(m);
        }
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    try {
        return Ray(std::move(p));
    } catch (const PreconditionError&) {
        throw ParseError("ray with no finite entry: '" + std::string(s) + "'");
    }
}

nlohmann::json ray_to_json(const Ray& X) {
    auto j = nlohmann::json::array();
    for (std::size_t i = 0; i < X.dim(); ++i) {
        if (!X[i])
            j.push_back(nullptr);
        else if (X[i]->denominator() == 1)
            j.push_back(X[i]->numerator());
        else
            j.push_back(mag_to_string(*X[i]));
    }
    return j;
}

Ray ray_from_json(const nlohmann::json& j, Kind k) {
    if (j.is_string()) return parse_ray(j.get<std::string>(), k);
    if (!j.is_array()) throw ParseError("ray json must be an array or string");
    std::vector<Coord> p;
    for (auto& e : j) {
        if (e.is_null())
            p.emplace_back();
        else if (e.is_number_integer())
            p.emplace_back(Mag(e.get<std::int64_t>()));
        else if (e.is_string())
            p.emplace_back(parse_mag(e.get<std::string>()));
        else
            throw ParseError("bad ray entry in json");
        if (p.back() && k == Kind::discrete && p.back()->denominator() != 1)
            throw ParseError("discrete ray needs integer entries");
    }
    try {
        return Ray(std::move(p));
    } catch (const PreconditionError&) {
        throw ParseError("ray with no finite entry");
    }
}

} // namespace sqf
