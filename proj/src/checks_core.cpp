#include "sqf/checks.hpp"
#include "sqf/error.hpp"
#include "sqf/generators.hpp"
#include "check_util.hpp"

#include <array>
#include <chrono>
#include <sstream>

namespace sqf {

using namespace detail;

void Tally::record(bool ok, const std::function<std::string()>& describe) {
    ++checked;
    if (ok) return;
    if (violated++ == 0 && describe) example = describe();
}

Tally& Report::tally(std::string_view name, bool required) {
    for (auto& t : tallies)
        if (t.name == name) return t;
    tallies.push_back({std::string(name), 0, 0, {}, required});
    return tallies.back();
}

bool Report::passed() const {
    for (auto& t : tallies)
        if (!t.passed()) return false;
    return true;
}

std::vector<const Tally*> Report::failures() const {
    std::vector<const Tally*> out;
    for (auto& t : tallies)
        if (!t.passed()) out.push_back(&t);
    return out;
}

nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["criterion"] = r.criterion;
    j["title"] = r.title;
    j["passed"] = r.passed();
    j["seconds"] = r.seconds;
    j["checks"] = nlohmann::json::array();
    for (auto& t : r.tallies) {
        nlohmann::json c{{"name", t.name}, {"checked", t.checked}, {"violated", t.violated}, {"passed", t.passed()}};
        if (!t.example.empty()) c["example"] = t.example;
        j["checks"].push_back(c);
    }
    j["notes"] = r.notes;
    return j;
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    for (auto& t : r.tallies) {
        os << "  " << (t.passed() ? "ok  " : "FAIL") << "  " << t.name << ": " << t.checked << " checked";
        if (t.violated) os << ", " << t.violated << " violated";
        if (t.checked == 0 && t.required) os << " (never exercised)";
        os << "\n";
        if (!t.example.empty()) os << "        e.g. " << t.example << "\n";
    }
    for (auto& n : r.notes) os << "  note: " << n << "\n";
    return os.str();
}

// ---- shared generators ----------------------------------------------------

Universe fixture_universe(char name) {
    GramForm f = fixture(name);
    std::vector<Ray> gens;
    for (std::size_t i = 0; i < f.dim(); ++i) gens.push_back(basis_ray(f.dim(), i));
    return build_universe(f, gens, {ClosureKind::skeleton, 1});
}

namespace {

// ---- scalars --------------------------------------------------------------

Scalar ref_add(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.mag() > b.mag()) return a;
    if (b.mag() > a.mag()) return b;
    return Scalar::ghost(a.mag(), a.kind());
}

Scalar ref_mul(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar::zero(a.kind());
    Mag m = a.mag() + b.mag();
    return a.is_ghost() || b.is_ghost() ? Scalar::ghost(m, a.kind()) : Scalar::tangible(m, a.kind());
}

std::string show3(const Scalar& a, const Scalar& b, const Scalar& c) {
    return "a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(c);
}

void scalar_triple(Report& r, const Scalar& a, const Scalar& b, const Scalar& c) {
    Kind k = a.kind();
    auto d = [&] { return show3(a, b, c); };
    r.tally("sum matches the max-with-ghost-ties rule").record(a + b == ref_add(a, b), d);
    r.tally("product matches the add-magnitudes rule").record(a * b == ref_mul(a, b), d);
    r.tally("addition is associative").record((a + b) + c == a + (b + c), d);
    r.tally("multiplication is associative").record((a * b) * c == a * (b * c), d);
    r.tally("addition is commutative").record(a + b == b + a, d);
    r.tally("multiplication is commutative").record(a * b == b * a, d);
    r.tally("multiplication distributes over addition").record(a * (b + c) == a * b + a * c, d);
    r.tally("zero and one are identities")
        .record(a + Scalar::zero(k) == a && a * unit(k) == a && (a * Scalar::zero(k)).is_zero(), d);
    r.tally("Frobenius: (a+b)^2 = a^2 + b^2").record(square(a + b) == square(a) + square(b), d);
    Scalar s = a + b;
    bool bip = eq_nu(a, b) && !a.is_zero() ? s == nu(a) : (s == a || s == b);
    r.tally("bipotent addition with ghost ties").record(bip, d);
    r.tally("e*a is the ghost of a").record(ghost_unit(k) * a == nu(a), d);
    if (a.is_tangible() && b.is_tangible())
        r.tally("squaring is injective on tangibles").record(!(square(a) == square(b)) || a == b, d);
}

std::vector<Scalar> grid(Kind k) {
    std::vector<Scalar> v{Scalar::zero(k)};
    for (int m = -2; m <= 2; ++m) {
        v.push_back(Scalar::tangible(m, k));
        v.push_back(Scalar::ghost(m, k));
    }
    return v;
}

// ---- forms ----------------------------------------------------------------

void companion_case(Report& r, const GramForm& f, const Vector& x, const Vector& y) {
    Scalar lhs = eval_q(f, x + y), rhs = eval_q(f, x) + eval_q(f, y) + eval_b(f, x, y);
    r.tally("q(x+y) = q(x) + q(y) + b(x,y), dim " + std::to_string(f.dim())).record(lhs == rhs, [&] {
        return "x=" + to_string(x) + " y=" + to_string(y) + " lhs=" + to_string(lhs) + " rhs=" + to_string(rhs);
    });
}

} // namespace

Report check_scalar_laws(const SuiteOptions& o) {
    return timed(1, "Semiring laws", [&](Report& r) {
        for (Kind k : {Kind::dense, Kind::discrete}) {
            auto g = grid(k);
            for (auto& a : g)
                for (auto& b : g)
                    for (auto& c : g) scalar_triple(r, a, b, c);
        }
        std::mt19937_64 rng(o.seed);
        std::size_t n = o.count(100000);
        for (std::size_t i = 0; i < n; ++i) {
            Kind k = i % 2 ? Kind::discrete : Kind::dense;
            scalar_triple(r, random_scalar(k, rng), random_scalar(k, rng), random_scalar(k, rng));
        }
        r.notes.push_back("exhaustive over zero and {t,g} x {-2..2} in both kinds, plus " + std::to_string(n) +
                          " random triples");
    });
}

Report check_companion_identity(const SuiteOptions& o) {
    return timed(2, "Companion identity", [&](Report& r) {
        std::mt19937_64 rng(o.seed + 2);
        std::size_t vectors = o.count(10000);
        for (Kind k : {Kind::dense, Kind::discrete}) {
            // Every tag pattern of a 2x2 Gram matrix over {0} u {t,g} x {0,1,5}.
            for (int q0 = 1; q0 < 7; ++q0)
                for (int q1 = 1; q1 < 7; ++q1)
                    for (int b = 0; b < 7; ++b) {
                        GramForm f(k, {gram_entry(q0, k), gram_entry(q1, k)});
                        f.set_cross(0, 1, gram_entry(b, k));
                        for (std::size_t i = 0; i < 2; ++i)
                            for (std::size_t j = 0; j < 2; ++j)
                                companion_case(r, f, basis_vector(2, i, k), basis_vector(2, j, k));
                        for (std::size_t s = 0; s < std::max<std::size_t>(vectors / 500, 2); ++s)
                            companion_case(r, f, random_vector(2, k, rng), random_vector(2, k, rng));
                    }
            for (std::size_t n = 2; n <= 4; ++n)
                for (std::size_t s = 0; s < vectors; ++s) {
                    GramForm f = random_gram(n, k, rng);
                    companion_case(r, f, random_vector(n, k, rng), random_vector(n, k, rng));
                }
        }
    });
}

Report check_cs_rescaling(const SuiteOptions& o) {
    return timed(3, "CS well-definedness", [&](Report& r) {
        std::mt19937_64 rng(o.seed + 3);
        std::size_t scales = o.count(1000);
        for (char name : {'A', 'B', 'C', 'D'}) {
            GramForm f = fixture(name);
            Kind k = f.kind();
            auto& t = r.tally(std::string("CS invariant under rescaling, Fixture ") + name);
            std::vector<std::pair<Vector, Vector>> pairs;
            for (std::size_t i = 0; i < f.dim(); ++i)
                for (std::size_t j = 0; j < f.dim(); ++j)
                    pairs.emplace_back(basis_vector(f.dim(), i, k), basis_vector(f.dim(), j, k));
            while (pairs.size() < 24) {
                Vector x = random_vector(f.dim(), k, rng), y = random_vector(f.dim(), k, rng);
                if (!is_zero_vector(x) && !is_zero_vector(y)) pairs.emplace_back(x, y);
            }
            for (auto& [x, y] : pairs) {
                CsValue base = cs_vectors(f, x, y);
                for (std::size_t s = 0; s < scales; ++s) {
                    Scalar l = random_scalar(k, rng, 20, false), m = random_scalar(k, rng, 20, false);
                    CsValue c = cs_vectors(f, l * x, m * y);
                    t.record(c == base, [&] {
                        return "x=" + to_string(x) + " y=" + to_string(y) + " scaled by " + to_string(l) + ", " +
                               to_string(m) + ": " + to_string(c) + " vs " + to_string(base);
                    });
                }
            }
        }
    });
}

Report check_criterion_oracle(const SuiteOptions& o) {
    return timed(4, "Criterion-oracle equivalence", [&](Report& r) {
        for (char name : {'A', 'B', 'C', 'D'}) {
            Universe U = fixture_universe(name);
            auto& t = r.tally(std::string("criterion agrees with oracle on Fixture ") + name + " universe");
            for (std::size_t a = 0; a < U.size(); ++a)
                for (std::size_t b = a; b < U.size(); ++b) {
                    bool c = is_ql_pair(U.form(), U.ray(a), U.ray(b));
                    t.record(c == oracle_is_ql_pair(U.form(), U.ray(a), U.ray(b)), [&] {
                        return to_string(U.ray(a)) + ", " + to_string(U.ray(b));
                    });
                }
        }
        std::mt19937_64 rng(o.seed + 4);
        std::size_t n = o.count(1000);
        for (Kind k : {Kind::dense, Kind::discrete}) {
            auto& t = r.tally(std::string("criterion agrees with oracle on random ") + kind_name(k) + " instances",
                              n > 0);
            std::uniform_int_distribution<std::size_t> dim(2, 3);
            for (std::size_t s = 0; s < n; ++s) {
                GramForm f = random_gram(dim(rng), k, rng);
                Ray X = random_ray(f.dim(), rng), Y = random_ray(f.dim(), rng);
                bool c = is_ql_pair(f, X, Y);
                t.record(c == oracle_is_ql_pair(f, X, Y), [&] {
                    return nlohmann::json(form_to_json(f)).dump() + " " + to_string(X) + ", " + to_string(Y);
                });
            }
        }
    });
}

Report check_example_three_rays(const SuiteOptions&) {
    return timed(12, "Example with three basis rays (Fixture B)", [&](Report& r) {
        GramForm f = fixture('B');
        Kind k = f.kind();
        Scalar gamma = Scalar::tangible(1, k);
        for (std::size_t i = 0; i < 3; ++i) {
            std::size_t j = (i + 1) % 3, l = (i + 2) % 3;
            Vector ei = basis_vector(3, i, k), y = basis_vector(3, j, k) + basis_vector(3, l, k);
            Ray X = ray_of(ei), Y = ray_of(y);
            Ray Z = ray_of(basis_vector(3, 0, k) + basis_vector(3, 1, k) + basis_vector(3, 2, k));
            r.tally("q(e_j + e_k) = gamma").record(eval_q(f, y) == gamma, [&] { return to_string(eval_q(f, y)); });
            r.tally("b(e_i, e_j + e_k) = c0").record(eval_b(f, ei, y) == c0());
            r.tally("CS(X_i, Y_i) = c0").record(cs_rays(f, X, Y).is_c0());
            r.tally("Y_i is g-anisotropic").record(!is_g_isotropic(f, Y));
            r.tally("Z = ray(e1+e2+e3) lies in [X_i, Y_i]").record(interval_member(Z, X, Y));
            CsValue cjk = cs_rays(f, ray_of(basis_vector(3, j, k)), ray_of(basis_vector(3, l, k)));
            r.tally("CS(X_j, X_k) is c0 squared, so (X_j, X_k) is not exotic")
                .record(!cjk.zero && cjk.mag == Mag(2), [&] { return to_string(cjk); });
        }
        r.notes.push_back("the printed value CS(X_j, X_k) = c0 is not reproduced; the computed value is c0^2");
    });
}

Report run_criterion(int k, const SuiteOptions& o) {
    switch (k) {
    case 1: return check_scalar_laws(o);
    case 2: return check_companion_identity(o);
    case 3: return check_cs_rescaling(o);
    case 4: return check_criterion_oracle(o);
    case 5: return check_hull_cs(o);
    case 6: return check_hulls_and_saturations(o);
    case 7: return check_maximal_sets(o);
    case 8: return check_nonconvex_star(o);
    case 9: return check_path_layer(o);
    case 10: return check_anchors_and_flocks(o);
    case 11: return check_domination(o);
    case 12: return check_example_three_rays(o);
    }
    throw PreconditionError("no criterion " + std::to_string(k));
}

} // namespace sqf
