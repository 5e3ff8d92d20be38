#pragma once

/**
 * @file qlcore.hpp
 * @brief Quasilinearity of ray pairs and the star/order theory of a finite
 *        ray universe.
 *
 * Everything that mentions a Universe is relative to it: QL(X) means the
 * rays of U that pair quasilinearly with X, and X <= Y means
 * QL(X) is contained in QL(Y) inside U.  The relative order can be coarser
 * than the absolute one.
 */

#include "sqf/ray.hpp"

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace sqf {

bool is_ql_pair(const GramForm& f, const Ray& X, const Ray& Y);
// Independent decision: exhausts tag patterns and critical scalings.
bool oracle_is_ql_pair(const GramForm& f, const Ray& X, const Ray& Y);
bool is_nu_ql_pair(const GramForm& f, const Ray& X, const Ray& Y);
bool is_excessive_pair(const GramForm& f, const Ray& X, const Ray& Y);

using RaySet = boost::dynamic_bitset<>;

std::vector<std::size_t> members(const RaySet& s);
bool subset_of(const RaySet& a, const RaySet& b);

enum class ClosureKind { none, subset_sums, skeleton };

struct Closure {
    ClosureKind kind = ClosureKind::none;
    int depth = 1;
};

Closure parse_closure(std::string_view s);
std::string to_string(const Closure& c);

class Universe {
public:
    Universe(GramForm f, std::vector<Ray> rays);

    const GramForm& form() const { return f_; }
    std::size_t size() const { return rays_.size(); }
    const Ray& ray(std::size_t i) const { return rays_.at(i); }
    const std::vector<Ray>& rays() const { return rays_; }

    std::optional<std::size_t> find(const Ray& X) const;
    std::size_t index_of(const Ray& X) const;  // throws PreconditionError

    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i][j]; }
    const RaySet& star(std::size_t i) const { return adj_.at(i); }
    bool preceq(std::size_t i, std::size_t j) const { return dec_[i][j]; }

    RaySet empty() const { return RaySet(size()); }
    RaySet full() const { return RaySet(size()).set(); }
    RaySet single(std::size_t i) const;
    RaySet set_of(const std::vector<std::size_t>& idx) const;

    // {W in U : W in conv(S)}
    RaySet hull(const RaySet& s) const;

private:
    GramForm f_;
    std::vector<Ray> rays_;
    std::map<Ray, std::size_t> index_;
    std::vector<RaySet> adj_;
    std::vector<RaySet> dec_;
};

Universe build_universe(const GramForm& f, const std::vector<Ray>& gens, Closure closure = {},
                        std::size_t cap = 4000);

RaySet ql_star(const Universe& U, std::size_t x);
RaySet ql_of_set(const Universe& U, const RaySet& s);
RaySet sat_ql(const Universe& U, const RaySet& s);
bool preceq(const Universe& U, std::size_t x, std::size_t y);
bool ql_equiv(const Universe& U, std::size_t x, std::size_t y);

bool is_quasilinear_set(const Universe& U, const RaySet& c);
bool is_convex(const Universe& U, const RaySet& c);

struct Enlargement {
    RaySet result;
    RaySet mother;  // D \ C
};

Enlargement enlargement(const Universe& U, const RaySet& c, const RaySet& d);
RaySet max_enlargement(const Universe& U, const RaySet& c);

using EnlargementPair = std::pair<RaySet, RaySet>;  // (C0, C) with C0 inside C

struct Amalgamation {
    RaySet c0;
    RaySet c;
    RaySet mother;
    bool special = false;
    bool very_special = false;
};

Amalgamation amalgamate(const Universe& U, const std::vector<EnlargementPair>& family);
std::vector<EnlargementPair> atomic_cover(const Universe& U, const RaySet& c1, const RaySet& c);

struct MaxSets {
    std::vector<RaySet> sets;
    std::vector<std::size_t> not_convex;  // indices into sets
};

MaxSets max_ql_sets(const Universe& U, const RaySet& c, std::size_t cap = 100000);
RaySet tilde_c(const Universe& U, const RaySet& c);

struct WitnessTriple {
    Ray y1, y2, z;
};

struct NonconvexWitness {
    WitnessTriple rays;
    Mag lambda0 = 0;
    Scalar q_z;
    CsValue cs_y1, cs_y2, cs_z;
    bool y1_g_isotropic = false, y2_g_isotropic = false, z_g_anisotropic = false;
    bool z_in_interval = false;
    bool z_outside_star = false;
    bool y_in_star = false;

    bool certified() const {
        return cs_y1.is_c0() && cs_y2.is_c0() && cs_z.is_c0() && y1_g_isotropic && y2_g_isotropic &&
               z_g_anisotropic && z_in_interval && z_outside_star && y_in_star;
    }
};

NonconvexWitness nonconvex_witness(const GramForm& f, const Ray& x1, const Ray& x2, const Ray& x3);

struct StarConvexity {
    bool convex = true;
    bool theorem_applies = false;  // dense form or g-anisotropic X
    std::optional<WitnessTriple> witness;
};

StarConvexity star_convexity(const Universe& U, std::size_t x);

nlohmann::json set_to_json(const Universe& U, const RaySet& s);

} // namespace sqf
