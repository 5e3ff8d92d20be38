#pragma once

/**
 * @file ray.hpp
 * @brief Rays as normalized magnitude profiles and their max-plus convexity.
 *
 * A ray stores one entry per coordinate: a magnitude, or nullopt for a zero
 * coordinate (written "_").  The largest finite entry is 0.  Zero
 * coordinates behave as -infinity in every max-plus computation.
 */

#include "sqf/form.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sqf {

using Coord = std::optional<Mag>;

class Ray {
public:
    Ray() = default;
    // Normalizes; throws PreconditionError for an all-zero profile.
    explicit Ray(std::vector<Coord> profile);

    std::size_t dim() const { return p_.size(); }
    const Coord& operator[](std::size_t i) const { return p_[i]; }
    const std::vector<Coord>& profile() const { return p_; }
    std::vector<std::size_t> support() const;
    bool integral() const;

    friend bool operator==(const Ray&, const Ray&) = default;
    // Lexicographic, zero coordinates first.
    friend bool operator<(const Ray& a, const Ray& b);

private:
    std::vector<Coord> p_;
};

Ray ray_of(const Vector& x);
Ray basis_ray(std::size_t n, std::size_t i);

// Every tag pattern on the support, lowest pattern all-tangible.
std::vector<Vector> representatives(const Ray& X, Kind k);
Vector tangible_rep(const Ray& X, Kind k);

CsValue cs_rays(const GramForm& f, const Ray& X, const Ray& Y);

enum class GIso { g_isotropic, g_anisotropic };
GIso g_isotropy(const GramForm& f, const Ray& X);
inline bool is_g_isotropic(const GramForm& f, const Ray& X) {
    return g_isotropy(f, X) == GIso::g_isotropic;
}

// normalize(max_j (a_j + P_j)); nullopt shifts drop a generator.
Ray combine(std::span<const Ray> gens, std::span<const Coord> shifts);

// Largest shifts a_j with a_j + P_j <= Z.
std::vector<Coord> principal_shifts(const Ray& Z, std::span<const Ray> gens);

bool hull_member(const Ray& Z, std::span<const Ray> gens);
bool interval_member(const Ray& Z, const Ray& X, const Ray& Y);

struct HullCell {
    std::vector<std::size_t> cell;  // 0-based generator indices
    bool unique = true;             // every generator of the cell is essential
};
std::optional<HullCell> hull_cell(const Ray& Z, std::span<const Ray> gens);

// Rays of [X, Y] covering every combinatorial type relative to f.  Rays in
// `witnesses` add the ties of b(Z(t), W) and the CS thresholds e, c0.
std::vector<Ray> interval_skeleton(const GramForm& f, const Ray& X, const Ray& Y,
                                   std::span<const Ray> witnesses = {});

std::string to_string(const Ray& X);
Ray parse_ray(std::string_view s, Kind k);

nlohmann::json ray_to_json(const Ray& X);
Ray ray_from_json(const nlohmann::json& j, Kind k);

} // namespace sqf
