#include "sqf/generators.hpp"

namespace sqf {

namespace {

std::vector<Ray> basis(std::size_t n) {
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < n; ++i) rays.push_back(basis_ray(n, i));
    return rays;
}

} // namespace

Universe chain_universe() { return Universe(fixture('D'), basis(5)); }

Universe chain_twin_universe() {
    auto rays = basis(5);
    rays.push_back(Ray({std::nullopt, Mag(0), Mag(0), std::nullopt, std::nullopt}));
    return Universe(fixture('D'), rays);
}

GramForm band_form(const BandParams& bp, std::mt19937_64& rng) {
    Kind k = Kind::dense;
    std::uniform_int_distribution<int> diag(0, 1), near(-1, 1);
    std::vector<Scalar> d;
    for (std::size_t i = 0; i < bp.dim; ++i) d.push_back(Scalar::tangible(diag(rng), k));
    GramForm f(k, d);
    for (std::size_t i = 0; i < bp.dim; ++i)
        for (std::size_t j = i + 1; j < bp.dim; ++j)
            f.set_cross(i, j, Scalar::tangible(j - i <= bp.width ? near(rng) : bp.far, k));
    return f;
}

Universe band_universe(const BandParams& bp, std::mt19937_64& rng) {
    GramForm f = band_form(bp, rng);
    auto rays = basis(bp.dim);
    std::uniform_int_distribution<std::size_t> start(0, bp.dim - 1), len(1, 3);
    std::uniform_int_distribution<int> mag(-bp.spread, 0);
    for (std::size_t e = 0; e < bp.extra; ++e) {
        std::size_t a = start(rng), l = len(rng);
        std::vector<Coord> c(bp.dim);
        for (std::size_t i = a; i < std::min(bp.dim, a + l); ++i) c[i] = Mag(mag(rng));
        rays.emplace_back(c);
    }
    return Universe(f, rays);
}

std::vector<Path> minimal_paths(const Universe& U, std::size_t min_len) {
    std::vector<Path> out;
    for (std::size_t a = 0; a < U.size(); ++a)
        for (std::size_t b = 0; b < U.size(); ++b) {
            if (a == b) continue;
            auto p = minimal_path(U, a, b);
            if (p && p->size() >= min_len + 1) out.push_back(*p);
        }
    return out;
}

} // namespace sqf
