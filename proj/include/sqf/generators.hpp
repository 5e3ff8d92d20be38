#pragma once

/**
 * @file generators.hpp
 * @brief Universes used by the path-layer tests and the acceptance run.
 */

#include "sqf/qlpaths.hpp"

#include <random>

namespace sqf {

// Basis rays of Fixture D: the QL-graph is a path on five vertices.
Universe chain_universe();
// The chain plus ray(e2 + e3), which makes (X2, X3) a twin pair.
Universe chain_twin_universe();

struct BandParams {
    std::size_t dim = 6;
    std::size_t width = 1;   // b(i, j) is small for |i - j| <= width
    std::size_t extra = 14;  // overlap rays with support in a window
    int spread = 2;          // overlap coordinates lie in [-spread, 0]
    int far = 6;             // magnitude of b outside the band
};

GramForm band_form(const BandParams& bp, std::mt19937_64& rng);
Universe band_universe(const BandParams& bp, std::mt19937_64& rng);

// Minimal paths of length >= min_len between all ordered pairs, least-ray geodesics.
std::vector<Path> minimal_paths(const Universe& U, std::size_t min_len = 1);

} // namespace sqf
