#pragma once

/**
 * @file checks.hpp
 * @brief Property suites behind the acceptance run and `sqf check`.
 *
 * Each suite returns a Report made of named tallies.  A tally counts the
 * instances it looked at and the ones that violated the property, and keeps
 * the first violation as a readable example.
 */

#include "sqf/qlpaths.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sqf {

struct Tally {
    std::string name;
    std::size_t checked = 0;
    std::size_t violated = 0;
    std::string example;
    // A required tally with nothing checked counts as failed.
    bool required = true;

    void record(bool ok, const std::function<std::string()>& describe = {});
    bool passed() const { return violated == 0 && (checked > 0 || !required); }
};

struct Report {
    int criterion = 0;  // 0 for suites outside the numbered criteria
    std::string title;
    std::vector<Tally> tallies;
    std::vector<std::string> notes;
    double seconds = 0;

    Tally& tally(std::string_view name, bool required = true);
    bool passed() const;
    std::vector<const Tally*> failures() const;
};

nlohmann::json report_to_json(const Report& r);
std::string report_to_text(const Report& r);

struct SuiteOptions {
    std::uint64_t seed = 1;
    // Overrides every random sample count; 0 leaves only exhaustive and skeleton checks.
    std::optional<std::size_t> samples;

    std::size_t count(std::size_t dflt) const { return samples ? *samples : dflt; }
};

// ---- numbered criteria ----------------------------------------------------

Report check_scalar_laws(const SuiteOptions& o);          // 1
Report check_companion_identity(const SuiteOptions& o);   // 2
Report check_cs_rescaling(const SuiteOptions& o);         // 3
Report check_criterion_oracle(const SuiteOptions& o);     // 4
Report check_hull_cs(const SuiteOptions& o);              // 5
Report check_hulls_and_saturations(const SuiteOptions& o);  // 6
Report check_maximal_sets(const SuiteOptions& o);         // 7
Report check_nonconvex_star(const SuiteOptions& o);       // 8
Report check_path_layer(const SuiteOptions& o);           // 9
Report check_anchors_and_flocks(const SuiteOptions& o);   // 10
Report check_domination(const SuiteOptions& o);           // 11
Report check_example_three_rays(const SuiteOptions& o);   // 12

Report run_criterion(int k, const SuiteOptions& o);

// ---- further invariants ---------------------------------------------------

// Bridges, saturation substitutions, enlargement cofinality, the path row of
// anchor diagrams, twin anchors and entrance modifications.
Report check_path_invariants(const SuiteOptions& o);

// Universe-level invariants on a caller-supplied universe (suites "core",
// "convexity" and "paths" restricted to what the universe supports).
std::vector<Report> check_universe(const Universe& U, std::string_view suite, const SuiteOptions& o);

// ---- generated instances shared by the suites -----------------------------

// Basis rays plus their pairwise interval skeletons.
Universe fixture_universe(char name);

// Universes for the path criteria: the chain, the chain with one twin ray,
// and `bands` band universes of at most 40 rays.
std::vector<Universe> path_universes(std::uint64_t seed, std::size_t bands);

// Random QL-walk of length n (consecutive rays adjacent, loops allowed).
std::optional<Path> random_walk(const Universe& U, std::size_t n, std::mt19937_64& rng);

} // namespace sqf
