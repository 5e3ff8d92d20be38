// Property suites at reduced sample counts.

#include "sqf/checks.hpp"

#include "doctest.h"

using namespace sqf;

namespace {

void require_pass(const Report& r) {
    INFO(report_to_text(r));
    CHECK(r.passed());
}

SuiteOptions small(std::uint64_t seed) {
    SuiteOptions o;
    o.seed = seed;
    o.samples = 40;
    return o;
}

} // namespace

TEST_CASE("scalar laws") { require_pass(check_scalar_laws(small(2))); }
TEST_CASE("companion identity") { require_pass(check_companion_identity(small(3))); }
TEST_CASE("CS ratio under rescaling") { require_pass(check_cs_rescaling(small(4))); }
TEST_CASE("pair criterion against the oracle") { require_pass(check_criterion_oracle(small(5))); }
TEST_CASE("hulls and saturations") { require_pass(check_hulls_and_saturations(small(6))); }
TEST_CASE("maximal quasilinear sets") { require_pass(check_maximal_sets(small(7))); }
TEST_CASE("three-ray example") { require_pass(check_example_three_rays(small(8))); }
TEST_CASE("path invariants") { require_pass(check_path_invariants(small(9))); }

TEST_CASE("zero samples still run exhaustive checks") {
    SuiteOptions o;
    o.samples = 0;
    Report r = check_hulls_and_saturations(o);
    std::size_t checked = 0;
    for (const Tally& t : r.tallies) checked += t.checked;
    CHECK(checked > 0);
}

TEST_CASE("fixture universes pass the core suite") {
    for (char name : {'A', 'B', 'C', 'D'})
        for (const Report& r : check_universe(fixture_universe(name), "core", small(10))) require_pass(r);
}

TEST_CASE("unknown suite name is rejected") {
    CHECK_THROWS(check_universe(fixture_universe('A'), "nope", SuiteOptions{}));
}
