// Acceptance run: one PASS/FAIL line per criterion, failing tallies below it.

#include "sqf/checks.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <set>

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria for the sqf library"};
    sqf::SuiteOptions o;
    std::size_t samples = 0;
    std::vector<int> only;
    bool verbose = false;
    app.add_option("--seed", o.seed, "Seed for every random generator");
    auto* s = app.add_option("--samples", samples, "Override every random sample count");
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 12));
    app.add_flag("-v,--verbose", verbose, "Print every tally");
    CLI11_PARSE(app, argc, argv);
    if (*s) o.samples = samples;

    std::set<int> pick(only.begin(), only.end());
    int failed = 0;
    for (int k = 1; k <= 12; ++k) {
        if (!pick.empty() && !pick.count(k)) continue;
        sqf::Report r = sqf::run_criterion(k, o);
        std::printf("[%2d] %-44s %s  (%.1f s)\n", k, r.title.c_str(), r.passed() ? "PASS" : "FAIL", r.seconds);
        if (verbose) {
            std::cout << sqf::report_to_text(r);
        } else {
            for (const sqf::Tally* t : r.failures()) {
                std::printf("       %s: %zu of %zu violated\n", t->name.c_str(), t->violated, t->checked);
                if (!t->example.empty()) std::printf("         e.g. %s\n", t->example.c_str());
            }
        }
        std::fflush(stdout);
        if (!r.passed()) ++failed;
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
