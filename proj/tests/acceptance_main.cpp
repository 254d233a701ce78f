// Acceptance suite driver: one pass/fail line per criterion, nonzero exit on
// any failure. PROXIVOR_SEED pins the generated corpora.
#include <iostream>

#include "proxivor/selftest.hpp"

int main() {
    using namespace proxivor::selftest;
    std::uint64_t seed = seed_from_env();
    std::cout << "acceptance suite, seed " << seed << "\n";
    std::vector<CriterionResult> results = run_acceptance(seed, std::cout, 1);
    bool ok = all_passed(results);
    std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
    return ok ? 0 : 1;
}
