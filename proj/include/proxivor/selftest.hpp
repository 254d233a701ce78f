#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace proxivor::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
};

// Runs the full acceptance suite: worked-example reproductions, the
// generated diagram corpus with axiom/uniqueness/oracle sweeps, the lemma
// and regular-set sweeps, and the atlas audits. One line per criterion goes
// to `log`. Deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream& log,
                                            int jobs = 1);

bool all_passed(const std::vector<CriterionResult>& results);

// Seed from the PROXIVOR_SEED environment variable, or the default.
std::uint64_t seed_from_env();

}  // namespace proxivor::selftest
