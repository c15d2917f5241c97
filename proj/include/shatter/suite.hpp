#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shatter {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    unsigned threads = 1;
};

struct CheckOutcome {
    std::string module;
    std::string name;
    std::size_t trials = 0;
    std::size_t skipped = 0;
    std::size_t failures = 0;
    std::string first_failure;
    double seconds = 0.0;

    bool passed() const { return failures == 0; }
};

/// Seeded randomized sweeps over the invariants of every module. Trial t of
/// check c always sees the same instance for a given seed, whatever the thread count.
std::vector<CheckOutcome> run_verify_suite(const SuiteOptions& options);

} // namespace shatter
