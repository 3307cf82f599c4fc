#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vfrac {

struct VerifyFailure {
    std::string property;
    std::uint64_t seed = 0; // substream seed reproducing the trial
    std::string detail;     // serialized inputs
};

struct PropertyRun {
    std::string name;
    int trials = 0;
    int failures = 0;
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials_requested = 0; // 0 = per-property defaults
    long long trials_run = 0;
    std::vector<PropertyRun> properties;
    std::vector<VerifyFailure> failures;
    long long wall_ms = 0;

    bool ok() const { return failures.empty(); }
};

// Suites: forest, v, cocycle, wreath, aut, classify, all.
const std::vector<std::string>& verify_suites();

// Runs every property of the suite. `trials` overrides the per-property
// trial counts of the seeded properties when positive. The report depends
// only on (suite, seed, trials). Throws input_error for an unknown suite.
VerifyReport run_verify(std::string_view suite, std::uint64_t seed, int trials);

std::string format_report(const VerifyReport& report);

} // namespace vfrac
