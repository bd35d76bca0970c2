#pragma once

// Self-check suite run by `nlamp verify`: operator identities, oracle
// agreement between closed forms and explicit matrices, SNR orderings and
// filter properties. Every check is deterministic given its options.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nlamp::verify {

struct Options {
    /// Fock cutoff for the linear-amplifier and nonlinear experiments; the
    /// leakage heuristic picks one when unset. An explicit cutoff is never
    /// enlarged: if it is too small the truncation guard fails the run.
    std::optional<int> cutoff;
    /// Amplifier gain used by the experiments (an integer >= 1).
    int gain = 2;
    /// Phase of the shift operator; drawn from the seed when unset.
    std::optional<double> fixed_phase;
    std::uint64_t seed = 0;
};

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    double phase = 0.0;
    int cutoff = 0;
    /// Output-number moments of the nonlinear amplifier on the reference
    /// state; independent of the phase.
    double nonlinear_mean = 0.0;
    double nonlinear_variance = 0.0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::vector<const CheckResult*> failures() const;
};

/// Phase used for `options`: the fixed one, or a uniform draw on [0, 2 pi)
/// from trial stream 0 of the seed.
double resolve_phase(const Options& options);

/// Throws std::invalid_argument for unusable options (gain < 1, cutoff < 0).
Report run_suite(const Options& options);

}  // namespace nlamp::verify
