#pragma once

// Seeded Monte Carlo photon counting. Every model's output is a closed-form
// combination of independent reservoir draws plus the amplified signal
// G * n_a, so sample variances can be checked against the analytic formulas.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlamp/fock_space.hpp"

namespace nlamp::mc {

/// Counter-based stream: the k-th word of trial t under seed s depends only
/// on (s, t, k), so trials can run in any order or in parallel.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next();
    /// Uniform on (0, 1].
    double uniform_open_closed();
    /// Uniform on [0, 1).
    double uniform();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

struct FockReservoir {
    long long n = 0;
};
struct ThermalReservoir {
    double nbar = 0.0;
};
struct EmpiricalReservoir {
    std::vector<double> probs;
};

class ReservoirSpec {
public:
    using Distribution = std::variant<FockReservoir, ThermalReservoir, EmpiricalReservoir>;

    static ReservoirSpec fock(long long n);
    static ReservoirSpec thermal(double nbar);
    static ReservoirSpec empirical(std::vector<double> probs);

    const Distribution& distribution() const { return dist_; }
    const NumberStats& stats() const { return stats_; }
    /// Compact text form: fock(3), thermal(0.5), empirical(0.25;0.75).
    std::string label() const;

private:
    ReservoirSpec(Distribution dist, NumberStats stats, std::vector<double> cdf, double log_ratio);

    Distribution dist_;
    NumberStats stats_;
    std::vector<double> cdf_;
    double log_ratio_;

    friend long long sample_reservoir(const ReservoirSpec&, TrialStream&);
};

/// Inverse of ReservoirSpec::label().
ReservoirSpec parse_reservoir(std::string_view text);

/// One draw; thermal uses the untruncated geometric law via inverse CDF.
long long sample_reservoir(const ReservoirSpec& spec, TrialStream& stream);

namespace model {
struct SingleMode {
    int gain = 1;
};
struct GModes {
    int gain = 1;
};
struct MultiStepSingle {
    int step_gain = 2;
    int steps = 1;
};
struct MultiStepMulti {
    int step_gain = 2;
    int steps = 1;
};
/// G * n_max reservoir modes; each detected photon adds one excitation to G of them.
struct Multiplexed {
    int gain = 1;
    int max_photons = 1;
};
/// G fluorescence excitations per absorbed photon, spread over `cavity_modes` modes.
struct Shelving {
    int gain = 1;
    int cavity_modes = 1;
};
}  // namespace model

using Model = std::variant<model::SingleMode, model::GModes, model::MultiStepSingle, model::MultiStepMulti,
                           model::Multiplexed, model::Shelving>;

std::string model_name(const Model& model);
long long total_gain(const Model& model);
/// Step gain g for multi-step models, 0 otherwise.
int step_gain(const Model& model);
/// Number of steps N for multi-step models, 0 otherwise.
int step_count(const Model& model);
/// Number of independent reservoir draws per trial.
long long reservoir_draws(const Model& model);
/// Throws std::invalid_argument on inconsistent parameters.
void validate(const Model& model);

struct ScenarioSpec {
    Model model;
    int input_n_a = 0;
    ReservoirSpec reservoir = ReservoirSpec::fock(0);
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

void validate(const ScenarioSpec& spec);

/// Exact power sums of integer trial outputs; merging is order-independent.
class MomentAccumulator {
public:
    void add(long long x);
    void merge(const MomentAccumulator& other);

    std::uint64_t count() const { return count_; }
    __int128 power_sum(int k) const { return sums_[k - 1]; }

    friend bool operator==(const MomentAccumulator&, const MomentAccumulator&) = default;

private:
    std::uint64_t count_ = 0;
    __int128 sums_[4] = {0, 0, 0, 0};
};

struct SampleStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    /// Unbiased sample variance.
    double variance = 0.0;
    /// Standard error of `variance` from the fourth central moment.
    double std_error_of_variance = 0.0;

    double std_error_of_mean() const;
    friend bool operator==(const SampleStats&, const SampleStats&) = default;
};

SampleStats finalize(const MomentAccumulator& acc);

/// Output of a single trial.
long long trial_output(const ScenarioSpec& spec, std::uint64_t trial);

/// Accumulates trials [first, first + count) of `spec`.
MomentAccumulator accumulate_trials(const ScenarioSpec& spec, std::uint64_t first, std::uint64_t count,
                                    unsigned threads = 0);

SampleStats run_scenario(const ScenarioSpec& spec, unsigned threads = 0);
SampleStats run_shelving(const ScenarioSpec& spec, unsigned threads = 0);
SampleStats run_multiplexed(int gain, int n, int max_photons, const ReservoirSpec& reservoir, std::uint64_t trials,
                            std::uint64_t seed, unsigned threads = 0);

/// Analytic output variance of the scenario with fixed n_a (input variance 0).
double analytic_variance(const ScenarioSpec& spec);
/// Analytic mean output: reservoir_draws-weighted background + G n_a.
double analytic_mean(const ScenarioSpec& spec);

/// (MC variance - analytic) / SE; 0 when both agree exactly with zero SE.
double variance_z_score(const SampleStats& stats, double analytic);

}  // namespace nlamp::mc
