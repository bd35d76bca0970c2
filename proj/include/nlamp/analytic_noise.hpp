#pragma once

// Closed-form output-number variances and signal-to-noise ratios for linear
// and nonlinear amplification mechanisms.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlamp/fock_space.hpp"

namespace nlamp {

enum class MechanismKind {
    PhaseInsensitive,
    PhaseSensitive,
    SingleMode,
    GModes,
    MultiStepSingleMode,
    MultiStepMultiMode,
};

std::string_view to_string(MechanismKind kind);
std::optional<MechanismKind> parse_mechanism(std::string_view name);
bool is_linear(MechanismKind kind);
bool is_multi_step(MechanismKind kind);

/// Returns N with base^N == value exactly, if any N >= 1 exists.
std::optional<int> integer_log(long long value, long long base);

/// A validated amplification mechanism. Linear mechanisms take any real
/// G >= 1; nonlinear ones need an integer G, and multi-step ones G = g^N.
class Mechanism {
public:
    static Mechanism phase_insensitive(double gain);
    static Mechanism phase_sensitive(double gain);
    static Mechanism single_mode(long long gain);
    static Mechanism g_modes(long long gain);
    static Mechanism multi_step_single(int step_gain, int steps);
    static Mechanism multi_step_multi(int step_gain, int steps);

    /// Builds `kind` at total gain G; for multi-step kinds G must be a power
    /// of `step_gain`.
    static Mechanism make(MechanismKind kind, double gain, int step_gain = 0);

    MechanismKind kind() const { return kind_; }
    double gain() const { return gain_; }
    int step_gain() const { return step_gain_; }
    int steps() const { return steps_; }

private:
    Mechanism(MechanismKind kind, double gain, int step_gain, int steps);

    MechanismKind kind_;
    double gain_;
    int step_gain_;
    int steps_;
};

double var_caves(double gain, const NumberStats& a, const NumberStats& b);
double var_phase_sensitive(double gain, const NumberStats& a);
double var_single_mode(double gain, const NumberStats& a, const NumberStats& b);
double var_g_modes(double gain, const NumberStats& a, const NumberStats& b);
double var_multistep_single(double gain, int step_gain, const NumberStats& a, const NumberStats& b);
double var_multistep_multi(double gain, int step_gain, const NumberStats& a, const NumberStats& b);

/// Prefactor of the reservoir variance in each mechanism's output variance.
double reservoir_noise_factor(const Mechanism& mechanism);

/// Signal (output minus the n_a = 0 background) over the output standard
/// deviation, for a fixed photon number n_a. Linear mechanisms return their
/// upper bound. Returns +inf when the noise vanishes.
double snr(const Mechanism& mechanism, int n_a, double dn_b);

struct SnrCurve {
    MechanismKind kind;
    int step_gain = 0;
    int n_a = 1;
    double dn_b = 1.0;
    std::vector<double> grid;
    std::vector<double> snr;
};

SnrCurve snr_curve(MechanismKind kind, std::span<const double> grid, int n_a, double dn_b, int step_gain = 0);

}  // namespace nlamp
