#include "nlamp/analytic_noise.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace nlamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<MechanismKind, std::string_view>, 6> kNames{{
    {MechanismKind::PhaseInsensitive, "PhaseInsensitive"},
    {MechanismKind::PhaseSensitive, "PhaseSensitive"},
    {MechanismKind::SingleMode, "SingleMode"},
    {MechanismKind::GModes, "GModes"},
    {MechanismKind::MultiStepSingleMode, "MultiStepSingleMode"},
    {MechanismKind::MultiStepMultiMode, "MultiStepMultiMode"},
}};

void require_linear_gain(double gain)
{
    if (!(gain >= 1.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("linear gain must be a finite real >= 1");
    }
}

void require_integer_gain(double gain)
{
    if (!(gain >= 1.0) || gain != std::floor(gain) || gain > 9.0e15) {
        throw std::invalid_argument("nonlinear gain must be an integer >= 1");
    }
}

int require_power(double gain, int step_gain)
{
    require_integer_gain(gain);
    if (step_gain < 2) {
        throw std::invalid_argument("multi-step gain per step must be an integer >= 2");
    }
    const auto steps = integer_log(static_cast<long long>(gain), step_gain);
    if (!steps) {
        throw std::invalid_argument("gain " + std::to_string(static_cast<long long>(gain))
                                    + " is not a positive power of " + std::to_string(step_gain));
    }
    return *steps;
}

double ratio_or_inf(double num, double den)
{
    return den == 0.0 ? kInf : num / den;
}

}  // namespace

std::string_view to_string(MechanismKind kind)
{
    for (const auto& [k, name] : kNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<MechanismKind> parse_mechanism(std::string_view name)
{
    for (const auto& [k, n] : kNames) {
        if (n == name) {
            return k;
        }
    }
    if (name == "MultiStepSingle") {
        return MechanismKind::MultiStepSingleMode;
    }
    if (name == "MultiStepMulti") {
        return MechanismKind::MultiStepMultiMode;
    }
    return std::nullopt;
}

bool is_linear(MechanismKind kind)
{
    return kind == MechanismKind::PhaseInsensitive || kind == MechanismKind::PhaseSensitive;
}

bool is_multi_step(MechanismKind kind)
{
    return kind == MechanismKind::MultiStepSingleMode || kind == MechanismKind::MultiStepMultiMode;
}

std::optional<int> integer_log(long long value, long long base)
{
    if (base < 2 || value < base) {
        return std::nullopt;
    }
    int steps = 0;
    while (value % base == 0) {
        value /= base;
        ++steps;
    }
    if (value != 1) {
        return std::nullopt;
    }
    return steps;
}

Mechanism::Mechanism(MechanismKind kind, double gain, int step_gain, int steps)
    : kind_(kind)
    , gain_(gain)
    , step_gain_(step_gain)
    , steps_(steps)
{
}

Mechanism Mechanism::phase_insensitive(double gain)
{
    require_linear_gain(gain);
    return {MechanismKind::PhaseInsensitive, gain, 0, 0};
}

Mechanism Mechanism::phase_sensitive(double gain)
{
    require_linear_gain(gain);
    return {MechanismKind::PhaseSensitive, gain, 0, 0};
}

Mechanism Mechanism::single_mode(long long gain)
{
    require_integer_gain(static_cast<double>(gain));
    return {MechanismKind::SingleMode, static_cast<double>(gain), 0, 0};
}

Mechanism Mechanism::g_modes(long long gain)
{
    require_integer_gain(static_cast<double>(gain));
    return {MechanismKind::GModes, static_cast<double>(gain), 0, 0};
}

namespace {

double checked_power(int base, int exponent)
{
    if (base < 2) {
        throw std::invalid_argument("multi-step gain per step must be an integer >= 2");
    }
    if (exponent < 1) {
        throw std::invalid_argument("multi-step models need at least one step");
    }
    long long total = 1;
    for (int i = 0; i < exponent; ++i) {
        if (total > (1LL << 52) / base) {
            throw std::invalid_argument("multi-step total gain overflows");
        }
        total *= base;
    }
    return static_cast<double>(total);
}

}  // namespace

Mechanism Mechanism::multi_step_single(int step_gain, int steps)
{
    return {MechanismKind::MultiStepSingleMode, checked_power(step_gain, steps), step_gain, steps};
}

Mechanism Mechanism::multi_step_multi(int step_gain, int steps)
{
    return {MechanismKind::MultiStepMultiMode, checked_power(step_gain, steps), step_gain, steps};
}

Mechanism Mechanism::make(MechanismKind kind, double gain, int step_gain)
{
    switch (kind) {
    case MechanismKind::PhaseInsensitive:
        return phase_insensitive(gain);
    case MechanismKind::PhaseSensitive:
        return phase_sensitive(gain);
    case MechanismKind::SingleMode:
        require_integer_gain(gain);
        return single_mode(static_cast<long long>(gain));
    case MechanismKind::GModes:
        require_integer_gain(gain);
        return g_modes(static_cast<long long>(gain));
    case MechanismKind::MultiStepSingleMode:
        return multi_step_single(step_gain, require_power(gain, step_gain));
    case MechanismKind::MultiStepMultiMode:
        return multi_step_multi(step_gain, require_power(gain, step_gain));
    }
    throw std::invalid_argument("unknown mechanism");
}

double var_caves(double gain, const NumberStats& a, const NumberStats& b)
{
    require_linear_gain(gain);
    const double G = gain;
    return G * G * a.variance + (G - 1) * (G - 1) * b.variance
        + G * (G - 1) * (2 * a.mean * b.mean + a.mean + b.mean + 1);
}

double var_phase_sensitive(double gain, const NumberStats& a)
{
    require_linear_gain(gain);
    const double G = gain;
    return (6 * G * (G - 1) + 1) * a.variance + 2 * G * (G - 1) * (a.mean * a.mean + a.mean + 1);
}

double var_single_mode(double gain, const NumberStats& a, const NumberStats& b)
{
    require_integer_gain(gain);
    return b.variance + gain * gain * a.variance;
}

double var_g_modes(double gain, const NumberStats& a, const NumberStats& b)
{
    require_integer_gain(gain);
    return gain * b.variance + gain * gain * a.variance;
}

double var_multistep_single(double gain, int step_gain, const NumberStats& a, const NumberStats& b)
{
    require_power(gain, step_gain);
    const double g = step_gain;
    return (gain * gain - 1) / (g * g - 1) * b.variance + gain * gain * a.variance;
}

double var_multistep_multi(double gain, int step_gain, const NumberStats& a, const NumberStats& b)
{
    require_power(gain, step_gain);
    const double g = step_gain;
    return gain * (gain - 1) / (g - 1) * b.variance + gain * gain * a.variance;
}

double reservoir_noise_factor(const Mechanism& mechanism)
{
    const double G = mechanism.gain();
    const double g = mechanism.step_gain();
    switch (mechanism.kind()) {
    case MechanismKind::PhaseInsensitive:
        return (G - 1) * (G - 1);
    case MechanismKind::PhaseSensitive:
        return 0.0;
    case MechanismKind::SingleMode:
        return 1.0;
    case MechanismKind::GModes:
        return G;
    case MechanismKind::MultiStepSingleMode:
        return (G * G - 1) / (g * g - 1);
    case MechanismKind::MultiStepMultiMode:
        return G * (G - 1) / (g - 1);
    }
    return 0.0;
}

double snr(const Mechanism& mechanism, int n_a, double dn_b)
{
    if (n_a < 1) {
        throw std::invalid_argument("snr: n_a must be >= 1");
    }
    if (!(dn_b >= 0.0)) {
        throw std::invalid_argument("snr: dn_b must be >= 0");
    }
    const double G = mechanism.gain();
    const double g = mechanism.step_gain();
    const double n = n_a;
    switch (mechanism.kind()) {
    case MechanismKind::PhaseInsensitive:
        return ratio_or_inf(G * n, (G - 1) * dn_b);
    case MechanismKind::PhaseSensitive:
        return ratio_or_inf((2 * G - 1) * n, std::sqrt(2 * G * (G - 1)));
    case MechanismKind::SingleMode:
        return ratio_or_inf(G * n, dn_b);
    case MechanismKind::GModes:
        return ratio_or_inf(std::sqrt(G) * n, dn_b);
    case MechanismKind::MultiStepSingleMode:
        return ratio_or_inf(G * std::sqrt(g * g - 1) * n, std::sqrt(G * G - 1) * dn_b);
    case MechanismKind::MultiStepMultiMode:
        return ratio_or_inf(std::sqrt(G * (g - 1)) * n, std::sqrt(G - 1) * dn_b);
    }
    throw std::invalid_argument("snr: unknown mechanism");
}

SnrCurve snr_curve(MechanismKind kind, std::span<const double> grid, int n_a, double dn_b, int step_gain)
{
    SnrCurve curve{kind, step_gain, n_a, dn_b, {}, {}};
    curve.grid.reserve(grid.size());
    curve.snr.reserve(grid.size());
    for (double G : grid) {
        curve.grid.push_back(G);
        curve.snr.push_back(snr(Mechanism::make(kind, G, step_gain), n_a, dn_b));
    }
    return curve;
}

}  // namespace nlamp
