#include "nlamp/spectral_filter.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlamp/csv.hpp"
#include "nlamp/detail/two_mode.hpp"

namespace nlamp {

TransferPair make_transfer_pair(double omega, Complex T, Complex R, double tolerance)
{
    const double total = std::norm(T) + std::norm(R);
    if (!(std::abs(total - 1.0) <= tolerance)) {
        throw std::invalid_argument("transfer pair at omega=" + csv::format(omega) + " is not lossless: |T|^2+|R|^2="
                                    + csv::format(total));
    }
    return {omega, T, R};
}

TransferPair lorentzian_transfer(double omega, double omega0, double gamma)
{
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("lorentzian_transfer: gamma must be > 0");
    }
    // T = k / (i d + k), R = i d / (i d + k) with k = gamma/2, d = omega - omega0,
    // written over the common real denominator so T(omega0) = 1 exactly.
    const double k = 0.5 * gamma;
    const double d = omega - omega0;
    const double den = k * k + d * d;
    const Complex T{k * k / den, -k * d / den};
    const Complex R{d * d / den, k * d / den};
    return {omega, T, R};
}

ThermalEnv::ThermalEnv(double temperature)
    : temperature_(temperature)
{
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("ThermalEnv: temperature must be > 0");
    }
}

double ThermalEnv::reduced_energy(double omega) const
{
    if (!(omega > 0.0)) {
        throw std::invalid_argument("frequency must be > 0");
    }
    return kHbarOverK * omega / temperature_;
}

double bose_occupancy(double reduced_energy)
{
    if (!(reduced_energy > 0.0)) {
        throw std::invalid_argument("bose_occupancy: hbar omega / k T must be > 0");
    }
    return 1.0 / std::expm1(reduced_energy);
}

double thermal_occupancy(double omega, const ThermalEnv& env)
{
    return bose_occupancy(env.reduced_energy(omega));
}

double amplification_frequency_gain(double omega_in, double omega_amp, const ThermalEnv& env)
{
    const double x_in = env.reduced_energy(omega_in);
    const double x_amp = env.reduced_energy(omega_amp);
    // expm1(x) = e^x (1 - e^-x)
    return std::exp(x_in - x_amp) * (-std::expm1(-x_in)) / (-std::expm1(-x_amp));
}

OperatorMatrix filtered_output_operator(const FockSpace& space_a, const FockSpace& space_c, const TransferPair& tp)
{
    return detail::two_mode_number_out(annihilation(space_a), annihilation(space_c), tp.T, tp.R);
}

NumberStats filtered_amplified_stats(const TransferPair& tp, const DiagonalState& a, const DiagonalState& c, int gain,
                                     const NumberStats& b_env)
{
    if (gain < 1) {
        throw std::invalid_argument("filtered_amplified_stats: gain must be an integer >= 1");
    }
    const DiagonalState factors[] = {a, c};
    const NumberStats filtered = moments(factors, filtered_output_operator(a.space(), c.space(), tp));
    const double G = gain;
    return {b_env.mean + G * filtered.mean, b_env.variance + G * G * filtered.variance};
}

std::vector<TransferPair> read_filter_table(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("filter table: missing header");
    }
    std::vector<TransferPair> rows;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        ++row;
        const auto fields = csv::split(line);
        if (fields.size() != 5) {
            throw std::invalid_argument("filter table row " + std::to_string(row) + ": expected 5 fields");
        }
        double v[5];
        try {
            for (int i = 0; i < 5; ++i) {
                v[i] = csv::parse_double(fields[static_cast<std::size_t>(i)]);
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("filter table row " + std::to_string(row) + ": " + e.what());
        }
        try {
            rows.push_back(make_transfer_pair(v[0], {v[1], v[2]}, {v[3], v[4]}, 1e-9));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("filter table row " + std::to_string(row) + ": " + e.what());
        }
    }
    return rows;
}

}  // namespace nlamp
