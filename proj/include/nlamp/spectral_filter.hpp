#pragma once

// Lossless pre-amplification filtering a_out = T a_in + R c_in, the
// filter-then-amplify pipeline, and Bose-Einstein occupancy of the
// amplification reservoir.

#include <istream>
#include <vector>

#include "nlamp/fock_space.hpp"

namespace nlamp {

/// hbar / k_B in kelvin-seconds (CODATA 2018 exact constants).
inline constexpr double kHbarOverK = 1.054571817e-34 / 1.380649e-23;

struct TransferPair {
    double omega = 0.0;
    Complex T{1.0, 0.0};
    Complex R{0.0, 0.0};

    double transmission() const { return std::norm(T); }
    double reflection() const { return std::norm(R); }
};

/// Validates |T|^2 + |R|^2 = 1 within `tolerance`.
TransferPair make_transfer_pair(double omega, Complex T, Complex R, double tolerance = 1e-9);

/// Single-pole resonance with |T(omega0)| = 1, half power at |omega - omega0| = gamma / 2.
TransferPair lorentzian_transfer(double omega, double omega0, double gamma);

class ThermalEnv {
public:
    explicit ThermalEnv(double temperature);

    double temperature() const { return temperature_; }
    /// hbar omega / k T.
    double reduced_energy(double omega) const;

private:
    double temperature_;
};

/// 1 / (exp(x) - 1) for x = hbar omega / k T > 0.
double bose_occupancy(double reduced_energy);

double thermal_occupancy(double omega, const ThermalEnv& env);

/// nbar(omega_amp) / nbar(omega_in), evaluated without overflow.
double amplification_frequency_gain(double omega_in, double omega_amp, const ThermalEnv& env);

/// a_out^dag a_out on the shape [a, c].
OperatorMatrix filtered_output_operator(const FockSpace& space_a, const FockSpace& space_c, const TransferPair& tp);

/// Output-number statistics of ideal single-mode amplification (gain G) of
/// the filtered mode, with reservoir statistics `b_env`.
NumberStats filtered_amplified_stats(const TransferPair& tp, const DiagonalState& a, const DiagonalState& c, int gain,
                                     const NumberStats& b_env);

/// Reads `omega,T_re,T_im,R_re,R_im` rows (header line required). Throws
/// std::invalid_argument naming the 1-based data row on a unitarity
/// violation beyond 1e-9 or a malformed row.
std::vector<TransferPair> read_filter_table(std::istream& in);

}  // namespace nlamp
