#pragma once

// Amplification transformations as explicit operators: the Pegg-Barnett
// shift, the nonlinear polar-form output operator, the linear
// (phase-insensitive and phase-sensitive) output number operators and the
// Schrodinger-picture basis map with its absorber step.

#include <random>

#include "nlamp/fock_space.hpp"

namespace nlamp {

/// Unit-modulus phase factor e^{i phi}, nudged by at most a few ulps so that
/// conj(z) * z == 1 exactly in double precision.
Complex unit_phase(double phase);

/// Uniform phase in [0, 2 pi) drawn from a caller-owned engine.
template <class Engine>
double draw_phase(Engine& engine)
{
    std::uniform_real_distribution<double> dist(0.0, 2.0 * 3.14159265358979323846);
    return dist(engine);
}

/// Cyclic lowering operator: S|N> = e^{i phi}|N-1> for N > 0, S|0> = |s>.
struct ShiftOperator {
    FockSpace space;
    double phase;
    OperatorMatrix op;
};

ShiftOperator shift_operator(const FockSpace& space, double phase);

/// b_out = (S (x) 1_a) sqrt(n_b (x) 1 + G 1 (x) n_a) on the shape [b, a].
/// The square root is taken entrywise on the number-basis diagonal.
OperatorMatrix nonlinear_bout(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase);

/// Real-valued overload; rejects non-integer gains.
OperatorMatrix nonlinear_bout(const FockSpace& space_b, const FockSpace& space_a, double gain, double phase);

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y);

// b_out = S sqrt(D) with S one unit-modulus entry per column, so b^dag b and
// [b, b^dag] reduce to reweighting D by |z|^2. These evaluate that structure
// directly; with unit_phase's exact modulus the results carry no phase at all.
OperatorMatrix nonlinear_number_out(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase);
OperatorMatrix nonlinear_commutator(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase);

struct PeggBarnettCheck {
    bool holds = false;
    /// Largest |comm - expected| over all entries.
    double max_deviation = 0.0;
    /// Largest |comm_NN - 1| over the clean region N < s_b - G s_a (all
    /// a-sectors); the region is passed in by the caller via `clean_levels`.
    double clean_region_deviation = 0.0;
};

/// Compares a two-mode commutator [b_out, b_out^dag] on the shape [b, ...]
/// against 1 - (s_b + 1)|s_b><s_b| in every sector of the remaining factors.
/// `clean_levels` bounds the b-levels used for the clean-region report; a
/// negative value means "all levels below s_b".
PeggBarnettCheck check_pegg_barnett(const OperatorMatrix& comm, const FockSpace& space_b, int clean_levels = -1,
                                    double tolerance = 1e-12);

/// a_out^dag a_out for a_out = sqrt(G) a (x) 1 + sqrt(G - 1) 1 (x) b^dag on the
/// shape [a, b].
OperatorMatrix caves_number_out(const FockSpace& space_a, const FockSpace& space_b, double gain);

/// a_out^dag a_out for a_out = sqrt(G) a + sqrt(G - 1) a^dag.
OperatorMatrix phase_sensitive_number_out(const FockSpace& space_a, double gain);

struct CavesCoefficients {
    double signal;  // sqrt(G)
    double idler;   // sqrt(G - 1)
};

CavesCoefficients caves_coefficients(double gain);

/// Raised when |n>|M>|N> -> |n>|M-Gn>|N+Gn> is not realizable (M < G n).
class ConstraintViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct IdealMapRecord {
    int n_in = 0;
    /// Photons left in the input mode after the absorber step.
    int n_after = 0;
    long long M_out = 0;
    long long N_out = 0;
    /// Absorber energy in units of hbar.
    double absorber_energy = 0.0;
    double phase = 0.0;
};

/// Number-state map of the idealized amplifier followed by the absorber step
/// that destroys the n input photons of frequency `omega`.
IdealMapRecord ideal_schrodinger_map(int n, long long M, long long N, int gain, double phase, double omega,
                                     double absorber_energy = 0.0);

}  // namespace nlamp
