#pragma once

// Truncated bosonic Fock spaces, dense operators on tensor products of them,
// number-diagonal states and exact moment evaluation.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace nlamp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Raised when a truncated space is too small for the state it carries.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number-state space {|0>, ..., |s>} with Pegg-Barnett cutoff s.
class FockSpace {
public:
    explicit FockSpace(int cutoff);

    int cutoff() const { return cutoff_; }
    Eigen::Index dimension() const { return cutoff_ + 1; }

    friend bool operator==(const FockSpace&, const FockSpace&) = default;

private:
    int cutoff_;
};

FockSpace make_space(int cutoff);

using Shape = std::vector<FockSpace>;

Eigen::Index shape_dimension(std::span<const FockSpace> shape);

/// Dense complex matrix acting on the tensor product of the spaces in `shape`.
/// Factor 0 is the most significant index of the Kronecker ordering.
class OperatorMatrix {
public:
    OperatorMatrix(Shape shape, Matrix entries);

    const Shape& shape() const { return shape_; }
    const Matrix& matrix() const { return entries_; }
    Eigen::Index dimension() const { return entries_.rows(); }

    OperatorMatrix adjoint() const;

    OperatorMatrix& operator+=(const OperatorMatrix& rhs);
    OperatorMatrix& operator-=(const OperatorMatrix& rhs);
    OperatorMatrix& operator*=(Complex factor);

    friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
    friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
    friend OperatorMatrix operator*(Complex factor, OperatorMatrix op) { return op *= factor; }
    friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

    /// Largest absolute entry of (this - other).
    double max_abs_difference(const OperatorMatrix& other) const;

private:
    Shape shape_;
    Matrix entries_;
};

OperatorMatrix identity(Shape shape);
OperatorMatrix annihilation(const FockSpace& space);
OperatorMatrix creation(const FockSpace& space);
OperatorMatrix number_op(const FockSpace& space);

/// Kronecker product; the result's shape is lhs.shape() followed by rhs.shape().
OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

/// Lifts a single-factor operator to `full_shape`, with identities on every
/// other factor.
OperatorMatrix embed(const OperatorMatrix& op, std::size_t factor_index, const Shape& full_shape);

/// Block of `op` with factor `factor_index` pinned to number state `level`,
/// as an operator on the remaining factors.
OperatorMatrix restrict_to_level(const OperatorMatrix& op, std::size_t factor_index, int level);

/// (mean, variance) of a number-like observable.
struct NumberStats {
    double mean = 0.0;
    double variance = 0.0;

    NumberStats() = default;
    NumberStats(double mean, double variance);
};

/// Probability vector over the number states of one space.
class DiagonalState {
public:
    /// Accepts any nonnegative vector summing to 1 within 1e-9 and
    /// renormalizes it exactly.
    DiagonalState(FockSpace space, std::vector<double> probs);

    const FockSpace& space() const { return space_; }
    std::span<const double> probs() const { return probs_; }
    double prob(int n) const { return probs_.at(static_cast<std::size_t>(n)); }

    NumberStats stats() const;

private:
    FockSpace space_;
    std::vector<double> probs_;
};

DiagonalState fock_state(const FockSpace& space, int n);

/// Geometric (Bose-Einstein) distribution with mean `nbar`, truncated to the
/// space and renormalized.
DiagonalState thermal_state(const FockSpace& space, double nbar);

/// Mean and variance of `observable` in the product of the given factor states.
/// Exact matrix algebra: mean = tr(rho O), variance = tr(rho O^2) - mean^2.
NumberStats moments(std::span<const DiagonalState> factors, const OperatorMatrix& observable);
NumberStats moments(const DiagonalState& state, const OperatorMatrix& observable);

/// Total probability carried by the `top_k` highest number states.
double leakage(const DiagonalState& state, int top_k);

inline constexpr int kGuardLevels = 3;
inline constexpr double kGuardTolerance = 1e-10;

/// ceil(nbar + gain * max_input + 10 sqrt(var + 1) + 10) for a reservoir
/// with the given stats.
int default_cutoff(const NumberStats& reservoir, double gain, int max_input);

/// Throws TruncationError if the top kGuardLevels levels of `state` carry
/// more than kGuardTolerance probability.
void check_truncation(const DiagonalState& state);

/// Starts from default_cutoff and raises the cutoff until a thermal state of
/// mean `nbar` passes the truncation guard.
int thermal_cutoff(double nbar, double gain, int max_input);

}  // namespace nlamp
