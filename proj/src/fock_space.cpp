#include "nlamp/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace nlamp {

namespace {

void require_same_shape(const Shape& lhs, const Shape& rhs, const char* what)
{
    if (lhs != rhs) {
        throw std::invalid_argument(std::string(what) + ": operator shapes differ");
    }
}

}  // namespace

FockSpace::FockSpace(int cutoff)
    : cutoff_(cutoff)
{
    if (cutoff < 0) {
        throw std::invalid_argument("FockSpace: cutoff must be nonnegative, got " + std::to_string(cutoff));
    }
}

FockSpace make_space(int cutoff)
{
    return FockSpace(cutoff);
}

Eigen::Index shape_dimension(std::span<const FockSpace> shape)
{
    Eigen::Index dim = 1;
    for (const auto& space : shape) {
        dim *= space.dimension();
    }
    return dim;
}

OperatorMatrix::OperatorMatrix(Shape shape, Matrix entries)
    : shape_(std::move(shape))
    , entries_(std::move(entries))
{
    if (shape_.empty()) {
        throw std::invalid_argument("OperatorMatrix: empty shape");
    }
    const auto dim = shape_dimension(shape_);
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw std::invalid_argument("OperatorMatrix: matrix side " + std::to_string(entries_.rows()) + "x"
                                    + std::to_string(entries_.cols()) + " does not match shape dimension "
                                    + std::to_string(dim));
    }
}

OperatorMatrix OperatorMatrix::adjoint() const
{
    return OperatorMatrix(shape_, entries_.adjoint());
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs)
{
    require_same_shape(shape_, rhs.shape_, "operator+");
    entries_ += rhs.entries_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs)
{
    require_same_shape(shape_, rhs.shape_, "operator-");
    entries_ -= rhs.entries_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex factor)
{
    entries_ *= factor;
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs)
{
    require_same_shape(lhs.shape_, rhs.shape_, "operator*");
    return OperatorMatrix(lhs.shape_, lhs.entries_ * rhs.entries_);
}

double OperatorMatrix::max_abs_difference(const OperatorMatrix& other) const
{
    require_same_shape(shape_, other.shape_, "max_abs_difference");
    if (entries_.size() == 0) {
        return 0.0;
    }
    return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

OperatorMatrix identity(Shape shape)
{
    const auto dim = shape_dimension(shape);
    return OperatorMatrix(std::move(shape), Matrix::Identity(dim, dim));
}

OperatorMatrix annihilation(const FockSpace& space)
{
    const auto dim = space.dimension();
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return OperatorMatrix({space}, std::move(m));
}

OperatorMatrix creation(const FockSpace& space)
{
    return annihilation(space).adjoint();
}

OperatorMatrix number_op(const FockSpace& space)
{
    const auto dim = space.dimension();
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        m(n, n) = static_cast<double>(n);
    }
    return OperatorMatrix({space}, std::move(m));
}

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs)
{
    const Matrix& a = lhs.matrix();
    const Matrix& b = rhs.matrix();
    const auto rb = b.rows();
    const auto cb = b.cols();
    Matrix out = Matrix::Zero(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij != Complex{}) {
                out.block(i * rb, j * cb, rb, cb) = aij * b;
            }
        }
    }
    Shape shape = lhs.shape();
    shape.insert(shape.end(), rhs.shape().begin(), rhs.shape().end());
    return OperatorMatrix(std::move(shape), std::move(out));
}

OperatorMatrix embed(const OperatorMatrix& op, std::size_t factor_index, const Shape& full_shape)
{
    if (factor_index >= full_shape.size()) {
        throw std::out_of_range("embed: factor index " + std::to_string(factor_index) + " out of range for "
                                + std::to_string(full_shape.size()) + " factors");
    }
    if (op.shape().size() != 1 || op.shape().front() != full_shape[factor_index]) {
        throw std::invalid_argument("embed: operator does not act on factor " + std::to_string(factor_index));
    }

    std::optional<OperatorMatrix> acc;
    for (std::size_t k = 0; k < full_shape.size(); ++k) {
        OperatorMatrix factor = (k == factor_index) ? op : identity({full_shape[k]});
        acc = acc ? kron(*acc, factor) : std::move(factor);
    }
    return *acc;
}

OperatorMatrix restrict_to_level(const OperatorMatrix& op, std::size_t factor_index, int level)
{
    const Shape& shape = op.shape();
    if (shape.size() < 2 || factor_index >= shape.size()) {
        throw std::out_of_range("restrict_to_level: need a multi-factor operator and a valid factor index");
    }
    if (level < 0 || level > shape[factor_index].cutoff()) {
        throw std::out_of_range("restrict_to_level: level outside the factor's cutoff");
    }
    Eigen::Index inner = 1;
    for (std::size_t k = factor_index + 1; k < shape.size(); ++k) {
        inner *= shape[k].dimension();
    }
    const Eigen::Index factor_dim = shape[factor_index].dimension();
    const Eigen::Index outer = op.dimension() / (inner * factor_dim);

    std::vector<Eigen::Index> rows;
    rows.reserve(static_cast<std::size_t>(outer * inner));
    for (Eigen::Index o = 0; o < outer; ++o) {
        for (Eigen::Index i = 0; i < inner; ++i) {
            rows.push_back((o * factor_dim + level) * inner + i);
        }
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix block(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            block(r, c) = op.matrix()(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(c)]);
        }
    }
    Shape rest = shape;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(factor_index));
    return OperatorMatrix(std::move(rest), std::move(block));
}

NumberStats::NumberStats(double mean, double variance)
    : mean(mean)
    , variance(variance)
{
    if (!(variance >= 0.0)) {
        throw std::invalid_argument("NumberStats: variance must be nonnegative");
    }
}

DiagonalState::DiagonalState(FockSpace space, std::vector<double> probs)
    : space_(space)
    , probs_(std::move(probs))
{
    if (static_cast<Eigen::Index>(probs_.size()) != space_.dimension()) {
        throw std::invalid_argument("DiagonalState: expected " + std::to_string(space_.dimension())
                                    + " probabilities, got " + std::to_string(probs_.size()));
    }
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("DiagonalState: probabilities must be finite and nonnegative");
        }
    }
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("DiagonalState: probabilities sum to " + std::to_string(total));
    }
    for (double& p : probs_) {
        p /= total;
    }
}

NumberStats DiagonalState::stats() const
{
    double mean = 0.0;
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        mean += static_cast<double>(n) * probs_[n];
    }
    double var = 0.0;
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        const double d = static_cast<double>(n) - mean;
        var += d * d * probs_[n];
    }
    return {mean, var};
}

DiagonalState fock_state(const FockSpace& space, int n)
{
    if (n < 0 || n > space.cutoff()) {
        throw std::out_of_range("fock_state: n=" + std::to_string(n) + " outside 0.."
                                + std::to_string(space.cutoff()));
    }
    std::vector<double> probs(static_cast<std::size_t>(space.dimension()), 0.0);
    probs[static_cast<std::size_t>(n)] = 1.0;
    return DiagonalState(space, std::move(probs));
}

DiagonalState thermal_state(const FockSpace& space, double nbar)
{
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw std::invalid_argument("thermal_state: nbar must be finite and nonnegative");
    }
    std::vector<double> probs(static_cast<std::size_t>(space.dimension()), 0.0);
    if (nbar == 0.0) {
        probs[0] = 1.0;
        return DiagonalState(space, std::move(probs));
    }
    const double ratio = nbar / (nbar + 1.0);
    double term = 1.0;
    double total = 0.0;
    for (double& p : probs) {
        p = term;
        total += term;
        term *= ratio;
    }
    for (double& p : probs) {
        p /= total;
    }
    return DiagonalState(space, std::move(probs));
}

NumberStats moments(std::span<const DiagonalState> factors, const OperatorMatrix& observable)
{
    if (factors.size() != observable.shape().size()) {
        throw std::invalid_argument("moments: state has " + std::to_string(factors.size())
                                    + " factors, observable has " + std::to_string(observable.shape().size()));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].space() != observable.shape()[k]) {
            throw std::invalid_argument("moments: factor " + std::to_string(k) + " space mismatch");
        }
    }

    std::vector<double> rho{1.0};
    for (const auto& f : factors) {
        std::vector<double> next;
        next.reserve(rho.size() * f.probs().size());
        for (double r : rho) {
            for (double p : f.probs()) {
                next.push_back(r * p);
            }
        }
        rho = std::move(next);
    }

    const Matrix& o = observable.matrix();
    const auto dim = o.rows();
    Complex first{};
    Complex second{};
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double w = rho[static_cast<std::size_t>(i)];
        if (w == 0.0) {
            continue;
        }
        first += w * o(i, i);
        // (O^2)_ii = sum_j O_ij O_ji
        second += w * (o.row(i).transpose().cwiseProduct(o.col(i))).sum();
    }
    const double mean = first.real();
    const double var = std::max(0.0, second.real() - mean * mean);
    return {mean, var};
}

NumberStats moments(const DiagonalState& state, const OperatorMatrix& observable)
{
    return moments(std::span<const DiagonalState>(&state, 1), observable);
}

double leakage(const DiagonalState& state, int top_k)
{
    const int dim = static_cast<int>(state.space().dimension());
    if (top_k < 0 || top_k > dim) {
        throw std::out_of_range("leakage: top_k out of range");
    }
    double total = 0.0;
    for (int n = dim - top_k; n < dim; ++n) {
        total += state.prob(n);
    }
    return total;
}

int default_cutoff(const NumberStats& reservoir, double gain, int max_input)
{
    return static_cast<int>(std::ceil(reservoir.mean + gain * max_input
                                      + 10.0 * std::sqrt(reservoir.variance + 1.0) + 10.0));
}

void check_truncation(const DiagonalState& state)
{
    const int top = std::min<int>(kGuardLevels, static_cast<int>(state.space().dimension()));
    const double leak = leakage(state, top);
    if (leak > kGuardTolerance) {
        throw TruncationError("truncation guard: leakage " + std::to_string(leak) + " in the top "
                              + std::to_string(top) + " levels exceeds 1e-10 at cutoff "
                              + std::to_string(state.space().cutoff()));
    }
}

int thermal_cutoff(double nbar, double gain, int max_input)
{
    int s = default_cutoff({nbar, nbar * (nbar + 1.0)}, gain, max_input);
    for (;;) {
        const auto state = thermal_state(FockSpace(s), nbar);
        const int top = std::min<int>(kGuardLevels, static_cast<int>(state.space().dimension()));
        if (leakage(state, top) <= kGuardTolerance) {
            return s;
        }
        ++s;
    }
}

}  // namespace nlamp
