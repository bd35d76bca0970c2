#include "nlamp/amp_channels.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nlamp/detail/two_mode.hpp"

namespace nlamp {

Complex unit_phase(double phase)
{
    const double re0 = std::cos(phase);
    const double im0 = std::sin(phase);
    if (re0 * re0 + im0 * im0 == 1.0) {
        return {re0, im0};
    }
    auto step = [](double x, int k) {
        const double toward = k > 0 ? 2.0 : -2.0;
        for (int i = 0; i < std::abs(k); ++i) {
            x = std::nextafter(x, toward);
        }
        return x;
    };
    // Perturb the larger component by a few ulps, re-solve the smaller one and
    // search its neighbourhood (where one ulp moves the norm far less than
    // one ulp of 1.0) for an exact unit norm.
    const bool re_big = std::abs(re0) >= std::abs(im0);
    const double big0 = re_big ? re0 : im0;
    const double small0 = re_big ? im0 : re0;
    for (int dx : {0, -1, 1, -2, 2, -3, 3}) {
        const double big = step(big0, dx);
        const double rem = 1.0 - big * big;
        if (rem < 0.0) {
            continue;
        }
        const double small_t = std::copysign(std::sqrt(rem), small0);
        for (int k = 0; k <= 128; ++k) {
            const int dy = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
            const double small = step(small_t, dy);
            if (big * big + small * small == 1.0) {
                return re_big ? Complex{big, small} : Complex{small, big};
            }
        }
    }
    return {re0, im0};
}

ShiftOperator shift_operator(const FockSpace& space, double phase)
{
    const auto dim = space.dimension();
    const Complex z = unit_phase(phase);
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        m(n - 1, n) = z;
    }
    m(dim - 1, 0) = 1.0;
    return {space, phase, OperatorMatrix({space}, std::move(m))};
}

OperatorMatrix nonlinear_bout(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase)
{
    if (gain < 1) {
        throw std::invalid_argument("nonlinear_bout: gain must be an integer >= 1, got " + std::to_string(gain));
    }
    const Shape shape{space_b, space_a};
    const OperatorMatrix shift = embed(shift_operator(space_b, phase).op, 0, shape);

    // sqrt(n_b + G n_a) is diagonal in the product number basis, so right
    // multiplication scales columns.
    const Eigen::Index dim_a = space_a.dimension();
    Matrix out = shift.matrix();
    for (Eigen::Index col = 0; col < out.cols(); ++col) {
        const auto n_b = static_cast<double>(col / dim_a);
        const auto n_a = static_cast<double>(col % dim_a);
        out.col(col) *= std::sqrt(n_b + gain * n_a);
    }
    return OperatorMatrix(shape, std::move(out));
}

OperatorMatrix nonlinear_bout(const FockSpace& space_b, const FockSpace& space_a, double gain, double phase)
{
    if (!(gain >= 1.0) || gain != std::floor(gain) || gain > 1e9) {
        throw std::invalid_argument("nonlinear_bout: gain must be an integer >= 1");
    }
    return nonlinear_bout(space_b, space_a, static_cast<int>(gain), phase);
}

namespace {

struct ShiftedDiagonal {
    Shape shape;
    std::vector<Eigen::Index> row;  // S column k -> its only nonzero row
    std::vector<double> weight;     // D_k |S_{row(k), k}|^2
    std::vector<double> d;
};

ShiftedDiagonal shifted_diagonal(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase)
{
    if (gain < 1) {
        throw std::invalid_argument("nonlinear_bout: gain must be an integer >= 1, got " + std::to_string(gain));
    }
    const Complex z = unit_phase(phase);
    const Eigen::Index dim_b = space_b.dimension();
    const Eigen::Index dim_a = space_a.dimension();
    ShiftedDiagonal out{{space_b, space_a}, {}, {}, {}};
    const auto n = static_cast<std::size_t>(dim_b * dim_a);
    out.row.resize(n);
    out.weight.resize(n);
    out.d.resize(n);
    for (Eigen::Index k = 0; k < dim_b * dim_a; ++k) {
        const Eigen::Index n_b = k / dim_a;
        const Eigen::Index n_a = k % dim_a;
        const auto i = static_cast<std::size_t>(k);
        out.d[i] = static_cast<double>(n_b) + gain * static_cast<double>(n_a);
        out.row[i] = (n_b == 0 ? dim_b - 1 : n_b - 1) * dim_a + n_a;
        out.weight[i] = out.d[i] * (n_b == 0 ? 1.0 : std::norm(z));
    }
    return out;
}

}  // namespace

OperatorMatrix nonlinear_number_out(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase)
{
    const auto sd = shifted_diagonal(space_b, space_a, gain, phase);
    const auto dim = static_cast<Eigen::Index>(sd.d.size());
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        m(k, k) = sd.weight[static_cast<std::size_t>(k)];
    }
    return OperatorMatrix(sd.shape, std::move(m));
}

OperatorMatrix nonlinear_commutator(const FockSpace& space_b, const FockSpace& space_a, int gain, double phase)
{
    const auto sd = shifted_diagonal(space_b, space_a, gain, phase);
    const auto dim = static_cast<Eigen::Index>(sd.d.size());
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const auto i = static_cast<std::size_t>(k);
        m(sd.row[i], sd.row[i]) += sd.weight[i];
        m(k, k) -= sd.weight[i];
    }
    return OperatorMatrix(sd.shape, std::move(m));
}

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y)
{
    return x * y - y * x;
}

PeggBarnettCheck check_pegg_barnett(const OperatorMatrix& comm, const FockSpace& space_b, int clean_levels,
                                    double tolerance)
{
    const Shape& shape = comm.shape();
    if (shape.empty() || shape.front() != space_b) {
        throw std::invalid_argument("check_pegg_barnett: first factor must be the b-mode space");
    }
    const Eigen::Index rest = comm.dimension() / space_b.dimension();
    const int s = space_b.cutoff();
    const int clean = clean_levels < 0 ? s : std::min(clean_levels, s);

    PeggBarnettCheck result;
    const Matrix& m = comm.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto level = static_cast<int>(r / rest);
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            Complex expected{};
            if (r == c) {
                expected = level == s ? 1.0 - (s + 1.0) : 1.0;
            }
            const double dev = std::abs(m(r, c) - expected);
            result.max_deviation = std::max(result.max_deviation, dev);
            if (r == c && level < clean) {
                result.clean_region_deviation = std::max(result.clean_region_deviation, dev);
            }
        }
    }
    result.holds = result.max_deviation <= tolerance;
    return result;
}

CavesCoefficients caves_coefficients(double gain)
{
    if (!(gain >= 1.0)) {
        throw std::invalid_argument("linear amplifier gain must be >= 1");
    }
    return {std::sqrt(gain), std::sqrt(gain - 1.0)};
}

OperatorMatrix caves_number_out(const FockSpace& space_a, const FockSpace& space_b, double gain)
{
    const auto [signal, idler] = caves_coefficients(gain);
    return detail::two_mode_number_out(annihilation(space_a), creation(space_b), signal, idler);
}

OperatorMatrix phase_sensitive_number_out(const FockSpace& space_a, double gain)
{
    const auto [signal, idler] = caves_coefficients(gain);
    const OperatorMatrix a_out = Complex(signal) * annihilation(space_a) + Complex(idler) * creation(space_a);
    return a_out.adjoint() * a_out;
}

IdealMapRecord ideal_schrodinger_map(int n, long long M, long long N, int gain, double phase, double omega,
                                     double absorber_energy)
{
    if (gain < 1) {
        throw std::invalid_argument("ideal_schrodinger_map: gain must be an integer >= 1");
    }
    if (n < 0 || M < 0 || N < 0) {
        throw std::invalid_argument("ideal_schrodinger_map: occupation numbers must be nonnegative");
    }
    const long long transferred = static_cast<long long>(gain) * n;
    if (M < transferred) {
        throw ConstraintViolation("ideal_schrodinger_map: reservoir 1 holds " + std::to_string(M)
                                  + " excitations but " + std::to_string(transferred)
                                  + " must be transferred (requires M >= G n)");
    }
    IdealMapRecord rec;
    rec.n_in = n;
    rec.n_after = 0;
    rec.M_out = M - transferred;
    rec.N_out = N + transferred;
    rec.absorber_energy = absorber_energy + n * omega;
    rec.phase = phase;
    return rec;
}

}  // namespace nlamp
