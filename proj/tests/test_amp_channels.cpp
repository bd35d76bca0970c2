#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "nlamp/amp_channels.hpp"
#include "test_support.hpp"

using namespace nlamp;
using nlamp::testing::max_abs;

TEST_CASE("shift operator action")
{
    const Matrix s1 = shift_operator(make_space(1), 0.0).op.matrix();
    Matrix expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK(max_abs(s1 - expected) == 0.0);

    const Matrix s3 = shift_operator(make_space(3), 0.0).op.matrix();
    CHECK(s3(1, 2) == Complex(1.0));
    CHECK(s3(3, 0) == Complex(1.0));
    CHECK((s3.array() != Complex{}).count() == 4);

    const double phi = 0.7;
    const Matrix sp = shift_operator(make_space(4), phi).op.matrix();
    for (int n = 1; n <= 4; ++n) {
        CHECK(std::abs(sp(n - 1, n) - std::polar(1.0, phi)) < 1e-15);
    }
    CHECK(sp(4, 0) == Complex(1.0));
}

TEST_CASE("shift operator is unitary")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
    for (int s = 0; s <= 30; s += 3) {
        const auto space = make_space(s);
        const Matrix m = shift_operator(space, unif(rng)).op.matrix();
        const Matrix id = Matrix::Identity(space.dimension(), space.dimension());
        CHECK(max_abs(m.adjoint() * m - id) <= 1e-12);
        CHECK(max_abs(m * m.adjoint() - id) <= 1e-12);
    }
}

TEST_CASE("unit_phase has exactly unit modulus")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
    for (int i = 0; i < 10000; ++i) {
        const double phi = unif(rng);
        const Complex z = unit_phase(phi);
        CHECK(z.real() * z.real() + z.imag() * z.imag() == 1.0);
        // Forcing the modulus costs angle accuracy of order ulp / |smaller component|.
        const double small = std::min(std::abs(std::cos(phi)), std::abs(std::sin(phi)));
        const double err = std::abs(std::remainder(std::arg(z) - phi, 2 * std::numbers::pi));
        CHECK(err * std::max(small, 1e-8) < 1e-15);
    }
    for (double phi : {0.0, 1.0, std::numbers::pi, 1e-3, 1e-6, 1e-9, std::numbers::pi / 2 + 1e-5}) {
        const Complex z = unit_phase(phi);
        CHECK(z.real() * z.real() + z.imag() * z.imag() == 1.0);
    }
    CHECK(unit_phase(1.0) == std::polar(1.0, 1.0));
    CHECK(unit_phase(std::numbers::pi) == Complex(std::cos(std::numbers::pi), std::sin(std::numbers::pi)));
}

TEST_CASE("nonlinear output operator reproduces n_b + G n_a exactly")
{
    for (int s_a = 0; s_a <= 6; s_a += 2) {
        for (int s_b = 0; s_b <= 20; s_b += 5) {
            for (int G = 1; G <= 4; ++G) {
                const auto sb = make_space(s_b);
                const auto sa = make_space(s_a);
                const Shape shape{sb, sa};
                const OperatorMatrix b = nonlinear_bout(sb, sa, G, 0.4);
                const OperatorMatrix target =
                    embed(number_op(sb), 0, shape) + Complex(G) * embed(number_op(sa), 1, shape);
                CHECK((b.adjoint() * b).max_abs_difference(target) <= 1e-12);
            }
        }
    }
}

TEST_CASE("nonlinear output in the vacuum sector is a phased ladder operator")
{
    const auto sb = make_space(6);
    const OperatorMatrix b = nonlinear_bout(sb, make_space(0), 1, 1.3);
    const Matrix ladder = annihilation(sb).matrix();
    // Off the wrap-around entry (which multiplies sqrt(0)), magnitudes match the ladder.
    CHECK(max_abs(b.matrix().cwiseAbs() - ladder.cwiseAbs()) < 1e-15);
}

TEST_CASE("Pegg-Barnett commutator in the single-mode sector")
{
    const auto sb = make_space(3);
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 1, 1, 1, -3;

    const Matrix exact = nonlinear_commutator(sb, make_space(0), 1, 0.0).matrix();
    CHECK(max_abs(exact - expected) == 0.0);
    const auto check = check_pegg_barnett(OperatorMatrix({sb, make_space(0)}, exact), sb);
    CHECK(check.holds);
    CHECK(check.max_deviation == 0.0);
    // Relative to the identity, the only deviation is -(s + 1) at (3, 3).
    CHECK(exact(3, 3) - Complex(1.0) == Complex(-4.0));

    // Dense products agree up to sqrt(n)^2 rounding.
    const OperatorMatrix b = nonlinear_bout(sb, make_space(0), 1, 0.0);
    CHECK(max_abs(commutator(b, b.adjoint()).matrix() - expected) < 1e-14);
    for (double phi : {1.0, std::numbers::pi, 5.5}) {
        CHECK(max_abs(nonlinear_commutator(sb, make_space(0), 1, phi).matrix() - expected) == 0.0);
    }
}

TEST_CASE("structured products match the dense ones")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
    for (int G = 1; G <= 4; ++G) {
        const auto sb = make_space(9);
        const auto sa = make_space(2);
        const double phi = unif(rng);
        const OperatorMatrix b = nonlinear_bout(sb, sa, G, phi);
        CHECK(nonlinear_number_out(sb, sa, G, phi).max_abs_difference(b.adjoint() * b) < 1e-12);
        CHECK(nonlinear_commutator(sb, sa, G, phi).max_abs_difference(commutator(b, b.adjoint())) < 1e-12);
    }
}

TEST_CASE("every a-sector carries the same Pegg-Barnett correction")
{
    // [S D S^dag - D] with D = n_b + G n_a diagonal: the G n_a shift cancels
    // below the top b-level and the wrap-around gives G n_a - (s_b + G n_a).
    const auto sb = make_space(5);
    const auto sa = make_space(3);
    const OperatorMatrix b = nonlinear_bout(sb, sa, 3, 2.1);
    const OperatorMatrix comm = commutator(b, b.adjoint());
    for (int n_a = 0; n_a <= 3; ++n_a) {
        const Matrix sector = restrict_to_level(comm, 1, n_a).matrix();
        Matrix expected = Matrix::Identity(6, 6);
        expected(5, 5) = -5.0;
        CHECK(max_abs(sector - expected) < 1e-12);
    }
}

TEST_CASE("check_pegg_barnett")
{
    const auto sb = make_space(3);
    CHECK_FALSE(check_pegg_barnett(identity({sb}), sb).holds);
    CHECK(check_pegg_barnett(identity({sb}), sb).max_deviation == doctest::Approx(4.0));

    const auto sb30 = make_space(30);
    const auto sa2 = make_space(2);
    const OperatorMatrix b = nonlinear_bout(sb30, sa2, 2, 0.0);
    const auto check = check_pegg_barnett(commutator(b, b.adjoint()), sb30, 30 - 2 * 2);
    CHECK(check.holds);
    CHECK(check.clean_region_deviation <= 1e-12);

    CHECK_THROWS_AS(check_pegg_barnett(identity({sa2}), sb30), std::invalid_argument);
}

TEST_CASE("nonlinear_bout rejects non-integer or sub-unit gain")
{
    CHECK_THROWS_AS(nonlinear_bout(make_space(2), make_space(1), 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(nonlinear_bout(make_space(2), make_space(1), 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(nonlinear_bout(make_space(2), make_space(1), 0.5, 0.0), std::invalid_argument);
    CHECK_NOTHROW(nonlinear_bout(make_space(2), make_space(1), 2.0, 0.0));
}

TEST_CASE("output number diagonal is bitwise phase invariant")
{
    const auto sb = make_space(25);
    const auto sa = make_space(3);
    const Eigen::VectorXcd ref_diag = nonlinear_number_out(sb, sa, 3, 0.0).matrix().diagonal();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
    std::vector<double> phases{1.0, std::numbers::pi, 4.2, 5.999};
    for (int i = 0; i < 50; ++i) {
        phases.push_back(unif(rng));
    }
    for (double phi : phases) {
        const Eigen::VectorXcd diag = nonlinear_number_out(sb, sa, 3, phi).matrix().diagonal();
        CHECK((diag.array() == ref_diag.array()).all());
    }
    for (double phi : {1.0, std::numbers::pi}) {
        const OperatorMatrix b = nonlinear_bout(sb, sa, 3, phi);
        const OperatorMatrix dense = b.adjoint() * b;
        CHECK(dense.max_abs_difference(nonlinear_number_out(sb, sa, 3, 0.0)) < 1e-12);
    }
}

TEST_CASE("commutator")
{
    std::mt19937_64 rng(17);
    const auto space = make_space(4);
    const OperatorMatrix x({space}, nlamp::testing::random_matrix(rng, 5));
    const OperatorMatrix y({space}, nlamp::testing::random_matrix(rng, 5));
    CHECK(max_abs(commutator(identity({space}), x).matrix()) == 0.0);
    CHECK(std::abs(commutator(x, y).matrix().trace()) < 1e-10);

    const auto s2 = make_space(2);
    const Matrix c = commutator(annihilation(s2), creation(s2)).matrix();
    Matrix expected = Matrix::Zero(3, 3);
    expected.diagonal() << 1, 1, -2;
    CHECK(max_abs(c - expected) < 1e-15);

    CHECK_THROWS_AS(commutator(x, identity({s2})), std::invalid_argument);
}

TEST_CASE("truncated ladder commutator is the identity off the top level")
{
    for (int s = 1; s <= 12; ++s) {
        const auto space = make_space(s);
        const Matrix c = commutator(annihilation(space), creation(space)).matrix();
        Matrix expected = Matrix::Identity(s + 1, s + 1);
        expected(s, s) = -static_cast<double>(s);
        CHECK(max_abs(c - expected) < 1e-13);
    }
}

TEST_CASE("Caves output number operator")
{
    const auto sa = make_space(4);
    const auto sb = make_space(5);
    const Shape shape{sa, sb};
    CHECK(caves_number_out(sa, sb, 1.0).max_abs_difference(embed(number_op(sa), 0, shape)) < 1e-15);

    // Expansion agrees with the explicit a_out^dag a_out product.
    for (double G : {1.0, 1.5, 2.0, 3.7}) {
        const OperatorMatrix a_out = Complex(std::sqrt(G)) * embed(annihilation(sa), 0, shape)
            + Complex(std::sqrt(G - 1)) * embed(creation(sb), 1, shape);
        CHECK(caves_number_out(sa, sb, G).max_abs_difference(a_out.adjoint() * a_out) < 1e-12);
    }

    const auto sa12 = make_space(12);
    const auto sb12 = make_space(12);
    const DiagonalState input[] = {fock_state(sa12, 1), fock_state(sb12, 0)};
    const auto stats = moments(input, caves_number_out(sa12, sb12, 2.0));
    CHECK(std::abs(stats.variance - 4.0) < 1e-8);
    CHECK(std::abs(stats.mean - 3.0) < 1e-8);

    CHECK_THROWS_AS(caves_number_out(sa, sb, 0.99), std::invalid_argument);
}

TEST_CASE("phase-sensitive output number operator")
{
    const auto s = make_space(20);
    CHECK(phase_sensitive_number_out(s, 1.0).max_abs_difference(number_op(s)) < 1e-13);

    const auto stats = moments(fock_state(s, 0), phase_sensitive_number_out(s, 2.0));
    CHECK(std::abs(stats.variance - 4.0) < 1e-8);
    CHECK(std::abs(stats.mean - 1.0) < 1e-8);

    CHECK_THROWS_AS(phase_sensitive_number_out(s, 0.0), std::invalid_argument);
}

TEST_CASE("Caves coefficients preserve the commutator")
{
    for (double G : {1.0, 1.0001, 1.5, 2.0, 3.0, 17.25, 1e3, 1e6}) {
        const auto [signal, idler] = caves_coefficients(G);
        CHECK(signal * signal - idler * idler == doctest::Approx(1.0).epsilon(1e-12 * G));
    }
}

TEST_CASE("linear amplifier commutator is the identity well below the cutoff")
{
    const auto sa = make_space(20);
    const auto sb = make_space(20);
    const Shape shape{sa, sb};
    const double G = 2.5;
    const OperatorMatrix a_out = Complex(std::sqrt(G)) * embed(annihilation(sa), 0, shape)
        + Complex(std::sqrt(G - 1)) * embed(creation(sb), 1, shape);
    const Matrix c = commutator(a_out, a_out.adjoint()).matrix();
    // Entries whose both mode levels sit at least 10 below the cutoff.
    for (int na = 0; na <= 10; ++na) {
        for (int nb = 0; nb <= 10; ++nb) {
            const int idx = na * 21 + nb;
            CHECK(std::abs(c(idx, idx) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("ideal Schrodinger map examples")
{
    const auto r = ideal_schrodinger_map(1, 5, 0, 3, 0.25, 2.0);
    CHECK(r.M_out == 2);
    CHECK(r.N_out == 3);
    CHECK(r.n_after == 0);
    CHECK(r.absorber_energy == 2.0);
    CHECK(r.phase == 0.25);

    const auto idle = ideal_schrodinger_map(0, 7, 4, 100, 0.0, 1.0);
    CHECK(idle.M_out == 7);
    CHECK(idle.N_out == 4);
    CHECK(idle.absorber_energy == 0.0);

    CHECK_THROWS_AS(ideal_schrodinger_map(2, 5, 0, 3, 0.0, 1.0), ConstraintViolation);
}

TEST_CASE("ideal map conserves reservoir excitations and is injective")
{
    std::set<std::tuple<int, long long, long long>> images;
    int admissible = 0;
    for (int G = 1; G <= 5; ++G) {
        images.clear();
        for (int n = 0; n <= 3; ++n) {
            for (long long M = 0; M <= 20; ++M) {
                for (long long N = 0; N <= 20; ++N) {
                    if (M < static_cast<long long>(G) * n) {
                        CHECK_THROWS_AS(ideal_schrodinger_map(n, M, N, G, 0.0, 1.0), ConstraintViolation);
                        continue;
                    }
                    const auto r = ideal_schrodinger_map(n, M, N, G, 0.0, 1.0);
                    CHECK(r.M_out + r.N_out == M + N);
                    CHECK(r.N_out - N == static_cast<long long>(G) * n);
                    CHECK(images.emplace(r.n_in, r.M_out, r.N_out).second);
                    ++admissible;
                }
            }
        }
    }
    CHECK(admissible > 0);
}
