#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlamp/analytic_noise.hpp"
#include "nlamp/csv.hpp"
#include "nlamp/spectral_filter.hpp"

using namespace nlamp;

namespace {

// Temperature at which hbar * omega / k T == x for omega = 1.
ThermalEnv env_for_unit_omega(double x) { return ThermalEnv(kHbarOverK / x); }

TransferPair half_power() { return make_transfer_pair(0.0, {0.5, 0.5}, {0.5, -0.5}); }

}  // namespace

TEST_CASE("lorentzian resonance and half-width")
{
    const auto on = lorentzian_transfer(5.0, 5.0, 0.3);
    CHECK(on.T == Complex(1.0, 0.0));
    CHECK(on.R == Complex(0.0, 0.0));

    const auto half = lorentzian_transfer(5.15, 5.0, 0.3);
    CHECK(half.transmission() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.reflection() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lorentzian_transfer(2.0, 3.0, 4.0).transmission() == doctest::Approx(0.8).epsilon(1e-15));

    CHECK_THROWS_AS(lorentzian_transfer(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lorentzian_transfer(1.0, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("lorentzian matches the single-pole complex form")
{
    // Oracle: T = k / (i d + k), R = i d / (i d + k) with complex division.
    for (double omega = -3.0; omega <= 7.0; omega += 0.37) {
        const double omega0 = 2.0;
        const double gamma = 0.8;
        const Complex den{0.5 * gamma, omega - omega0};
        const auto tp = lorentzian_transfer(omega, omega0, gamma);
        CHECK(std::abs(tp.T - Complex(0.5 * gamma) / den) < 1e-15);
        CHECK(std::abs(tp.R - Complex(0.0, omega - omega0) / den) < 1e-15);
    }
}

TEST_CASE("unitarity and monotonicity over a scan")
{
    const double omega0 = 1e15;
    const double gamma = 3e12;
    double previous = 2.0;
    for (int i = 0; i <= 10000; ++i) {
        const double omega = omega0 + i * 1e9;
        const auto tp = lorentzian_transfer(omega, omega0, gamma);
        CHECK(std::abs(tp.transmission() + tp.reflection() - 1.0) <= 1e-12);
        if (i > 0) {
            CHECK(tp.transmission() < previous);
        }
        previous = tp.transmission();
        const auto mirror = lorentzian_transfer(omega0 - i * 1e9, omega0, gamma);
        CHECK(mirror.transmission() == doctest::Approx(tp.transmission()).epsilon(1e-12));
    }
}

TEST_CASE("make_transfer_pair rejects lossy pairs")
{
    CHECK_NOTHROW(make_transfer_pair(1.0, {0.6, 0.0}, {0.0, 0.8}));
    CHECK_THROWS_AS(make_transfer_pair(1.0, {0.6, 0.0}, {0.0, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(make_transfer_pair(1.0, {1.0, 0.0}, {1e-4, 0.0}), std::invalid_argument);
}

TEST_CASE("thermal occupancy")
{
    CHECK(bose_occupancy(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bose_occupancy(2 * std::log(2.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const long double oracle = 1.0L / std::expm1(30.0L);
    CHECK(std::abs(bose_occupancy(30.0) / static_cast<double>(oracle) - 1.0) < 1e-12);
    CHECK(std::abs(bose_occupancy(30.0) / std::exp(-30.0) - 1.0) < 1e-6);
    CHECK_THROWS_AS(bose_occupancy(0.0), std::invalid_argument);

    const auto env = env_for_unit_omega(std::log(2.0));
    CHECK(thermal_occupancy(1.0, env) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(thermal_occupancy(-1.0, env), std::invalid_argument);
    CHECK_THROWS_AS(ThermalEnv(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ThermalEnv(-3.0), std::invalid_argument);

    // 300 K at an optical frequency: x is about 64, occupancy about e^-64.
    const ThermalEnv room(300.0);
    const double omega = 2 * std::numbers::pi * 4e14;
    CHECK(room.reduced_energy(omega) == doctest::Approx(kHbarOverK * omega / 300.0));
    CHECK(thermal_occupancy(omega, room) > 0.0);
    CHECK(thermal_occupancy(omega, room) == doctest::Approx(std::exp(-room.reduced_energy(omega))).epsilon(1e-12));
}

TEST_CASE("log occupancy is affine with slope -hbar/kT")
{
    const ThermalEnv env(1.5);
    const double w_lo = 10.0 / (kHbarOverK / 1.5);
    const double w_hi = 40.0 / (kHbarOverK / 1.5);
    // Least-squares slope of log nbar over a uniform grid.
    const int n = 301;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double w = w_lo + (w_hi - w_lo) * i / (n - 1);
        const double y = std::log(thermal_occupancy(w, env));
        sx += w;
        sy += y;
        sxx += w * w;
        sxy += w * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double expected = -kHbarOverK / env.temperature();
    CHECK(std::abs(slope / expected - 1.0) < 1e-6);
}

TEST_CASE("amplification frequency gain")
{
    const auto env = env_for_unit_omega(std::log(2.0));
    CHECK(amplification_frequency_gain(1.0, 1.0, env) == 1.0);
    CHECK(amplification_frequency_gain(1.0, 2.0, env) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto deep = env_for_unit_omega(20.0);
    for (double ratio : {1.1, 1.5, 3.0, 20.0}) {
        const double direct = thermal_occupancy(ratio, deep) / thermal_occupancy(1.0, deep);
        const double asymptotic = std::exp(-20.0 * (ratio - 1.0));
        const double r = amplification_frequency_gain(1.0, ratio, deep);
        CHECK(r == doctest::Approx(direct).epsilon(1e-12));
        CHECK(std::abs(r / asymptotic - 1.0) < 0.01);
    }
    // Stays finite where each occupancy alone would underflow.
    const double tiny = amplification_frequency_gain(1.0, 1.5, env_for_unit_omega(1500.0));
    CHECK(tiny == 0.0);
    CHECK(amplification_frequency_gain(900.0, 1000.0, env_for_unit_omega(1.0)) == doctest::Approx(std::exp(-100.0)));
}

TEST_CASE("filtered output operator means")
{
    const auto sa = make_space(5);
    const auto sc = make_space(6);
    const DiagonalState c_states[] = {fock_state(sc, 0), fock_state(sc, 2), thermal_state(sc, 0.05)};
    const TransferPair on{0.0, {1.0, 0.0}, {0.0, 0.0}};
    for (int n = 0; n <= 2; ++n) {
        for (const auto& c : c_states) {
            const DiagonalState f[] = {fock_state(sa, n), c};
            CHECK(moments(f, filtered_output_operator(sa, sc, on)).mean == doctest::Approx(n));
        }
    }

    const TransferPair off{0.0, {0.0, 0.0}, {0.0, 1.0}};
    const DiagonalState swap[] = {fock_state(sa, 2), fock_state(sc, 1)};
    CHECK(moments(swap, filtered_output_operator(sa, sc, off)).mean == doctest::Approx(1.0));

    const DiagonalState one[] = {fock_state(sa, 1), fock_state(sc, 0)};
    const auto bern = moments(one, filtered_output_operator(sa, sc, half_power()));
    CHECK(bern.mean == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bern.variance == doctest::Approx(0.25).epsilon(1e-14));

    CHECK(filtered_output_operator(sa, sc, on).shape() == Shape{sa, sc});
}

TEST_CASE("filtered output matches a beam-splitter binomial oracle")
{
    // Fock(n) through transmissivity t with vacuum c: Binomial(n, t).
    const auto sa = make_space(7);
    const auto sc = make_space(7);
    for (double t : {0.1, 0.5, 0.9}) {
        const TransferPair tp = make_transfer_pair(0.0, {std::sqrt(t), 0.0}, {0.0, std::sqrt(1 - t)});
        for (int n = 0; n <= 4; ++n) {
            const DiagonalState f[] = {fock_state(sa, n), fock_state(sc, 0)};
            const auto m = moments(f, filtered_output_operator(sa, sc, tp));
            CHECK(m.mean == doctest::Approx(n * t).epsilon(1e-12));
            CHECK(m.variance == doctest::Approx(n * t * (1 - t)).epsilon(1e-10));
        }
    }
}

TEST_CASE("filtered_amplified_stats")
{
    const auto sa = make_space(4);
    const auto sc = make_space(30);
    const TransferPair on{0.0, {1.0, 0.0}, {0.0, 0.0}};
    const NumberStats b{0.7, 1.19};

    const auto perfect = filtered_amplified_stats(on, fock_state(sa, 1), thermal_state(sc, 0.3), 50, b);
    CHECK(perfect.mean == doctest::Approx(0.7 + 50));
    CHECK(perfect.variance == doctest::Approx(1.19));
    CHECK(perfect.variance == doctest::Approx(var_single_mode(50, {1, 0}, b)));

    const TransferPair off{0.0, {0.0, 0.0}, {1.0, 0.0}};
    const auto dark = filtered_amplified_stats(off, fock_state(sa, 1), fock_state(sc, 0), 9, b);
    CHECK(dark.mean == doctest::Approx(0.7));
    CHECK(dark.variance == doctest::Approx(1.19));

    const auto half = filtered_amplified_stats(half_power(), fock_state(sa, 1), fock_state(sc, 0), 2, {0, 0});
    CHECK(half.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(half.variance == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(filtered_amplified_stats(on, fock_state(sa, 1), fock_state(sc, 0), 0, b), std::invalid_argument);
}

TEST_CASE("thermal internal mode adds amplified dark counts")
{
    const auto sa = make_space(4);
    const int s_c = thermal_cutoff(0.4, 1.0, 0);
    const auto sc = make_space(s_c);
    const NumberStats b{0.1, 0.11};
    const auto on = lorentzian_transfer(1.0, 1.0, 0.5);
    const auto detuned = lorentzian_transfer(1.1, 1.0, 0.5);
    for (int G : {1, 5, 20}) {
        const auto clean = filtered_amplified_stats(on, fock_state(sa, 1), thermal_state(sc, 0.4), G, b);
        const auto noisy = filtered_amplified_stats(detuned, fock_state(sa, 1), thermal_state(sc, 0.4), G, b);
        CHECK(noisy.variance > clean.variance);

        // Oracle from normal ordering with N = t a^dag a + r c^dag c + (cross terms):
        // var = t^2 var_a + r^2 var_c + t r (2 n_a n_c + n_a + n_c) for diagonal inputs.
        const double t = detuned.transmission();
        const double r = detuned.reflection();
        const DiagonalState trunc = thermal_state(sc, 0.4);
        const double nc = trunc.stats().mean;
        const double var_c = trunc.stats().variance;
        const double var_f = r * r * var_c + t * r * (2 * nc + 1 + nc);
        CHECK(noisy.variance == doctest::Approx(b.variance + G * G * var_f).epsilon(1e-10));
    }
}

TEST_CASE("filter table parsing")
{
    std::istringstream good("omega,T_re,T_im,R_re,R_im\n1,1,0,0,0\n2,0.6,0,0,0.8\n\n3,0,1,0,0\n");
    const auto rows = read_filter_table(good);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].omega == 2.0);
    CHECK(rows[1].R == Complex(0.0, 0.8));

    std::istringstream lossy("omega,T_re,T_im,R_re,R_im\n1,1,0,0,0\n2,0.6,0,0,0.7\n");
    try {
        read_filter_table(lossy);
        FAIL("expected a unitarity error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }

    std::istringstream ragged("omega,T_re,T_im,R_re,R_im\n1,1,0,0\n");
    CHECK_THROWS_AS(read_filter_table(ragged), std::invalid_argument);
    std::istringstream junk("omega,T_re,T_im,R_re,R_im\n1,x,0,0,0\n");
    CHECK_THROWS_AS(read_filter_table(junk), std::invalid_argument);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_filter_table(empty), std::invalid_argument);
}

TEST_CASE("csv number round trip")
{
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 1.7976931348623157e308}) {
        CHECK(csv::parse_double(csv::format(v)) == v);
    }
    CHECK(csv::format(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv::format(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(std::isinf(csv::parse_double("inf")));
    CHECK(csv::format(100.0) == "100");
    CHECK(csv::format(0.5) == "0.5");
    CHECK(csv::format(12LL) == "12");
    CHECK(csv::split("a,,b") == std::vector<std::string>{"a", "", "b"});
    CHECK(csv::join({"x", "y"}) == "x,y");
    CHECK_THROWS_AS(csv::parse_double("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(csv::parse_double(""), std::invalid_argument);
}
