#include "nlamp/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "nlamp/amp_channels.hpp"
#include "nlamp/analytic_noise.hpp"
#include "nlamp/csv.hpp"
#include "nlamp/fock_space.hpp"
#include "nlamp/mc_engine.hpp"
#include "nlamp/spectral_filter.hpp"

namespace nlamp::verify {

namespace {

constexpr double kReservoirNbar = 1.0;
constexpr int kMaxInput = 2;

std::string fmt(double v) { return csv::format(v); }

double rel_err(double got, double want)
{
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

class Suite {
public:
    explicit Suite(Report& report)
        : report_(report)
    {
    }

    void check(const std::string& module, const std::string& name, const std::function<std::string(bool&)>& body)
    {
        CheckResult r{module, name, false, {}};
        try {
            r.detail = body(r.passed);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        report_.checks.push_back(std::move(r));
    }

private:
    Report& report_;
};

void fock_checks(Suite& s)
{
    s.check("fock_core", "number operator equals a^dag a", [](bool& ok) {
        const auto space = make_space(20);
        const double dev = number_op(space).max_abs_difference(creation(space) * annihilation(space));
        ok = dev <= 1e-12;
        return "max deviation " + fmt(dev);
    });
    s.check("fock_core", "thermal state moments", [](bool& ok) {
        const auto st = thermal_state(make_space(80), kReservoirNbar).stats();
        const double dm = std::abs(st.mean - kReservoirNbar);
        const double dv = std::abs(st.variance - kReservoirNbar * (kReservoirNbar + 1));
        ok = dm <= 1e-9 && dv <= 1e-9;
        return "mean " + fmt(st.mean) + ", variance " + fmt(st.variance);
    });
    s.check("fock_core", "embedded operators on different modes commute", [](bool& ok) {
        const Shape sh{make_space(3), make_space(4)};
        const OperatorMatrix x = embed(annihilation(sh[0]), 0, sh);
        const OperatorMatrix y = embed(creation(sh[1]), 1, sh);
        const double dev = (x * y - y * x).max_abs_difference(OperatorMatrix(sh, Matrix::Zero(20, 20)));
        ok = dev == 0.0;
        return "max |[x, y]| " + fmt(dev);
    });
}

void nonlinear_checks(Suite& s, Report& report, const Options& opt)
{
    const int G = opt.gain;
    const double phi = report.phase;

    s.check("amp_channels", "shift operator is unitary", [&](bool& ok) {
        const auto m = shift_operator(make_space(15), phi).op;
        const double dev = (m.adjoint() * m).max_abs_difference(identity({make_space(15)}));
        ok = dev <= 1e-12;
        return "max |S^dag S - 1| " + fmt(dev);
    });
    s.check("amp_channels", "nonlinear output reproduces n_b + G n_a", [&](bool& ok) {
        const auto sb = make_space(20);
        const auto sa = make_space(4);
        const Shape sh{sb, sa};
        const OperatorMatrix b = nonlinear_bout(sb, sa, G, phi);
        const OperatorMatrix target = embed(number_op(sb), 0, sh) + Complex(G) * embed(number_op(sa), 1, sh);
        const double dev = (b.adjoint() * b).max_abs_difference(target);
        ok = dev <= 1e-12;
        return "G=" + std::to_string(G) + ", max deviation " + fmt(dev);
    });
    s.check("amp_channels", "Pegg-Barnett commutator, single-mode sector", [&](bool& ok) {
        const auto sb = make_space(3);
        const auto comm = nonlinear_commutator(sb, make_space(0), 1, phi);
        Matrix expected = Matrix::Zero(4, 4);
        expected.diagonal() << 1, 1, 1, -3;
        const double dev = comm.max_abs_difference(OperatorMatrix(comm.shape(), expected));
        ok = dev == 0.0;
        return "diag(1,1,1,-3) deviation " + fmt(dev);
    });
    s.check("amp_channels", "Pegg-Barnett commutator, clean region", [&](bool& ok) {
        const auto sb = make_space(30);
        const auto sa = make_space(2);
        const OperatorMatrix b = nonlinear_bout(sb, sa, 2, phi);
        const auto res = check_pegg_barnett(commutator(b, b.adjoint()), sb, 30 - 2 * 2);
        ok = res.clean_region_deviation <= 1e-12 && res.holds;
        return "clean " + fmt(res.clean_region_deviation) + ", full " + fmt(res.max_deviation);
    });
    s.check("amp_channels", "output moments are phase independent", [&](bool& ok) {
        const int cutoff = report.cutoff;
        const auto sb = make_space(cutoff);
        const auto sa = make_space(cutoff);
        const OperatorMatrix at_phi = nonlinear_number_out(sb, sa, G, phi);
        const OperatorMatrix at_zero = nonlinear_number_out(sb, sa, G, 0.0);
        const bool same = (at_phi.matrix().diagonal().array() == at_zero.matrix().diagonal().array()).all();
        const DiagonalState states[] = {thermal_state(sb, kReservoirNbar), fock_state(sa, 1)};
        const NumberStats m = moments(states, at_phi);
        report.nonlinear_mean = m.mean;
        report.nonlinear_variance = m.variance;
        // Fock input: variance is the reservoir's alone (single-mode law).
        const double want = var_single_mode(G, {1.0, 0.0}, states[0].stats());
        ok = same && rel_err(m.variance, want) <= 1e-12;
        return "mean " + fmt(m.mean) + ", variance " + fmt(m.variance) + (same ? "" : ", diagonal differs");
    });
    s.check("amp_channels", "ideal Schrodinger map conserves and shifts", [](bool& ok) {
        ok = true;
        std::set<std::tuple<int, long long, long long>> images;
        int admissible = 0;
        for (int g = 1; g <= 5; ++g) {
            images.clear();
            for (int n = 0; n <= 3; ++n) {
                for (long long M = 0; M <= 20; ++M) {
                    for (long long N = 0; N <= 20; ++N) {
                        if (M < static_cast<long long>(g) * n) {
                            try {
                                ideal_schrodinger_map(n, M, N, g, 0.0, 1.0);
                                ok = false;
                            } catch (const ConstraintViolation&) {
                            }
                            continue;
                        }
                        const auto r = ideal_schrodinger_map(n, M, N, g, 0.0, 1.0);
                        ++admissible;
                        ok = ok && r.M_out + r.N_out == M + N && r.N_out - N == static_cast<long long>(g) * n;
                        ok = ok && images.insert({r.n_in, r.M_out, r.N_out}).second;
                    }
                }
            }
        }
        return std::to_string(admissible) + " admissible inputs";
    });
}

void linear_checks(Suite& s, const Report& report, const Options& opt)
{
    const double G = opt.gain;
    const auto space = make_space(report.cutoff);
    const DiagonalState reservoir = thermal_state(space, kReservoirNbar);

    s.check("amp_channels", "linear two-mode variance matches closed form", [&](bool& ok) {
        const OperatorMatrix n_out = caves_number_out(space, space, G);
        double worst = 0.0;
        for (int n = 0; n <= kMaxInput; ++n) {
            const DiagonalState in = fock_state(space, n);
            const DiagonalState states[] = {in, reservoir};
            const double got = moments(states, n_out).variance;
            worst = std::max(worst, rel_err(got, var_caves(G, in.stats(), reservoir.stats())));
        }
        const DiagonalState thermal_in[] = {thermal_state(space, 0.5), reservoir};
        worst = std::max(worst, rel_err(moments(thermal_in, n_out).variance,
                                        var_caves(G, thermal_in[0].stats(), reservoir.stats())));
        ok = worst <= 1e-8;
        return "max relative error " + fmt(worst);
    });
    s.check("amp_channels", "phase-sensitive variance matches closed form", [&](bool& ok) {
        const OperatorMatrix n_out = phase_sensitive_number_out(space, G);
        double worst = 0.0;
        for (int n = 0; n <= kMaxInput; ++n) {
            const DiagonalState in = fock_state(space, n);
            worst = std::max(worst, rel_err(moments(in, n_out).variance, var_phase_sensitive(G, in.stats())));
        }
        worst = std::max(worst, rel_err(moments(reservoir, n_out).variance,
                                        var_phase_sensitive(G, reservoir.stats())));
        ok = worst <= 1e-8;
        return "max relative error " + fmt(worst);
    });
    s.check("amp_channels", "linear commutator is 1 below the cutoff", [&](bool& ok) {
        const auto small = make_space(6);
        const Shape sh{small, small};
        const auto [cs, ci] = caves_coefficients(G);
        const OperatorMatrix a_out =
            Complex(cs) * embed(annihilation(small), 0, sh) + Complex(ci) * embed(creation(small), 1, sh);
        const Matrix comm = commutator(a_out, a_out.adjoint()).matrix();
        double dev = 0.0;
        for (Eigen::Index r = 0; r < comm.rows(); ++r) {
            if (r / 7 == 6 || r % 7 == 6) {
                continue;
            }
            for (Eigen::Index c = 0; c < comm.cols(); ++c) {
                dev = std::max(dev, std::abs(comm(r, c) - Complex(r == c ? 1.0 : 0.0)));
            }
        }
        ok = dev <= 1e-12;
        return "max deviation " + fmt(dev);
    });
    s.check("fock_core", "moments insensitive to a larger cutoff", [&](bool& ok) {
        const auto bigger = make_space(report.cutoff + 5);
        const double v0 = moments(reservoir, phase_sensitive_number_out(space, G)).variance;
        const double v1 =
            moments(thermal_state(bigger, kReservoirNbar), phase_sensitive_number_out(bigger, G)).variance;
        ok = rel_err(v0, v1) <= 1e-8;
        return "relative change " + fmt(rel_err(v0, v1));
    });
}

void analytic_checks(Suite& s)
{
    auto snr_of = [](MechanismKind k, double G, int g = 0) { return snr(Mechanism::make(k, G, g), 1, 1.0); };

    s.check("analytic_noise", "single-mode beats G modes beats linear bound", [&](bool& ok) {
        ok = true;
        for (double G : {4.0, 16.0, 64.0, 256.0}) {
            ok = ok && snr_of(MechanismKind::SingleMode, G) > snr_of(MechanismKind::GModes, G);
            ok = ok && snr_of(MechanismKind::GModes, G) > snr_of(MechanismKind::PhaseInsensitive, G);
        }
        return "G in {4, 16, 64, 256}";
    });
    s.check("analytic_noise", "g=2 multi-mode cascade below the linear bound", [&](bool& ok) {
        ok = true;
        for (int N = 2; N <= 10; ++N) {
            const double G = std::ldexp(1.0, N);
            ok = ok && snr_of(MechanismKind::MultiStepMultiMode, G, 2) < snr_of(MechanismKind::PhaseInsensitive, G);
        }
        return "G = 2^N, N = 2..10";
    });
    s.check("analytic_noise", "cascades bounded by their single-stage limits", [&](bool& ok) {
        ok = true;
        for (int g : {2, 4, 8}) {
            ok = ok && snr_of(MechanismKind::SingleMode, 64) >= snr_of(MechanismKind::MultiStepSingleMode, 64, g);
            ok = ok && snr_of(MechanismKind::GModes, 64) >= snr_of(MechanismKind::MultiStepMultiMode, 64, g);
        }
        return "G = 64, g in {2, 4, 8}";
    });
    s.check("analytic_noise", "linear SNRs saturate at large gain", [&](bool& ok) {
        const double pi = snr_of(MechanismKind::PhaseInsensitive, 1e4);
        const double ps = snr_of(MechanismKind::PhaseSensitive, 1e4);
        ok = std::abs(pi - 1.0) <= 0.01 && std::abs(ps / std::sqrt(2.0) - 1.0) <= 0.01;
        return "insensitive " + fmt(pi) + ", sensitive " + fmt(ps);
    });
    s.check("analytic_noise", "single-mode reservoir prefactor is one", [](bool& ok) {
        const double f = reservoir_noise_factor(Mechanism::single_mode(1000));
        ok = f == 1.0;
        return "prefactor " + fmt(f);
    });
    s.check("analytic_noise", "one-step cascades reduce to single-stage forms", [](bool& ok) {
        const NumberStats a{1.0, 0.25};
        const NumberStats b{1.0, 2.0};
        ok = true;
        for (int g : {2, 3, 5}) {
            ok = ok && rel_err(var_multistep_single(g, g, a, b), var_single_mode(g, a, b)) <= 1e-15;
            ok = ok && rel_err(var_multistep_multi(g, g, a, b), var_g_modes(g, a, b)) <= 1e-15;
        }
        return "g in {2, 3, 5}";
    });
}

void filter_checks(Suite& s)
{
    s.check("spectral_filter", "lossless over a 10^4-point scan", [](bool& ok) {
        double dev = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const auto tp = lorentzian_transfer(0.9 + 2e-5 * i, 1.0, 0.01);
            dev = std::max(dev, std::abs(tp.transmission() + tp.reflection() - 1.0));
        }
        ok = dev <= 1e-12;
        return "max | |T|^2 + |R|^2 - 1 | " + fmt(dev);
    });
    s.check("spectral_filter", "perfect transmission on resonance", [](bool& ok) {
        const auto tp = lorentzian_transfer(1.0, 1.0, 0.01);
        ok = tp.T == Complex(1.0, 0.0) && tp.R == Complex(0.0, 0.0);
        return "T=" + fmt(tp.T.real()) + ", R=" + fmt(std::abs(tp.R));
    });
    s.check("spectral_filter", "thermal suppression slope", [](bool& ok) {
        const ThermalEnv env(4.0);
        const double scale = kHbarOverK / env.temperature();
        const int n = 301;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const double w = (10.0 + 30.0 * i / (n - 1)) / scale;
            const double y = std::log(thermal_occupancy(w, env));
            sx += w;
            sy += y;
            sxx += w * w;
            sxy += w * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double err = rel_err(slope, -scale);
        ok = err <= 1e-6;
        return "relative slope error " + fmt(err);
    });
    s.check("spectral_filter", "on-resonance pipeline equals single-mode law", [](bool& ok) {
        const auto sa = make_space(5);
        const auto sc = make_space(thermal_cutoff(0.5, 1.0, 0));
        const NumberStats b{0.5, 0.75};
        const auto st =
            filtered_amplified_stats(lorentzian_transfer(1.0, 1.0, 0.1), fock_state(sa, 1), thermal_state(sc, 0.5), 7, b);
        const double want = var_single_mode(7, {1.0, 0.0}, b);
        ok = std::abs(st.variance - want) <= 1e-12 && std::abs(st.mean - (b.mean + 7)) <= 1e-12;
        return "variance " + fmt(st.variance);
    });
    s.check("spectral_filter", "internal-mode noise is amplified off resonance", [](bool& ok) {
        const auto sa = make_space(5);
        const auto sc = make_space(thermal_cutoff(0.5, 1.0, 0));
        const NumberStats b{0.5, 0.75};
        const auto on = filtered_amplified_stats(lorentzian_transfer(1.0, 1.0, 0.1), fock_state(sa, 1),
                                                 thermal_state(sc, 0.5), 7, b);
        const auto off = filtered_amplified_stats(lorentzian_transfer(1.02, 1.0, 0.1), fock_state(sa, 1),
                                                  thermal_state(sc, 0.5), 7, b);
        ok = off.variance > on.variance;
        return "variance " + fmt(on.variance) + " -> " + fmt(off.variance);
    });
}

}  // namespace

bool Report::all_passed() const
{
    for (const auto& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

std::vector<const CheckResult*> Report::failures() const
{
    std::vector<const CheckResult*> out;
    for (const auto& c : checks) {
        if (!c.passed) {
            out.push_back(&c);
        }
    }
    return out;
}

double resolve_phase(const Options& options)
{
    if (options.fixed_phase) {
        return *options.fixed_phase;
    }
    mc::TrialStream stream(options.seed, 0);
    return 2 * std::numbers::pi * stream.uniform();
}

Report run_suite(const Options& options)
{
    if (options.gain < 1) {
        throw std::invalid_argument("verify: gain must be an integer >= 1");
    }
    if (options.cutoff && *options.cutoff < 0) {
        throw std::invalid_argument("verify: cutoff must be >= 0");
    }
    if (options.fixed_phase && !std::isfinite(*options.fixed_phase)) {
        throw std::invalid_argument("verify: fixed phase must be finite");
    }

    Report report;
    report.phase = resolve_phase(options);
    report.cutoff = options.cutoff ? *options.cutoff : thermal_cutoff(kReservoirNbar, options.gain, kMaxInput);
    Suite suite(report);

    fock_checks(suite);

    bool guard_ok = false;
    suite.check("fock_core", "truncation guard", [&](bool& ok) {
        const auto space = make_space(report.cutoff);
        const double leak = leakage(thermal_state(space, kReservoirNbar), kGuardLevels);
        const bool input_fits = report.cutoff >= kMaxInput + kGuardLevels;
        ok = input_fits && leak <= kGuardTolerance;
        guard_ok = ok;
        std::string detail = "cutoff " + std::to_string(report.cutoff) + ", top-" + std::to_string(kGuardLevels)
                             + " leakage " + fmt(leak);
        if (!ok) {
            detail += " exceeds " + fmt(kGuardTolerance) + "; experiments at this cutoff were not run";
        }
        return detail;
    });

    if (guard_ok) {
        nonlinear_checks(suite, report, options);
        linear_checks(suite, report, options);
    }
    analytic_checks(suite);
    filter_checks(suite);
    return report;
}

}  // namespace nlamp::verify
