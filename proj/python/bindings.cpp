#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlamp/amp_channels.hpp"
#include "nlamp/analytic_noise.hpp"
#include "nlamp/csv.hpp"
#include "nlamp/fock_space.hpp"
#include "nlamp/mc_engine.hpp"
#include "nlamp/spectral_filter.hpp"
#include "nlamp/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace nlamp;

namespace {

std::string stats_repr(const NumberStats& s)
{
    return "NumberStats(mean=" + csv::format(s.mean) + ", variance=" + csv::format(s.variance) + ")";
}

void bind_fock(py::module_& m)
{
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);

    py::class_<FockSpace>(m, "FockSpace")
        .def(py::init<int>(), "cutoff"_a)
        .def_property_readonly("cutoff", &FockSpace::cutoff)
        .def_property_readonly("dimension", &FockSpace::dimension)
        .def(py::self == py::self)
        .def("__repr__", [](const FockSpace& s) { return "FockSpace(" + std::to_string(s.cutoff()) + ")"; });

    py::class_<OperatorMatrix>(m, "OperatorMatrix")
        .def(py::init<Shape, Matrix>(), "shape"_a, "entries"_a)
        .def_property_readonly("shape", &OperatorMatrix::shape)
        .def_property_readonly("matrix", &OperatorMatrix::matrix)
        .def_property_readonly("dimension", &OperatorMatrix::dimension)
        .def("adjoint", &OperatorMatrix::adjoint)
        .def("max_abs_difference", &OperatorMatrix::max_abs_difference)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def("__rmul__", [](const OperatorMatrix& op, Complex f) { return f * op; })
        .def("__mul__", [](const OperatorMatrix& op, Complex f) { return f * op; });

    py::class_<NumberStats>(m, "NumberStats")
        .def(py::init<double, double>(), "mean"_a, "variance"_a)
        .def_readwrite("mean", &NumberStats::mean)
        .def_readwrite("variance", &NumberStats::variance)
        .def("__repr__", &stats_repr);

    py::class_<DiagonalState>(m, "DiagonalState")
        .def(py::init<FockSpace, std::vector<double>>(), "space"_a, "probs"_a)
        .def_property_readonly("space", &DiagonalState::space)
        .def_property_readonly("probs",
                               [](const DiagonalState& s) { return std::vector<double>(s.probs().begin(), s.probs().end()); })
        .def("stats", &DiagonalState::stats);

    m.def("identity", &identity, "shape"_a);
    m.def("annihilation", &annihilation, "space"_a);
    m.def("creation", &creation, "space"_a);
    m.def("number_op", &number_op, "space"_a);
    m.def("kron", &kron, "lhs"_a, "rhs"_a);
    m.def("embed", &embed, "op"_a, "factor_index"_a, "full_shape"_a);
    m.def("fock_state", &fock_state, "space"_a, "n"_a);
    m.def("thermal_state", &thermal_state, "space"_a, "nbar"_a);
    m.def(
        "moments",
        [](const std::vector<DiagonalState>& factors, const OperatorMatrix& observable) {
            return moments(std::span<const DiagonalState>(factors), observable);
        },
        "factors"_a, "observable"_a);
    m.def("leakage", &leakage, "state"_a, "top_k"_a);
    m.def("check_truncation", &check_truncation, "state"_a);
    m.def("thermal_cutoff", &thermal_cutoff, "nbar"_a, "gain"_a, "max_input"_a);
}

void bind_channels(py::module_& m)
{
    py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);

    m.def("unit_phase", &unit_phase, "phase"_a);
    m.def("shift_operator", [](const FockSpace& s, double phase) { return shift_operator(s, phase).op; }, "space"_a,
          "phase"_a);
    m.def("nonlinear_bout", py::overload_cast<const FockSpace&, const FockSpace&, int, double>(&nonlinear_bout),
          "space_b"_a, "space_a"_a, "gain"_a, "phase"_a);
    m.def("nonlinear_number_out", &nonlinear_number_out, "space_b"_a, "space_a"_a, "gain"_a, "phase"_a);
    m.def("nonlinear_commutator", &nonlinear_commutator, "space_b"_a, "space_a"_a, "gain"_a, "phase"_a);
    m.def("commutator", &commutator, "x"_a, "y"_a);
    m.def("caves_number_out", &caves_number_out, "space_a"_a, "space_b"_a, "gain"_a);
    m.def("phase_sensitive_number_out", &phase_sensitive_number_out, "space_a"_a, "gain"_a);

    py::class_<IdealMapRecord>(m, "IdealMapRecord")
        .def_readonly("n_in", &IdealMapRecord::n_in)
        .def_readonly("n_after", &IdealMapRecord::n_after)
        .def_readonly("M_out", &IdealMapRecord::M_out)
        .def_readonly("N_out", &IdealMapRecord::N_out)
        .def_readonly("absorber_energy", &IdealMapRecord::absorber_energy)
        .def_readonly("phase", &IdealMapRecord::phase);
    m.def("ideal_schrodinger_map", &ideal_schrodinger_map, "n"_a, "M"_a, "N"_a, "gain"_a, "phase"_a, "omega"_a,
          "absorber_energy"_a = 0.0);
}

void bind_analytic(py::module_& m)
{
    py::enum_<MechanismKind>(m, "MechanismKind")
        .value("PhaseInsensitive", MechanismKind::PhaseInsensitive)
        .value("PhaseSensitive", MechanismKind::PhaseSensitive)
        .value("SingleMode", MechanismKind::SingleMode)
        .value("GModes", MechanismKind::GModes)
        .value("MultiStepSingleMode", MechanismKind::MultiStepSingleMode)
        .value("MultiStepMultiMode", MechanismKind::MultiStepMultiMode);

    py::class_<Mechanism>(m, "Mechanism")
        .def_static("make", &Mechanism::make, "kind"_a, "gain"_a, "step_gain"_a = 0)
        .def_property_readonly("kind", &Mechanism::kind)
        .def_property_readonly("gain", &Mechanism::gain)
        .def_property_readonly("step_gain", &Mechanism::step_gain)
        .def_property_readonly("steps", &Mechanism::steps);

    m.def("integer_log", &integer_log, "value"_a, "base"_a);
    m.def("var_caves", &var_caves, "gain"_a, "a"_a, "b"_a);
    m.def("var_phase_sensitive", &var_phase_sensitive, "gain"_a, "a"_a);
    m.def("var_single_mode", &var_single_mode, "gain"_a, "a"_a, "b"_a);
    m.def("var_g_modes", &var_g_modes, "gain"_a, "a"_a, "b"_a);
    m.def("var_multistep_single", &var_multistep_single, "gain"_a, "step_gain"_a, "a"_a, "b"_a);
    m.def("var_multistep_multi", &var_multistep_multi, "gain"_a, "step_gain"_a, "a"_a, "b"_a);
    m.def("snr", &snr, "mechanism"_a, "n_a"_a, "dn_b"_a);
    m.def(
        "snr_curve",
        [](MechanismKind kind, const std::vector<double>& grid, int n_a, double dn_b, int step_gain) {
            return snr_curve(kind, grid, n_a, dn_b, step_gain).snr;
        },
        "kind"_a, "grid"_a, "n_a"_a = 1, "dn_b"_a = 1.0, "step_gain"_a = 0);
}

void bind_mc(py::module_& m)
{
    auto mc = m.def_submodule("mc", "Monte Carlo photon-counting scenarios");
    namespace md = mc::model;

    py::class_<md::SingleMode>(mc, "SingleMode").def(py::init<int>(), "G"_a).def_readwrite("gain", &md::SingleMode::gain);
    py::class_<md::GModes>(mc, "GModes").def(py::init<int>(), "G"_a).def_readwrite("gain", &md::GModes::gain);
    py::class_<md::MultiStepSingle>(mc, "MultiStepSingle")
        .def(py::init<int, int>(), "g"_a, "N"_a)
        .def_readwrite("step_gain", &md::MultiStepSingle::step_gain)
        .def_readwrite("steps", &md::MultiStepSingle::steps);
    py::class_<md::MultiStepMulti>(mc, "MultiStepMulti")
        .def(py::init<int, int>(), "g"_a, "N"_a)
        .def_readwrite("step_gain", &md::MultiStepMulti::step_gain)
        .def_readwrite("steps", &md::MultiStepMulti::steps);
    py::class_<md::Multiplexed>(mc, "Multiplexed")
        .def(py::init<int, int>(), "G"_a, "max_photons"_a)
        .def_readwrite("gain", &md::Multiplexed::gain)
        .def_readwrite("max_photons", &md::Multiplexed::max_photons);
    py::class_<md::Shelving>(mc, "Shelving")
        .def(py::init<int, int>(), "G"_a, "cavity_modes"_a)
        .def_readwrite("gain", &md::Shelving::gain)
        .def_readwrite("cavity_modes", &md::Shelving::cavity_modes);

    py::class_<mc::ReservoirSpec>(mc, "ReservoirSpec")
        .def_static("fock", &mc::ReservoirSpec::fock, "n"_a)
        .def_static("thermal", &mc::ReservoirSpec::thermal, "nbar"_a)
        .def_static("empirical", &mc::ReservoirSpec::empirical, "probs"_a)
        .def_static("parse", &mc::parse_reservoir, "text"_a)
        .def_property_readonly("stats", &mc::ReservoirSpec::stats)
        .def_property_readonly("label", &mc::ReservoirSpec::label)
        .def("__repr__", &mc::ReservoirSpec::label);

    py::class_<mc::ScenarioSpec>(mc, "ScenarioSpec")
        .def(py::init([](mc::Model model, int n_a, const mc::ReservoirSpec& reservoir, std::uint64_t trials,
                         std::uint64_t seed) { return mc::ScenarioSpec{std::move(model), n_a, reservoir, trials, seed}; }),
             "model"_a, "n_a"_a, "reservoir"_a, "trials"_a, "seed"_a = 0)
        .def_readwrite("model", &mc::ScenarioSpec::model)
        .def_readwrite("n_a", &mc::ScenarioSpec::input_n_a)
        .def_readwrite("reservoir", &mc::ScenarioSpec::reservoir)
        .def_readwrite("trials", &mc::ScenarioSpec::trials)
        .def_readwrite("seed", &mc::ScenarioSpec::seed);

    py::class_<mc::SampleStats>(mc, "SampleStats")
        .def_readonly("count", &mc::SampleStats::count)
        .def_readonly("mean", &mc::SampleStats::mean)
        .def_readonly("variance", &mc::SampleStats::variance)
        .def_readonly("std_error_of_variance", &mc::SampleStats::std_error_of_variance)
        .def("std_error_of_mean", &mc::SampleStats::std_error_of_mean)
        .def(py::self == py::self);

    mc.def("model_name", &mc::model_name, "model"_a);
    mc.def("trial_output", &mc::trial_output, "spec"_a, "trial"_a);
    // Sampling releases the GIL; worker threads never touch Python objects.
    mc.def("run_scenario", &mc::run_scenario, "spec"_a, "threads"_a = 0, py::call_guard<py::gil_scoped_release>());
    mc.def("run_shelving", &mc::run_shelving, "spec"_a, "threads"_a = 0, py::call_guard<py::gil_scoped_release>());
    mc.def("analytic_variance", &mc::analytic_variance, "spec"_a);
    mc.def("analytic_mean", &mc::analytic_mean, "spec"_a);
    mc.def("variance_z_score", &mc::variance_z_score, "stats"_a, "analytic"_a);
}

void bind_filter(py::module_& m)
{
    m.attr("HBAR_OVER_K") = kHbarOverK;

    py::class_<TransferPair>(m, "TransferPair")
        .def_readonly("omega", &TransferPair::omega)
        .def_readonly("T", &TransferPair::T)
        .def_readonly("R", &TransferPair::R)
        .def_property_readonly("transmission", &TransferPair::transmission)
        .def_property_readonly("reflection", &TransferPair::reflection);
    m.def("make_transfer_pair", &make_transfer_pair, "omega"_a, "T"_a, "R"_a, "tolerance"_a = 1e-9);
    m.def("lorentzian_transfer", &lorentzian_transfer, "omega"_a, "omega0"_a, "gamma"_a);

    py::class_<ThermalEnv>(m, "ThermalEnv")
        .def(py::init<double>(), "temperature"_a)
        .def_property_readonly("temperature", &ThermalEnv::temperature)
        .def("reduced_energy", &ThermalEnv::reduced_energy, "omega"_a);
    m.def("bose_occupancy", &bose_occupancy, "reduced_energy"_a);
    m.def("thermal_occupancy", &thermal_occupancy, "omega"_a, "env"_a);
    m.def("amplification_frequency_gain", &amplification_frequency_gain, "omega_in"_a, "omega_amp"_a, "env"_a);
    m.def("filtered_output_operator", &filtered_output_operator, "space_a"_a, "space_c"_a, "tp"_a);
    m.def("filtered_amplified_stats", &filtered_amplified_stats, "tp"_a, "a"_a, "c"_a, "gain"_a, "b_env"_a);
}

void bind_verify(py::module_& m)
{
    auto v = m.def_submodule("verify", "Self-check suite");
    py::class_<verify::CheckResult>(v, "CheckResult")
        .def_readonly("module", &verify::CheckResult::module)
        .def_readonly("name", &verify::CheckResult::name)
        .def_readonly("passed", &verify::CheckResult::passed)
        .def_readonly("detail", &verify::CheckResult::detail);
    py::class_<verify::Report>(v, "Report")
        .def_readonly("phase", &verify::Report::phase)
        .def_readonly("cutoff", &verify::Report::cutoff)
        .def_readonly("nonlinear_mean", &verify::Report::nonlinear_mean)
        .def_readonly("nonlinear_variance", &verify::Report::nonlinear_variance)
        .def_readonly("checks", &verify::Report::checks)
        .def("all_passed", &verify::Report::all_passed);
    v.def(
        "run_suite",
        [](std::optional<int> cutoff, int gain, std::optional<double> fixed_phase, std::uint64_t seed) {
            return verify::run_suite({cutoff, gain, fixed_phase, seed});
        },
        "cutoff"_a = py::none(), "gain"_a = 2, "fixed_phase"_a = py::none(), "seed"_a = 0);
}

}  // namespace

PYBIND11_MODULE(_nlamp, m)
{
    m.doc() = "Photon-number noise of linear and nonlinear amplifiers";
    bind_fock(m);
    bind_channels(m);
    bind_analytic(m);
    bind_mc(m);
    bind_filter(m);
    bind_verify(m);
}
