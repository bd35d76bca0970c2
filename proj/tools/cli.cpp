#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "nlamp/analytic_noise.hpp"
#include "nlamp/csv.hpp"
#include "nlamp/fock_space.hpp"
#include "nlamp/mc_engine.hpp"
#include "nlamp/spectral_filter.hpp"
#include "nlamp/verify.hpp"

namespace nlamp::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kCommonKeys = {"seed", "trials", "out", "cutoff", "fixed_phase", "gain"};

bool contains(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string out_path(const std::string& output_dir, const std::string& command)
{
    return (fs::path(output_dir.empty() ? "." : output_dir) / (command + ".csv")).string();
}

// ---- typed access with config-error messages ----

const Json& field(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(where + ": missing '" + key + "'");
    }
    return obj.at(key);
}

double as_double(const Json& v, const std::string& what)
{
    if (!v.is_number()) {
        throw ConfigError(what + ": expected a number, got " + v.dump());
    }
    return v.get<double>();
}

long long as_integer(const Json& v, const std::string& what)
{
    if (v.is_number_integer()) {
        return v.get<long long>();
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9e15) {
            return static_cast<long long>(d);
        }
    }
    throw ConfigError(what + ": expected an integer, got " + v.dump());
}

std::uint64_t as_u64(const Json& v, const std::string& what)
{
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    const long long x = as_integer(v, what);
    if (x < 0) {
        throw ConfigError(what + ": must be >= 0");
    }
    return static_cast<std::uint64_t>(x);
}

int as_int(const Json& v, const std::string& what, long long lo, long long hi = std::numeric_limits<int>::max())
{
    const long long x = as_integer(v, what);
    if (x < lo || x > hi) {
        throw ConfigError(what + ": " + std::to_string(x) + " is outside [" + std::to_string(lo) + ", "
                          + std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
}

std::string as_string(const Json& v, const std::string& what)
{
    if (!v.is_string()) {
        throw ConfigError(what + ": expected a string, got " + v.dump());
    }
    return v.get<std::string>();
}

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

void write_file(const std::string& path, const std::string& content)
{
    const fs::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    f << content;
    if (!f.flush()) {
        throw ConfigError("failed writing output file '" + path + "'");
    }
}

std::string fmt(double v) { return csv::format(v); }

void apply_gain(Json& cfg, const std::string& command, const Json& gain)
{
    if (command == "verify" || command == "filter-scan") {
        cfg["gain"] = gain;
    } else if (command == "snr-table") {
        cfg["G"] = Json::array({gain});
    } else if (command == "shelving-demo") {
        cfg["G"] = gain;
    } else if (command == "mc") {
        for (auto& sc : cfg["scenarios"]) {
            sc["G"] = gain;
            sc.erase("N");
        }
    }
}

void apply_common(Json& cfg, const std::string& command, const std::string& key, const Json& value)
{
    if (key == "gain") {
        apply_gain(cfg, command, value);
    } else if (cfg.contains(key)) {
        cfg[key] = value;
    }
}

// ---- verify ----

int cmd_verify(const Json& cfg, std::ostream& out, std::ostream& err)
{
    verify::Options opt;
    opt.seed = as_u64(cfg.at("seed"), "seed");
    opt.gain = as_int(cfg.at("gain"), "gain", 1, 1000);
    if (!cfg.at("cutoff").is_null()) {
        opt.cutoff = as_int(cfg.at("cutoff"), "cutoff", 0, 400);
    }
    if (!cfg.at("fixed_phase").is_null()) {
        opt.fixed_phase = as_double(cfg.at("fixed_phase"), "fixed_phase");
    }
    verify::Report report;
    try {
        report = verify::run_suite(opt);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    std::string csv = "module,check,status,detail\n";
    std::size_t width = 0;
    for (const auto& c : report.checks) {
        width = std::max(width, c.module.size() + c.name.size() + 2);
    }
    for (const auto& c : report.checks) {
        csv += c.module + "," + quote(c.name) + "," + (c.passed ? "pass" : "FAIL") + "," + quote(c.detail) + "\n";
        out << (c.passed ? "pass  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width))
            << (c.module + ": " + c.name) << "  " << c.detail << "\n";
    }
    write_file(cfg.at("out").get<std::string>(), csv);

    const auto failed = report.failures();
    out << "phase " << fmt(report.phase) << ", cutoff " << report.cutoff << "\n";
    out << "nonlinear output moments: mean " << fmt(report.nonlinear_mean) << ", variance "
        << fmt(report.nonlinear_variance) << "\n";
    out << report.checks.size() - failed.size() << "/" << report.checks.size() << " checks passed\n";
    for (const auto* f : failed) {
        err << "check failed: " << f->module << ": " << f->name << ": " << f->detail << "\n";
    }
    return failed.empty() ? kExitOk : kExitCheckFailed;
}

// ---- snr-table ----

struct MechanismEntry {
    MechanismKind kind;
    int step_gain = 0;
};

MechanismEntry parse_mechanism_entry(const Json& v)
{
    const std::string name = v.is_string() ? v.get<std::string>() : as_string(field(v, "mechanism", "mechanisms[]"), "mechanism");
    const auto kind = parse_mechanism(name);
    if (!kind) {
        throw ConfigError("unknown mechanism '" + name + "'");
    }
    MechanismEntry e{*kind, 0};
    if (is_multi_step(*kind)) {
        if (!v.is_object() || !v.contains("g")) {
            throw ConfigError("mechanism '" + name + "' needs a step gain 'g'");
        }
        e.step_gain = as_int(v.at("g"), name + ".g", 2, 1 << 20);
    }
    return e;
}

int cmd_snr_table(const Json& cfg, std::ostream& out, std::ostream& err)
{
    std::vector<MechanismEntry> mechs;
    for (const auto& m : cfg.at("mechanisms")) {
        mechs.push_back(parse_mechanism_entry(m));
    }
    std::vector<double> grid;
    for (const auto& g : cfg.at("G")) {
        grid.push_back(as_double(g, "G"));
    }
    const int n_a = as_int(cfg.at("n_a"), "n_a", 1);
    const double dn_b = as_double(cfg.at("dn_b"), "dn_b");
    if (!(dn_b >= 0.0)) {
        throw ConfigError("dn_b must be >= 0");
    }

    std::string csv = "mechanism,G,g,N,n_a,dn_b,snr\n";
    int rows = 0;
    int skipped = 0;
    for (const auto& m : mechs) {
        for (double G : grid) {
            try {
                const auto mech = Mechanism::make(m.kind, G, m.step_gain);
                const double value = snr(mech, n_a, dn_b);
                const bool multi = is_multi_step(m.kind);
                csv += std::string(to_string(m.kind)) + "," + fmt(G) + "," + (multi ? std::to_string(mech.step_gain()) : "")
                       + "," + (multi ? std::to_string(mech.steps()) : "") + "," + std::to_string(n_a) + ","
                       + fmt(dn_b) + "," + fmt(value) + "\n";
                ++rows;
            } catch (const std::invalid_argument& e) {
                err << "warning: skipping " << to_string(m.kind) << " at G=" << fmt(G) << ": " << e.what() << "\n";
                ++skipped;
            }
        }
    }
    const std::string path = cfg.at("out").get<std::string>();
    write_file(path, csv);
    out << "wrote " << rows << " rows to " << path;
    if (skipped) {
        out << " (" << skipped << " skipped)";
    }
    out << "\n";
    return kExitOk;
}

// ---- mc ----

mc::Model parse_model(const Json& sc, const std::string& where)
{
    const std::string name = as_string(field(sc, "model", where), where + ".model");
    auto gain = [&] { return as_int(field(sc, "G", where), where + ".G", 1, 1 << 30); };
    if (name == "SingleMode") {
        return mc::model::SingleMode{gain()};
    }
    if (name == "GModes") {
        return mc::model::GModes{gain()};
    }
    if (name == "MultiStepSingle" || name == "MultiStepSingleMode" || name == "MultiStepMulti"
        || name == "MultiStepMultiMode") {
        const int g = as_int(field(sc, "g", where), where + ".g", 2, 1 << 20);
        int steps = 0;
        if (sc.contains("N")) {
            steps = as_int(sc.at("N"), where + ".N", 1, 62);
        } else {
            const auto n = integer_log(gain(), g);
            if (!n) {
                throw ConfigError(where + ": G=" + std::to_string(gain()) + " is not a power of g=" + std::to_string(g));
            }
            steps = *n;
        }
        if (sc.contains("G")) {
            const auto n = integer_log(gain(), g);
            if (!n || *n != steps) {
                throw ConfigError(where + ": G, g and N are inconsistent (need G = g^N)");
            }
        }
        if (name.rfind("MultiStepSingle", 0) == 0) {
            return mc::model::MultiStepSingle{g, steps};
        }
        return mc::model::MultiStepMulti{g, steps};
    }
    if (name == "Multiplexed") {
        const int budget = sc.contains("max_photons") ? as_int(sc.at("max_photons"), where + ".max_photons", 0)
                                                      : as_int(field(sc, "n_a", where), where + ".n_a", 0);
        return mc::model::Multiplexed{gain(), budget};
    }
    if (name == "Shelving") {
        return mc::model::Shelving{gain(), as_int(field(sc, "cavity_modes", where), where + ".cavity_modes", 1)};
    }
    throw ConfigError(where + ": unknown model '" + name + "'");
}

mc::ReservoirSpec parse_reservoir_field(const Json& v, const std::string& what)
{
    try {
        return mc::parse_reservoir(as_string(v, what));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

mc::ScenarioSpec parse_scenario(const Json& sc, const Json& cfg, const std::string& where)
{
    static const std::vector<std::string> known = {"model", "G", "g", "N", "n_a", "reservoir", "trials", "seed",
                                                   "max_photons", "cavity_modes"};
    if (!sc.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto& [k, v] : sc.items()) {
        if (!contains(known, k)) {
            throw ConfigError(where + ": unknown key '" + k + "'");
        }
    }
    mc::ScenarioSpec spec;
    spec.model = parse_model(sc, where);
    spec.input_n_a = as_int(field(sc, "n_a", where), where + ".n_a", 0, 1 << 20);
    spec.reservoir = parse_reservoir_field(field(sc, "reservoir", where), where + ".reservoir");
    spec.trials = as_u64(sc.contains("trials") ? sc.at("trials") : cfg.at("trials"), where + ".trials");
    spec.seed = as_u64(sc.contains("seed") ? sc.at("seed") : cfg.at("seed"), where + ".seed");
    try {
        mc::validate(spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return spec;
}

std::string stats_fields(const mc::SampleStats& st, double analytic)
{
    return fmt(st.mean) + "," + fmt(st.variance) + "," + fmt(analytic) + "," + fmt(mc::variance_z_score(st, analytic));
}

int cmd_mc(const Json& cfg, std::ostream& out, std::ostream&)
{
    const Json& list = cfg.at("scenarios");
    if (!list.is_array() || list.empty()) {
        throw ConfigError("mc: 'scenarios' must be a nonempty array");
    }
    // Parse everything before sampling anything.
    std::vector<mc::ScenarioSpec> specs;
    for (std::size_t i = 0; i < list.size(); ++i) {
        specs.push_back(parse_scenario(list[i], cfg, "scenarios[" + std::to_string(i) + "]"));
    }

    std::string csv = "model,G,g,N,n_a,reservoir,trials,seed,mean,variance,analytic_variance,z_score\n";
    for (const auto& spec : specs) {
        const auto st = mc::run_scenario(spec);
        const double analytic = mc::analytic_variance(spec);
        const int g = mc::step_gain(spec.model);
        csv += mc::model_name(spec.model) + "," + std::to_string(mc::total_gain(spec.model)) + ","
               + (g ? std::to_string(g) : "") + "," + (g ? std::to_string(mc::step_count(spec.model)) : "") + ","
               + std::to_string(spec.input_n_a) + "," + quote(spec.reservoir.label()) + ","
               + std::to_string(spec.trials) + "," + std::to_string(spec.seed) + "," + stats_fields(st, analytic) + "\n";
        out << mc::model_name(spec.model) << " G=" << mc::total_gain(spec.model) << " n_a=" << spec.input_n_a << " "
            << spec.reservoir.label() << ": variance " << fmt(st.variance) << " vs " << fmt(analytic) << " (z = "
            << fmt(mc::variance_z_score(st, analytic)) << ")\n";
    }
    const std::string path = cfg.at("out").get<std::string>();
    write_file(path, csv);
    out << "wrote " << specs.size() << " rows to " << path << "\n";
    return kExitOk;
}

// ---- filter-scan ----

int cmd_filter_scan(const Json& cfg, std::ostream& out, std::ostream&)
{
    const double omega0 = as_double(cfg.at("omega0"), "omega0");
    const double gamma = as_double(cfg.at("gamma"), "gamma");
    const double temperature = as_double(cfg.at("temperature"), "temperature");
    const double omega_amp = as_double(cfg.at("omega_amp"), "omega_amp");
    const int gain = as_int(cfg.at("gain"), "gain", 1);
    const int n_a = as_int(cfg.at("n_a"), "n_a", 0, 50);

    std::vector<TransferPair> rows;
    try {
        if (!cfg.at("table").is_null()) {
            const std::string table = as_string(cfg.at("table"), "table");
            std::ifstream in(table);
            if (!in) {
                throw ConfigError("cannot read filter table '" + table + "'");
            }
            rows = read_filter_table(in);
        } else {
            if (!(gamma > 0.0)) {
                throw ConfigError("gamma must be > 0");
            }
            const int points = as_int(cfg.at("points"), "points", 1, 10000000);
            const double lo = as_double(cfg.at("detuning_min"), "detuning_min");
            const double hi = as_double(cfg.at("detuning_max"), "detuning_max");
            for (int i = 0; i < points; ++i) {
                const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
                rows.push_back(lorentzian_transfer(omega0 + (lo + (hi - lo) * t), omega0, gamma));
            }
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("filter-scan: ") + e.what());
    }

    std::optional<ThermalEnv> env;
    double nbar_amp = 0.0;
    try {
        env.emplace(temperature);
        nbar_amp = thermal_occupancy(omega_amp, *env);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("filter-scan: ") + e.what());
    }
    const NumberStats b_env{nbar_amp, nbar_amp * (nbar_amp + 1)};
    const auto space_a = make_space(n_a + kGuardLevels);

    std::string csv = "omega,abs_T2,abs_R2,nbar_at_omega_amp,snr_end_to_end\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& tp = rows[i];
        double nbar_c = 0.0;
        try {
            nbar_c = thermal_occupancy(tp.omega, *env);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("filter-scan row " + std::to_string(i + 1) + ": " + e.what());
        }
        const int s_c = thermal_cutoff(nbar_c, 1.0, 0);
        if (s_c > 400) {
            throw ConfigError("filter-scan row " + std::to_string(i + 1) + ": internal mode occupancy "
                              + fmt(nbar_c) + " is too hot for an explicit Fock basis");
        }
        const auto space_c = make_space(s_c);
        const auto st =
            filtered_amplified_stats(tp, fock_state(space_a, n_a), thermal_state(space_c, nbar_c), gain, b_env);
        const double signal = gain * tp.transmission() * n_a;
        const double snr = st.variance > 0.0 ? signal / std::sqrt(st.variance)
                                             : std::numeric_limits<double>::infinity();
        csv += fmt(tp.omega) + "," + fmt(tp.transmission()) + "," + fmt(tp.reflection()) + "," + fmt(nbar_amp) + ","
               + fmt(snr) + "\n";
    }
    const std::string path = cfg.at("out").get<std::string>();
    write_file(path, csv);
    out << "wrote " << rows.size() << " rows to " << path << "; reservoir occupancy at omega_amp " << fmt(nbar_amp)
        << "\n";
    return kExitOk;
}

// ---- shelving-demo ----

int cmd_shelving_demo(const Json& cfg, std::ostream& out, std::ostream&)
{
    const int G = as_int(cfg.at("G"), "G", 1, 100000);
    const int n_a = as_int(cfg.at("n_a"), "n_a", 1, 1 << 20);
    const auto reservoir = parse_reservoir_field(cfg.at("reservoir"), "reservoir");
    const std::uint64_t trials = as_u64(cfg.at("trials"), "trials");
    const std::uint64_t seed = as_u64(cfg.at("seed"), "seed");
    if (trials < 2) {
        throw ConfigError("trials must be >= 2");
    }

    std::string csv =
        "cavity_modes,G,n_a,reservoir,trials,seed,mean,variance,analytic_variance,z_score,snr,analytic_snr\n";
    out << "cavity modes  variance  analytic  snr  analytic snr\n";
    const double signal = static_cast<double>(G) * n_a;
    for (int m = G; m >= 1; --m) {
        const mc::ScenarioSpec spec{mc::model::Shelving{G, m}, n_a, reservoir, trials, seed};
        const auto st = mc::run_shelving(spec);
        const double analytic = mc::analytic_variance(spec);
        const double inf = std::numeric_limits<double>::infinity();
        const double snr = st.variance > 0.0 ? signal / std::sqrt(st.variance) : inf;
        const double snr_a = analytic > 0.0 ? signal / std::sqrt(analytic) : inf;
        csv += std::to_string(m) + "," + std::to_string(G) + "," + std::to_string(n_a) + "," + quote(reservoir.label())
               + "," + std::to_string(trials) + "," + std::to_string(seed) + "," + stats_fields(st, analytic) + ","
               + fmt(snr) + "," + fmt(snr_a) + "\n";
        out << m << "  " << fmt(st.variance) << "  " << fmt(analytic) << "  " << fmt(snr) << "  " << fmt(snr_a) << "\n";
    }
    const std::string path = cfg.at("out").get<std::string>();
    write_file(path, csv);
    out << "wrote " << G << " rows to " << path << "\n";
    return kExitOk;
}

}  // namespace

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = {"verify", "snr-table", "mc", "filter-scan", "shelving-demo"};
    return names;
}

Json default_config(const std::string& command, const std::string& output_dir)
{
    Json cfg = Json::object();
    cfg["out"] = out_path(output_dir, command);
    if (command == "verify") {
        cfg["seed"] = 0;
        cfg["gain"] = 2;
        cfg["cutoff"] = nullptr;
        cfg["fixed_phase"] = nullptr;
    } else if (command == "snr-table") {
        cfg["mechanisms"] = Json::array({"PhaseInsensitive", "PhaseSensitive", "SingleMode", "GModes",
                                         Json{{"mechanism", "MultiStepSingleMode"}, {"g", 2}},
                                         Json{{"mechanism", "MultiStepMultiMode"}, {"g", 2}}});
        cfg["G"] = Json::array({1, 2, 4, 8, 16, 32, 64, 128, 256});
        cfg["n_a"] = 1;
        cfg["dn_b"] = 1.0;
    } else if (command == "mc") {
        cfg["seed"] = 0;
        cfg["trials"] = 1000000;
        cfg["scenarios"] =
            Json::array({Json{{"model", "GModes"}, {"G", 4}, {"n_a", 1}, {"reservoir", "thermal(1)"}}});
    } else if (command == "filter-scan") {
        // Mid-infrared resonance (about 30 THz) read out through 400 THz amplification at room temperature.
        cfg["omega0"] = 2e14;
        cfg["gamma"] = 1e12;
        cfg["detuning_min"] = -5e12;
        cfg["detuning_max"] = 5e12;
        cfg["points"] = 201;
        cfg["temperature"] = 300.0;
        cfg["omega_amp"] = 2.5e15;
        cfg["gain"] = 100;
        cfg["n_a"] = 1;
        cfg["table"] = nullptr;
    } else if (command == "shelving-demo") {
        cfg["seed"] = 0;
        cfg["trials"] = 1000000;
        cfg["G"] = 8;
        cfg["n_a"] = 1;
        cfg["reservoir"] = "thermal(1)";
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
    return cfg;
}

Json resolve_config(const std::string& command, const Flags& flags, const std::string& output_dir)
{
    Json cfg = default_config(command, output_dir);

    if (flags.config) {
        std::ifstream in(*flags.config);
        if (!in) {
            throw ConfigError("cannot read config file '" + *flags.config + "'");
        }
        Json file;
        try {
            file = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file '" + *flags.config + "': " + e.what());
        }
        if (!file.is_object()) {
            throw ConfigError("config file '" + *flags.config + "': top level must be an object");
        }
        for (const auto& [key, value] : file.items()) {
            if (contains(commands(), key)) {
                if (!value.is_object()) {
                    throw ConfigError("config section '" + key + "' must be an object");
                }
            } else if (contains(kCommonKeys, key)) {
                apply_common(cfg, command, key, value);
            } else {
                throw ConfigError("config file: unknown key '" + key + "'");
            }
        }
        if (file.contains(command)) {
            for (const auto& [key, value] : file.at(command).items()) {
                if (!cfg.contains(key)) {
                    throw ConfigError("config section '" + command + "': unknown key '" + key + "'");
                }
                cfg[key] = value;
            }
        }
    }

    if (flags.seed) {
        if (cfg.contains("seed")) {
            cfg["seed"] = *flags.seed;
        }
        if (command == "mc") {
            for (auto& sc : cfg["scenarios"]) {
                sc.erase("seed");
            }
        }
    }
    if (flags.trials) {
        if (cfg.contains("trials")) {
            cfg["trials"] = *flags.trials;
        }
        if (command == "mc") {
            for (auto& sc : cfg["scenarios"]) {
                sc.erase("trials");
            }
        }
    }
    if (flags.out) {
        cfg["out"] = *flags.out;
    }
    if (flags.cutoff && cfg.contains("cutoff")) {
        cfg["cutoff"] = *flags.cutoff;
    }
    if (flags.fixed_phase && cfg.contains("fixed_phase")) {
        cfg["fixed_phase"] = *flags.fixed_phase;
    }
    if (flags.gain) {
        apply_gain(cfg, command, *flags.gain);
    }
    if (!cfg.at("out").is_string()) {
        throw ConfigError("'out' must be a path string");
    }
    return cfg;
}

int run_command(const std::string& command, const Json& config, std::ostream& out, std::ostream& err)
{
    err << "nlamp " << command << ": resolved config " << config.dump() << "\n";
    try {
        if (command == "verify") {
            return cmd_verify(config, out, err);
        }
        if (command == "snr-table") {
            return cmd_snr_table(config, out, err);
        }
        if (command == "mc") {
            return cmd_mc(config, out, err);
        }
        if (command == "filter-scan") {
            return cmd_filter_scan(config, out, err);
        }
        if (command == "shelving-demo") {
            return cmd_shelving_demo(config, out, err);
        }
        throw ConfigError("unknown command '" + command + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: config: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace nlamp::cli
