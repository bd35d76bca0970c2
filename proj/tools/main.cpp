#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv)
{
    using namespace nlamp::cli;

    CLI::App app{"Photon-number noise of linear and nonlinear amplifiers"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    app.add_option("--config", flags.config, "JSON config file");
    app.add_option("--seed", flags.seed, "random seed");
    app.add_option("--trials", flags.trials, "Monte Carlo trials per scenario");
    app.add_option("--out", flags.out, "output CSV path");
    app.add_option("--cutoff", flags.cutoff, "Fock cutoff override (verify)");
    app.add_option("--fixed-phase", flags.fixed_phase, "shift-operator phase (verify)");
    app.add_option("--gain", flags.gain, "amplifier gain");

    const char* help[] = {
        "verify", "run the self-check suite",
        "snr-table", "SNR against gain for each mechanism",
        "mc", "Monte Carlo scenarios against the closed-form variances",
        "filter-scan", "filtered amplification across a resonance",
        "shelving-demo", "SNR as shelving cavity modes go from G to 1",
    };
    for (int i = 0; i < 10; i += 2) {
        app.add_subcommand(help[i], help[i + 1]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const char* dir = std::getenv("NLAMP_OUTPUT_DIR");
    try {
        const Json config = resolve_config(command, flags, dir ? dir : ".");
        return run_command(command, config, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
