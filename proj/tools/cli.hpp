#pragma once

// Config resolution and subcommands behind the `nlamp` executable. Kept in a
// library so tests can drive commands without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlamp::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Bad flags, config files or parameter values; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> out;
    std::optional<int> cutoff;
    std::optional<double> fixed_phase;
    std::optional<int> gain;
};

const std::vector<std::string>& commands();

/// Built-in defaults for `command`, before any config file or flag.
Json default_config(const std::string& command, const std::string& output_dir);

/// defaults <- config file (top-level keys, then the command's section) <- flags.
/// `output_dir` is the default directory for the output file.
Json resolve_config(const std::string& command, const Flags& flags, const std::string& output_dir);

/// Runs a resolved command. Data goes to the configured output file, a
/// human-readable summary to `out`, warnings to `err`. Returns the exit code.
int run_command(const std::string& command, const Json& config, std::ostream& out, std::ostream& err);

}  // namespace nlamp::cli
