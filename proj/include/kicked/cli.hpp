// cli.hpp — Config-driven scenarios for the kicked_dd front end
//
// Config format: `key = value` lines grouped in `[section]`s, '#' or ';'
// comments. Keys before the first section are global (schema_version,
// scenario, seed). Output is tab-separated text with a '#' metadata header
// that echoes the resolved configuration.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kicked::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3 };

// Config problem, optionally tied to a source line (0 = no line).
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line = 0) : std::runtime_error(msg), line(line) {}
    int line;
};

struct ConfigValue {
    std::string text;
    int line{0};
};

// section → key → value; the global section is "".
using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

ConfigTable parse_config(std::istream& in);

enum class Scenario { rates_parallel, rates_perp, trajectory, echo, generator_audit, extract_tauc };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
};

struct TimeGrid {
    double start{0.0};
    double stop{0.0};
    int points{0};
    bool both_kick_limits{false};
};

struct RunConfig {
    int schema_version{kSchemaVersion};
    Scenario scenario{Scenario::rates_parallel};
    std::uint64_t seed{0};
    std::map<std::string, double> model; // resolved parameters
    std::optional<SweepSpec> sweep;
    TimeGrid times;
    std::map<std::string, std::string> options;  // method, coupling, rel_tol
    std::map<std::string, std::string> ensemble; // kind, sigma, ...
    std::filesystem::path measurements;           // extract-tauc input
    std::vector<std::string> echo_lines;          // resolved config for the header
};

// Validates the table against the schema and fills in defaults. `base` is
// used to resolve relative file paths.
RunConfig resolve_config(const ConfigTable& table, const std::filesystem::path& base = {});
RunConfig load_config(const std::filesystem::path& path);

// Runs the scenario and writes the table. Throws on failure.
void run(const RunConfig& cfg, std::ostream& out);

// Full pipeline with exit-code mapping; diagnostics go to `err`.
int run_main(const std::filesystem::path& config, const std::filesystem::path& output, std::ostream& err);

} // namespace kicked::cli
