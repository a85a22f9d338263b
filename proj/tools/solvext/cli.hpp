#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solvext/models.hpp"
#include "solvext/spectral.hpp"

namespace solvext::cli {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kFormatEnvVar = "SOLVEXT_DEFAULT_FORMAT";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInadmissible = 2,
    kExitVerificationFailed = 3,
};

enum class Subcommand { Validate, Tabulate, Spectrum, Verify };
enum class OutputFormat { Csv, Json };
enum class TabulateKind { Potential, Wavefunction };

struct CommandConfig {
    Subcommand subcommand = Subcommand::Validate;
    models::Family family = models::Family::HarmonicRational;
    int ell = 0;
    std::optional<double> alpha;
    std::optional<int> nmax;
    std::optional<double> xmin;
    std::optional<double> xmax;
    std::optional<int> n_points;
    double tolerance = 1e-3;
    /// Unset means: SOLVEXT_DEFAULT_FORMAT, then the subcommand default.
    std::optional<OutputFormat> format;
    std::optional<std::string> output;
    TabulateKind tabulate_kind = TabulateKind::Potential;
    /// "ground" or a non-negative excited index.
    std::string level = "ground";

    friend bool operator==(const CommandConfig&, const CommandConfig&) = default;
};

nlohmann::json config_to_json(const CommandConfig& c);
/// Throws std::invalid_argument on unknown enum values or missing fields.
CommandConfig config_from_json(const nlohmann::json& j);

/// Parses argv (argv[0] is the program name). Throws CLI::ParseError on
/// syntax errors and std::invalid_argument on invalid combinations such as
/// --alpha with the harmonic family.
CommandConfig parse_command_line(int argc, const char* const* argv);

/// Full command execution: parse, run, write. Returns the process exit code.
/// env_format is the value of SOLVEXT_DEFAULT_FORMAT (nullptr when unset).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const char* env_format);

nlohmann::json spec_to_json(const models::ModelSpec& spec);

struct Check {
    std::string name;
    bool pass = false;
    double metric = 0.0;
    double tolerance = 0.0;
    nlohmann::json details = nlohmann::json::object();
};

/// All verification checks for one spec, sorted by name. Sub-checks run
/// concurrently; the merge order does not depend on scheduling.
std::vector<Check> run_checks(const models::ModelSpec& spec, const spectral::Grid& grid,
                              std::optional<int> nmax, double tolerance);

nlohmann::json report_to_json(const models::ModelSpec& spec, const std::vector<Check>& checks);

}  // namespace solvext::cli
