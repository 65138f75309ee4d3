#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shishkin/analysis.hpp"
#include "shishkin/error.hpp"
#include "shishkin/problem.hpp"

namespace shishkin {

/// Malformed configuration; carries the 1-based line (0 when not tied to a line).
class ConfigError : public Error {
public:
    ConfigError(std::size_t line, const std::string& what) : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class OutputFormat { Csv, Table, Gnuplot };

/// Everything a CLI run needs. Every field has a default; see README for keys.
struct RunConfig {
    std::string problem = "P1";  ///< builtin name, fixture name, or "custom"
    std::optional<std::size_t> n;
    std::optional<std::vector<double>> epsilon;
    std::optional<double> alpha;  ///< absent means "auto"
    bool alpha_auto = false;
    std::map<std::pair<std::size_t, std::size_t>, std::string> a_entries;  ///< 1-based (i, j)
    std::map<std::size_t, std::string> f_entries;                          ///< 1-based i
    std::optional<std::vector<double>> u_left;
    std::optional<std::vector<double>> u_right;

    std::size_t N = 64;
    std::vector<std::size_t> Ns = {64, 128, 256, 512};
    std::optional<ErrorMode> mode;  ///< absent: exact when a closed form exists
    std::vector<std::vector<double>> epsilon_grid;
    std::map<std::size_t, std::vector<double>> epsilon_grid_components;

    int samples = kDefaultSamples;
    std::uint64_t seed = 20240521;
    std::size_t trials = 1000;
    double growth_factor = 1.5;
    bool allow_large_epsilon = false;
    bool debug_dump = false;
    std::string out = ".";
    OutputFormat format = OutputFormat::Table;
};

/// Parses `key = value` lines; `#` starts a comment; values may be quoted.
/// Unknown keys, duplicates and malformed values raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Applies one key/value pair (shared by the file parser and tests).
void set_config_value(RunConfig& config, const std::string& key, const std::string& value, std::size_t line = 0);

std::vector<double> parse_real_list(const std::string& text);

/// Builds the problem the config describes, including epsilon/alpha overrides.
NamedProblem resolve_problem(const RunConfig& config);

/// The sweep grid: explicit epsilon_grid entries plus the product of the
/// per-component lists.
std::vector<std::vector<double>> resolve_epsilon_grid(const RunConfig& config);

std::optional<OutputFormat> parse_format(std::string_view s);

}  // namespace shishkin
