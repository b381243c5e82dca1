#pragma once

#include <map>
#include <string>
#include <vector>

#include "advstab/experiments.hpp"

namespace advstab {

/// Parsed and schema-validated run configuration.
///
/// The on-disk format is human-editable key-value text with [section]
/// headers; values are scalars, names, or comma-separated lists. Keys not
/// in the schema are rejected. A canonical JSON echo of every parsed config
/// is written beside the run outputs for machine consumption.
class RunConfig {
public:
    /// Parse from text; `origin` only decorates error messages.
    static RunConfig parse(const std::string& text, const std::string& origin = "config");
    static RunConfig parse_file(const std::string& path);

    const std::string& command() const { return command_; }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key, double fallback) const;
    std::vector<double> get_list(const std::string& key, std::vector<double> fallback) const;

    /// Canonical key-value text (sorted sections/keys, normalized spacing).
    std::string to_config_text() const;
    /// Canonical JSON echo.
    std::string to_json() const;

    /// Assemble the sweep description for command = experiment.
    SweepSpec to_sweep_spec() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::string command_;
    std::map<std::string, std::string> entries_; ///< "section.key" -> raw value

    void validate() const;
};

struct RunOptions {
    std::string out_dir = ".";
    int jobs = 1;
    std::uint64_t seed = 0; ///< 0 = keep the config's seed
    bool plot_svg = false;
};

/// Execute a parsed config: writes artifacts into out_dir and returns the
/// process exit code (0 ok, 1 validation failure, 2 numerical failure).
int run_config(const RunConfig& config, const RunOptions& options);

/// Headless invariant suites for `check`; returns 0 when every invariant
/// holds, 1 otherwise, printing one line per invariant.
int run_check_suite(const std::string& suite);

} // namespace advstab
