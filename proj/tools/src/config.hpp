#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowlab::cli {

// Anything wrong with the configuration itself; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DomainSection {
    std::string kind = "disk";
    double L = 3.141592653589793;
    int n_r = 1024;
    int n_theta = 1;
};

// Flat numeric parameter bag; the builtin decides which names it accepts.
using Params = std::map<std::string, double>;
using Labels = std::map<std::string, std::string>;

struct InitialSection {
    std::string builtin = "steady";
    Params params;
    std::optional<std::filesystem::path> file;
};

struct BoundarySection {
    std::string mode = "dirichlet";
    std::string schedule = "log-shift";
    Params params;
};

struct TimeSection {
    double dt0 = 1e-3;
    double t_end = 1.0;
    double du_max = 0.05;
    double dt_max = 0.25;
    int snapshot_stride = 1;
    double snapshot_interval = 0.0;
    double blowdown_drop = 20.0;
};

struct DiagnosticsSection {
    std::vector<std::string> traces;
    std::string source = "snapshots";
    double disk_rmax = 0.9;
    double cylinder_lo = 0.25;
    double cylinder_hi = 0.75;
};

struct ScenarioConfig {
    std::string scenario;
    DomainSection domain;
    InitialSection initial;
    BoundarySection boundary;
    TimeSection time;
    DiagnosticsSection diagnostics;
    Params scenario_params;
    // String-valued entries of scenario_params.
    Labels scenario_labels;
    std::optional<std::filesystem::path> output_dir;
    // Directory used to resolve relative file references.
    std::filesystem::path base_dir;
};

// Parses and validates a config document. Errors carry a JSON path, or the
// line and column for syntax errors.
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

// Value of a scenario parameter, or `fallback` when absent.
double param(const Params& p, const std::string& name, double fallback);
std::string label(const Labels& l, const std::string& name, const std::string& fallback);

}  // namespace flowlab::cli
