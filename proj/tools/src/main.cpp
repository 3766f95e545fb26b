// flowlab: run registered flow experiments from JSON configs.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "flowlab/errors.hpp"
#include "runner.hpp"

namespace {

namespace fs = std::filesystem;
using namespace flowlab::cli;

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

// A path on disk, else the name of a registered scenario.
ScenarioConfig resolve(const std::string& arg) {
    if (fs::exists(arg)) return load_config(arg);
    if (auto text = bundled_config(arg)) return parse_config(std::string(*text));
    throw ConfigError("no such config file or scenario: " + arg);
}

int do_run(const std::string& arg, bool strict, std::string out_dir, bool quiet) {
    ScenarioConfig cfg;
    try {
        cfg = resolve(arg);
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    if (out_dir.empty()) {
        const char* env = std::getenv("FLOWLAB_OUT");
        if (cfg.output_dir) out_dir = cfg.output_dir->string();
        else if (env && *env) out_dir = env;
        else out_dir = "flowlab-out";
    }

    RunResult res;
    try {
        res = run_scenario(cfg, {out_dir, quiet});
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const flowlab::Error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    }

    if (!quiet) {
        const auto& s = res.summary;
        std::cout << cfg.scenario << ": " << s.value("status", std::string("-")) << '\n';
        for (const auto& [k, v] : s["metrics"].items()) std::cout << "  " << k << " = " << v.dump() << '\n';
        for (const auto& [k, v] : s["verdicts"].items())
            std::cout << "  [" << (v.get<bool>() ? "ok" : "FAILED") << "] " << k << '\n';
        std::cout << "wrote " << res.files.size() << " files to " << out_dir << '\n';
    }
    return strict && !res.verdicts_ok ? kVerdictFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normalized Ricci flow experiments on the disk and the cylinder"};
    app.require_subcommand(1);

    std::string target;
    std::string out_dir;
    bool strict = false;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "Run a config file or a registered scenario's bundled config");
    run->add_option("config", target, "Config path, or a scenario name from 'flowlab list'")->required();
    run->add_flag("--strict", strict, "Exit 1 when a verdict fails");
    run->add_option("--out-dir", out_dir, "Output directory (default: output.directory, then $FLOWLAB_OUT)");
    run->add_flag("--quiet", quiet, "Print nothing on success");

    auto* list = app.add_subcommand("list", "List registered scenarios");

    std::string show_name;
    auto* show = app.add_subcommand("show", "Print the bundled config of a scenario");
    show->add_option("scenario", show_name, "Scenario name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    if (*list) {
        for (const auto& s : registry()) std::cout << s.name << "\t" << s.description << '\n';
        return kOk;
    }
    if (*show) {
        auto text = bundled_config(show_name);
        if (!text) {
            std::cerr << "unknown scenario: " << show_name << '\n';
            return kConfigError;
        }
        std::cout << *text;
        return kOk;
    }
    return do_run(target, strict, out_dir, quiet);
}
