#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "config.hpp"
#include "runner.hpp"

using namespace flowlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "flowlab-cli-test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string message_of(const std::string& text) {
    try {
        validate(parse_config(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

ScenarioConfig bundled(const std::string& name) { return parse_config(std::string(*bundled_config(name))); }

int exit_code(const std::string& args) {
    const std::string cmd = std::string(FLOWLAB_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Defaults) {
    const ScenarioConfig c = parse_config(R"({"scenario": "cd-lowspeed"})");
    EXPECT_EQ(c.domain.kind, "disk");
    EXPECT_EQ(c.domain.n_r, 1024);
    EXPECT_EQ(c.boundary.schedule, "log-shift");
    EXPECT_EQ(c.diagnostics.traces, (std::vector<std::string>{"sup_inf", "curvature"}));
    EXPECT_FALSE(c.output_dir);
    EXPECT_EQ(param(c.scenario_params, "missing", 4.5), 4.5);
    EXPECT_EQ(label(c.scenario_labels, "missing", "x"), "x");
}

TEST(Config, Errors) {
    EXPECT_NE(message_of("{\"scenario\": \n  \"ln-disk\",, }").find("malformed JSON"), std::string::npos);
    EXPECT_NE(message_of("{\"scenario\": \n  \"ln-disk\",, }").find("line 2"), std::string::npos);
    EXPECT_NE(message_of(R"({"scenario": "ln-disk", "colour": 1})").find("unknown key"), std::string::npos);
    EXPECT_NE(message_of(R"({"scenario": "ln-disk", "time": {"t_end": 1, "dtt": 2}})").find("dtt"),
              std::string::npos);
    EXPECT_FALSE(message_of(R"({"scenario": "no-such-thing"})").empty());
    EXPECT_FALSE(message_of(R"({"scenario": "cd-lowspeed", "domain": {"kind": "torus"}})").empty());
    EXPECT_FALSE(message_of(R"({"scenario": "cd-lowspeed", "domain": {"n_r": "many"}})").empty());
    EXPECT_FALSE(message_of(R"({"scenario": "cd-lowspeed", "boundary": {"schedule": "power", "params": {"alpha": 1.5}}})")
                     .empty());
    EXPECT_FALSE(message_of(R"({"scenario": "cd-lowspeed", "diagnostics": {"traces": ["bogus"]}})").empty());
    EXPECT_FALSE(message_of(R"({"scenario": "ln-disk", "scenario_params": {"swap": true}})").empty());
    EXPECT_FALSE(message_of(R"([1, 2])").empty());
    EXPECT_THROW(load_config("/nonexistent/flowlab.json"), ConfigError);
}

TEST(Config, RelativeFilesResolveAgainstConfigDir) {
    const ScenarioConfig c =
        parse_config(R"({"scenario": "cd-lowspeed", "initial": {"file": "u0.csv"}})", fs::path("/data/runs"));
    ASSERT_TRUE(c.initial.file);
    EXPECT_EQ(*c.initial.file, fs::path("/data/runs/u0.csv"));
}

TEST(Registry, EveryScenarioShipsAValidConfig) {
    std::set<std::string> names;
    for (const auto& s : registry()) {
        names.insert(s.name);
        EXPECT_FALSE(s.description.empty());
        ASSERT_TRUE(bundled_config(s.name)) << s.name;
        const ScenarioConfig c = bundled(s.name);
        EXPECT_EQ(c.scenario, s.name);
        EXPECT_NO_THROW(validate(c)) << s.name;
    }
    EXPECT_GE(names.size(), 7u);
    for (const char* n : {"ln-disk", "cd-lowspeed", "cd-fastgrowth", "divergence-sec2", "steady-counterexample-sec3",
                          "comparison-pair", "main-theorem-window"})
        EXPECT_TRUE(names.count(n)) << n;
    EXPECT_FALSE(bundled_config("nope"));
}

TEST(Runner, WritesFilesDeterministically) {
    ScenarioConfig c = bundled("comparison-pair");
    c.time.t_end = 1.0;
    const fs::path a = scratch_dir("a"), b = scratch_dir("b");
    const RunResult ra = run_scenario(c, {a, true});
    const RunResult rb = run_scenario(c, {b, true});
    EXPECT_TRUE(ra.verdicts_ok);
    ASSERT_FALSE(ra.files.empty());
    ASSERT_EQ(ra.files.size(), rb.files.size());
    EXPECT_TRUE(fs::exists(a / "summary.json"));
    for (std::size_t k = 0; k < ra.files.size(); ++k) {
        ASSERT_TRUE(fs::exists(ra.files[k]));
        EXPECT_EQ(slurp(ra.files[k]), slurp(rb.files[k])) << ra.files[k];
    }
    EXPECT_EQ(ra.summary["scenario"], "comparison-pair");
    EXPECT_TRUE(ra.summary["passed"].get<bool>());
}

TEST(Runner, SwappedPairFailsItsVerdict) {
    ScenarioConfig c = bundled("comparison-pair");
    c.time.t_end = 0.5;
    c.scenario_params["swap"] = 1.0;
    const RunResult r = run_scenario(c, {scratch_dir("swap"), true});
    EXPECT_FALSE(r.verdicts_ok);
    EXPECT_FALSE(r.summary["verdicts"]["ordered"].get<bool>());
}

TEST(Binary, ExitCodes) {
    const fs::path dir = scratch_dir("bin");
    EXPECT_EQ(exit_code("list"), 0);
    EXPECT_EQ(exit_code("show ln-disk"), 0);
    EXPECT_EQ(exit_code("show nope"), 2);
    EXPECT_EQ(exit_code("frobnicate"), 2);
    EXPECT_EQ(exit_code("run no-such-scenario"), 2);

    std::ofstream(dir / "bad.json") << "{\"scenario\": ";
    EXPECT_EQ(exit_code("run " + (dir / "bad.json").string()), 2);

    std::ofstream(dir / "swap.json")
        << R"({"scenario": "comparison-pair", "domain": {"n_r": 128}, "time": {"t_end": 0.3},
               "scenario_params": {"swap": true}})";
    EXPECT_EQ(exit_code("run --quiet --out-dir " + (dir / "o1").string() + " " + (dir / "swap.json").string()), 0);
    EXPECT_EQ(exit_code("run --strict --quiet --out-dir " + (dir / "o2").string() + " " + (dir / "swap.json").string()),
              1);

    std::ofstream(dir / "exhaust.json")
        << R"({"scenario": "ln-disk", "domain": {"n_r": 256}, "scenario_params": {"stop_delta": 1e-9, "n_max": 3}})";
    EXPECT_EQ(exit_code("run --quiet --out-dir " + (dir / "o3").string() + " " + (dir / "exhaust.json").string()), 3);
}
