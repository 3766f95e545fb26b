#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace flowlab::cli {

namespace {

using nlohmann::json;

// Reads keys from one JSON object and remembers which were consumed so
// leftovers can be rejected.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + " must be an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    double number(const std::string& key, double fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(where(key) + " must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(where(key) + " must be finite");
        return d;
    }

    int integer(const std::string& key, int fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
        return v.get<int>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(where(key) + " must be a string");
        return v.get<std::string>();
    }

    std::string required_string(const std::string& key) {
        if (!has(key)) throw ConfigError(where(key) + " is required");
        return string(key, {});
    }

    std::vector<std::string> strings(const std::string& key) {
        std::vector<std::string> out;
        if (!take(key)) return out;
        const json& v = j_.at(key);
        if (!v.is_array()) throw ConfigError(where(key) + " must be an array of strings");
        for (const auto& e : v) {
            if (!e.is_string()) throw ConfigError(where(key) + " must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    // Strings are accepted only when `labels` is given.
    Params params(const std::string& key, Labels* labels = nullptr) {
        Params out;
        if (!take(key)) return out;
        const json& v = j_.at(key);
        if (!v.is_object()) throw ConfigError(where(key) + " must be an object");
        for (const auto& [k, e] : v.items()) {
            if (labels && e.is_string()) {
                (*labels)[k] = e.get<std::string>();
            } else if (e.is_boolean()) {
                out[k] = e.get<bool>() ? 1.0 : 0.0;
            } else if (e.is_number() && std::isfinite(e.get<double>())) {
                out[k] = e.get<double>();
            } else {
                throw ConfigError(where(key) + "." + k + " must be a number or boolean");
            }
        }
        return out;
    }

    std::optional<Section> sub(const std::string& key) {
        if (!take(key)) return std::nullopt;
        return Section(j_.at(key), where(key));
    }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!used_.count(k)) throw ConfigError("unknown key " + where(k));
    }

private:
    bool take(const std::string& key) {
        if (!j_.contains(key)) return false;
        used_.insert(key);
        return true;
    }
    std::string where() const { return path_.empty() ? std::string("config") : path_; }
    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

void check_params(const Params& p, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [k, v] : p)
        if (!allowed.count(k)) throw ConfigError("unknown parameter " + where + "." + k);
}

const std::set<std::string> kTraces{"sup_inf", "curvature", "ln_distance", "final_field"};

void validate_initial(const InitialSection& in) {
    if (in.file) return;
    if (in.builtin == "steady") return check_params(in.params, {"boundary"}, "initial.params");
    if (in.builtin == "constant") return check_params(in.params, {"value"}, "initial.params");
    if (in.builtin == "bump") {
        check_params(in.params, {"eps0", "beta", "margin"}, "initial.params");
        const double eps0 = param(in.params, "eps0", 0.1);
        require(eps0 > 0.0 && eps0 < 1.0, "initial.params.eps0 must lie in (0, 1)");
        return;
    }
    if (in.builtin == "steady-radial") {
        check_params(in.params, {"b", "closed_form"}, "initial.params");
        const double b = param(in.params, "b", 0.5);
        require(b > 0.0 && b < 1.0, "initial.params.b must lie in (0, 1)");
        return;
    }
    throw ConfigError("unknown initial builtin '" + in.builtin + "'");
}

void validate_boundary(const BoundarySection& b) {
    if (b.mode == "dirichlet") {
        if (b.schedule == "log-shift" || b.schedule == "loglog")
            return check_params(b.params, {}, "boundary.params");
        if (b.schedule == "power") {
            check_params(b.params, {"alpha"}, "boundary.params");
            const double a = param(b.params, "alpha", 0.5);
            require(a > 0.0 && a < 1.0, "boundary.params.alpha must lie in (0, 1)");
            return;
        }
        if (b.schedule == "fast-growth") {
            check_params(b.params, {"y0"}, "boundary.params");
            require(param(b.params, "y0", 1.0) > 0.0, "boundary.params.y0 must be positive");
            return;
        }
        if (b.schedule == "constant") return check_params(b.params, {"value"}, "boundary.params");
        throw ConfigError("unknown dirichlet schedule '" + b.schedule + "'");
    }
    if (b.mode == "curvature") {
        if (b.schedule == "compatible-constant") return check_params(b.params, {}, "boundary.params");
        if (b.schedule == "relax") return check_params(b.params, {"psi_inf", "rate"}, "boundary.params");
        if (b.schedule == "constant") return check_params(b.params, {"value"}, "boundary.params");
        if (b.schedule == "window") {
            check_params(b.params, {"y0", "placement"}, "boundary.params");
            require(param(b.params, "y0", 1.0) > 0.0, "boundary.params.y0 must be positive");
            const double pl = param(b.params, "placement", 0.5);
            require(pl >= 0.0 && pl <= 1.0, "boundary.params.placement must lie in [0, 1]");
            return;
        }
        throw ConfigError("unknown curvature schedule '" + b.schedule + "'");
    }
    throw ConfigError("boundary.mode must be 'dirichlet' or 'curvature'");
}

}  // namespace

double param(const Params& p, const std::string& name, double fallback) {
    auto it = p.find(name);
    return it == p.end() ? fallback : it->second;
}

std::string label(const Labels& l, const std::string& name, const std::string& fallback) {
    auto it = l.find(name);
    return it == l.end() ? fallback : it->second;
}

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "parse error at line L, column C".
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }

    ScenarioConfig cfg;
    cfg.base_dir = base_dir;
    Section root(doc, "");
    cfg.scenario = root.required_string("scenario");

    if (auto d = root.sub("domain")) {
        cfg.domain.kind = d->string("kind", cfg.domain.kind);
        cfg.domain.L = d->number("L", cfg.domain.L);
        cfg.domain.n_r = d->integer("n_r", cfg.domain.n_r);
        cfg.domain.n_theta = d->integer("n_theta", cfg.domain.n_theta);
        d->finish();
    }
    require(cfg.domain.kind == "disk" || cfg.domain.kind == "cylinder", "domain.kind must be 'disk' or 'cylinder'");
    require(cfg.domain.n_r >= 8, "domain.n_r must be at least 8");
    require(cfg.domain.n_theta >= 1, "domain.n_theta must be positive");
    require(cfg.domain.L > 0.0, "domain.L must be positive");

    if (auto s = root.sub("initial")) {
        const bool has_file = s->has("file");
        if (has_file) {
            require(!s->has("builtin") && !s->has("params"), "initial takes either 'file' or 'builtin'");
            cfg.initial.file = base_dir / s->string("file", {});
        }
        cfg.initial.builtin = s->string("builtin", cfg.initial.builtin);
        cfg.initial.params = s->params("params");
        s->finish();
    }
    validate_initial(cfg.initial);

    if (auto s = root.sub("boundary")) {
        cfg.boundary.mode = s->string("mode", cfg.boundary.mode);
        cfg.boundary.schedule = s->string("schedule", cfg.boundary.schedule);
        cfg.boundary.params = s->params("params");
        s->finish();
    }
    validate_boundary(cfg.boundary);

    if (auto s = root.sub("time")) {
        auto& t = cfg.time;
        t.dt0 = s->number("dt0", t.dt0);
        t.t_end = s->number("t_end", t.t_end);
        t.du_max = s->number("du_max", t.du_max);
        t.dt_max = s->number("dt_max", t.dt_max);
        t.snapshot_stride = s->integer("snapshot_stride", t.snapshot_stride);
        t.snapshot_interval = s->number("snapshot_interval", t.snapshot_interval);
        t.blowdown_drop = s->number("blowdown_drop", t.blowdown_drop);
        s->finish();
        require(t.dt0 > 0.0, "time.dt0 must be positive");
        require(t.t_end >= 0.0, "time.t_end must be non-negative");
        require(t.du_max > 0.0, "time.du_max must be positive");
        require(t.dt_max >= t.dt0, "time.dt_max must be at least dt0");
        require(t.snapshot_stride >= 1, "time.snapshot_stride must be positive");
        require(t.snapshot_interval >= 0.0, "time.snapshot_interval must be non-negative");
        require(t.blowdown_drop > 0.0, "time.blowdown_drop must be positive");
    }

    if (auto s = root.sub("diagnostics")) {
        auto& d = cfg.diagnostics;
        d.traces = s->strings("traces");
        d.source = s->string("source", d.source);
        if (auto c = s->sub("compact")) {
            d.disk_rmax = c->number("disk_rmax", d.disk_rmax);
            d.cylinder_lo = c->number("cylinder_lo", d.cylinder_lo);
            d.cylinder_hi = c->number("cylinder_hi", d.cylinder_hi);
            c->finish();
        }
        s->finish();
        for (const auto& t : d.traces)
            if (!kTraces.count(t)) throw ConfigError("unknown trace '" + t + "' in diagnostics.traces");
        require(d.source == "snapshots" || d.source == "steps", "diagnostics.source must be 'snapshots' or 'steps'");
        require(d.disk_rmax > 0.0 && d.disk_rmax < 1.0, "diagnostics.compact.disk_rmax must lie in (0, 1)");
        require(d.cylinder_lo > 0.0 && d.cylinder_lo <= d.cylinder_hi && d.cylinder_hi < 1.0,
                "diagnostics.compact cylinder bounds must satisfy 0 < lo <= hi < 1");
    } else {
        cfg.diagnostics.traces = {"sup_inf", "curvature"};
    }

    cfg.scenario_params = root.params("scenario_params", &cfg.scenario_labels);

    if (auto s = root.sub("output")) {
        if (s->has("directory")) cfg.output_dir = s->string("directory", {});
        s->finish();
    }
    root.finish();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    try {
        return parse_config(ss.str(), path.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace flowlab::cli
