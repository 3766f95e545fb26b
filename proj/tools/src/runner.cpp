#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "bundled_configs.hpp"
#include "flowlab/diagnostics.hpp"
#include "flowlab/elliptic.hpp"
#include "flowlab/errors.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/geometry.hpp"
#include "flowlab/scenarios.hpp"

namespace flowlab::cli {

namespace {

using nlohmann::ordered_json;

struct Entry {
    ScenarioInfo info;
    std::set<std::string> params;
    std::set<std::string> labels;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list{
        {{"ln-disk", "Loewner-Nirenberg ladder on the disk or cylinder against the closed form"},
         {"stop_delta", "n_max", "tol"},
         {}},
        {{"cd-lowspeed", "Dirichlet flow with slowly growing boundary data; curvature tends to 1"},
         {"curvature_tol", "settle_max", "ln_tol"},
         {}},
        {{"cd-fastgrowth", "Dirichlet flow with phi = y(t), y' = 3y + 1; lower curvature bound"}, {"fit_from"}, {}},
        {{"divergence-sec2", "Curvature flow with psi <= 1 + eps0 from a low bump; blows down"},
         {"slope_t0", "slope_t1", "slope_lo", "slope_hi"},
         {}},
        {{"steady-counterexample-sec3", "Curvature data decreasing to 1 from a steady start; never reaches u_LN"},
         {"ceiling_tol", "gap_min"},
         {}},
        {{"comparison-pair", "Two ordered runs in lockstep; checks u1 <= u2 (swap to violate)"},
         {"u0_shift", "data_shift", "swap", "tol"},
         {}},
        {{"main-theorem-window", "Curvature flow with psi inside the window between u1's curvature and y^(1/3) - 2"},
         {"ln_tol", "sandwich_tol", "u1_alpha"},
         {"u1_schedule"}},
    };
    return list;
}

const Entry* find_entry(const std::string& name) {
    for (const auto& e : entries())
        if (e.info.name == name) return &e;
    return nullptr;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

// ---------------------------------------------------------------- setup

BackgroundMetric make_background(const DomainSection& d) {
    if (d.kind == "disk") return make_disk(d.n_r, d.n_theta);
    return make_cylinder(d.L, d.n_r, d.n_theta);
}

// Reads an r,theta,u file written by write_csv and checks it against the grid.
Field read_field(const BackgroundMetric& bg, const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read initial field " + path.string());
    std::string line;
    std::getline(is, line);
    if (line != "r,theta,u") throw ConfigError(path.string() + ": expected header r,theta,u");
    Field u(bg, 0.0);
    std::size_t k = 0;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        double v[3];
        char comma = 0;
        if (!(ss >> v[0] >> comma >> v[1] >> comma >> v[2]))
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": malformed row");
        if (k >= u.size()) throw ConfigError(path.string() + ": more rows than grid nodes");
        const int i = static_cast<int>(k) / bg.n_theta();
        const int j = static_cast<int>(k) % bg.n_theta();
        if (std::abs(v[0] - bg.r(i)) > 1e-9 || std::abs(v[1] - j * bg.dtheta()) > 1e-9)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": node does not match the grid");
        u[k++] = v[2];
    }
    if (k != u.size())
        throw ConfigError(path.string() + ": expected " + std::to_string(u.size()) + " rows, got " + std::to_string(k));
    return u;
}

Field make_initial(const BackgroundMetric& bg, const InitialSection& in) {
    if (in.file) return read_field(bg, *in.file);
    const auto& p = in.params;
    if (in.builtin == "steady") return solve_liouville_dirichlet(bg, param(p, "boundary", 0.0), Field(bg, 0.0));
    if (in.builtin == "constant") return Field(bg, param(p, "value", 0.0));
    if (in.builtin == "bump")
        return divergence_example(bg, param(p, "eps0", 0.1), param(p, "beta", 0.25), param(p, "margin", 0.05)).u0;
    return steady_radial_example(bg, param(p, "b", 0.5), param(p, "closed_form", 0.0) != 0.0).u0;
}

// Boundary curvature of u, indexed [component][angle].
std::vector<std::vector<double>> curvature_of(const BackgroundMetric& bg, const Field& u) {
    std::vector<std::vector<double>> k;
    for (const auto& c : bg.boundary_components()) k.push_back(geodesic_curvature_conformal(bg, u, c.id));
    return k;
}

BoundarySpec curvature_from_nodes(std::function<double(double k0, double t)> f, std::vector<std::vector<double>> k0) {
    BoundarySpec bc;
    bc.mode = BoundaryMode::Curvature;
    bc.schedule = [f = std::move(f), k0 = std::move(k0)](int c, int j, double t) { return f(k0[c][j], t); };
    return bc;
}

BoundarySpec make_boundary(const BackgroundMetric& bg, const BoundarySection& b, const Field& u0) {
    const auto& p = b.params;
    if (b.mode == "dirichlet") {
        if (b.schedule == "log-shift") return low_speed_phi(LowSpeedKind::LogShift);
        if (b.schedule == "power") return low_speed_phi(LowSpeedKind::Power, param(p, "alpha", 0.5));
        if (b.schedule == "loglog") return low_speed_phi(LowSpeedKind::LogLog);
        if (b.schedule == "fast-growth") return fast_growth_phi(fast_growth_y(param(p, "y0", 1.0)));
        const double v = param(p, "value", 0.0);
        return BoundarySpec::dirichlet([v](double) { return v; }, [](double) { return 0.0; });
    }
    if (b.schedule == "compatible-constant")
        return curvature_from_nodes([](double k0, double) { return k0; }, curvature_of(bg, u0));
    if (b.schedule == "relax") {
        const double inf = param(p, "psi_inf", 1.0);
        const double rate = param(p, "rate", 1.0);
        return curvature_from_nodes([inf, rate](double k0, double t) { return inf + (k0 - inf) * std::exp(-rate * t); },
                                    curvature_of(bg, u0));
    }
    const double v = param(p, "value", 1.0);
    return BoundarySpec::curvature([v](double) { return v; });
}

FlowConfig make_flow(const BackgroundMetric& bg, const Field& u0, BoundarySpec bc, const TimeSection& t) {
    FlowConfig c{bg, u0, std::move(bc)};
    c.dt0 = t.dt0;
    c.t_end = t.t_end;
    c.du_max = t.du_max;
    c.dt_max = t.dt_max;
    c.snapshot_stride = t.snapshot_stride;
    c.snapshot_interval = t.snapshot_interval;
    c.blowdown_drop = t.blowdown_drop;
    return c;
}

Field ln_reference(const BackgroundMetric& bg) {
    if (bg.kind() == DomainKind::Disk) return Field::radial(bg, exact_disk_ln);
    return Field::radial(bg, exact_cylinder_ln(bg.length()));
}

CompactRegion region_of(const DiagnosticsSection& d) { return {d.disk_rmax, d.cylinder_lo, d.cylinder_hi}; }

// ---------------------------------------------------------------- output

// JSON has no NaN or infinity; they become null or a string.
ordered_json num(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

ordered_json num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

class Emitter {
public:
    Emitter(const ScenarioConfig& cfg, const RunOptions& opts, RunResult& res)
        : cfg_(cfg), opts_(opts), res_(res) {
        std::error_code ec;
        std::filesystem::create_directories(opts.out_dir, ec);
        if (ec) throw IoError("cannot create output directory " + opts.out_dir.string() + ": " + ec.message());
    }

    bool wants(const std::string& trace) const {
        const auto& t = cfg_.diagnostics.traces;
        return std::find(t.begin(), t.end(), trace) != t.end();
    }

    TraceSource source() const {
        return cfg_.diagnostics.source == "steps" ? TraceSource::Steps : TraceSource::Snapshots;
    }

    void series(const std::string& trace, const TimeSeries& s) {
        const auto path = opts_.out_dir / (cfg_.scenario + "." + trace + ".csv");
        write_csv(s, path);
        res_.files.push_back(path);
    }

    void field(const std::string& trace, const BackgroundMetric& bg, const Field& u) {
        const auto path = opts_.out_dir / (cfg_.scenario + "." + trace + ".csv");
        write_csv(bg, u, path);
        res_.files.push_back(path);
    }

    // Standard traces of one trajectory.
    void traces(const Trajectory& tr, const BackgroundMetric& bg) {
        if (wants("sup_inf")) {
            auto [sup, inf] = sup_inf_trace(tr, source());
            TimeSeries both{{"sup", "inf"}, {}, {}};
            for (std::size_t i = 0; i < sup.size(); ++i) both.push(sup.times[i], {sup.values[i][0], inf.values[i][0]});
            series("sup_inf", both);
        }
        if (wants("curvature")) series("curvature", merged_curvature(tr, bg));
        if (wants("ln_distance")) series("ln_distance", ln_distance_trace(tr, bg, ln_reference(bg), region_of(cfg_.diagnostics)));
        if (wants("final_field")) field("final_field", bg, tr.snapshots.back().u);
    }

    TimeSeries merged_curvature(const Trajectory& tr, const BackgroundMetric& bg) const {
        auto per = boundary_curvature_trace(tr, bg, source());
        TimeSeries out;
        for (std::size_t c = 0; c < per.size(); ++c) {
            out.columns.push_back("k" + std::to_string(c) + "_min");
            out.columns.push_back("k" + std::to_string(c) + "_max");
        }
        for (std::size_t i = 0; i < per[0].size(); ++i) {
            std::vector<double> row;
            for (const auto& s : per) row.insert(row.end(), s.values[i].begin(), s.values[i].end());
            out.push(per[0].times[i], std::move(row));
        }
        return out;
    }

private:
    const ScenarioConfig& cfg_;
    const RunOptions& opts_;
    RunResult& res_;
};

void describe_run(ordered_json& s, const Trajectory& tr) {
    s["status"] = to_string(tr.status);
    s["final_time"] = num(tr.final_time());
    s["steps"] = tr.steps.size();
    s["rejected_steps"] = tr.rejected_steps;
    s["compat_residual"] = num(tr.compat_residual);
    s["warnings"] = tr.warnings;
}

// ---------------------------------------------------------------- scenarios

struct Context {
    const ScenarioConfig& cfg;
    Emitter& out;
    ordered_json& metrics;
    ordered_json& verdicts;
    ordered_json& summary;
    const Params& p;
};

void run_ln(Context& cx, const BackgroundMetric& bg) {
    const int n_max = static_cast<int>(param(cx.p, "n_max", 30));
    LNSchedule sched;
    for (int N = 1; N <= n_max; ++N) sched.N_values.push_back(N);
    sched.stop_delta = param(cx.p, "stop_delta", 1e-4);
    const double tol = param(cx.p, "tol", 1e-4);
    LNResult ln = loewner_nirenberg(bg, sched, {}, true);

    cx.summary["status"] = "LadderConverged";
    cx.metrics["level"] = num(ln.level);
    cx.metrics["last_delta"] = num(ln.last_delta);

    TimeSeries ladder{{"interior_change"}, {}, {}};
    for (std::size_t k = 0; k < ln.deltas.size(); ++k) ladder.push(sched.N_values[k + 1], {ln.deltas[k]});
    cx.out.series("ln_ladder", ladder);
    cx.out.field("ln_profile", bg, ln.u);

    double worst_drop = 0.0;
    for (std::size_t k = 1; k < ln.ladder.size(); ++k)
        for (std::size_t n = 0; n < ln.u.size(); ++n)
            worst_drop = std::max(worst_drop, ln.ladder[k - 1][n] - ln.ladder[k][n]);
    cx.metrics["ladder_max_decrease"] = num(worst_drop);
    cx.verdicts["ladder_monotone"] = worst_drop <= 1e-8;

    double err = 0.0;
    const int half = bg.n_r() / 2;
    if (bg.kind() == DomainKind::Disk) {
        const double e0 = ln.u(0) - exact_disk_ln(0.0);
        const double eh = ln.u(half) - exact_disk_ln(bg.r(half));
        cx.metrics["u_center"] = num(ln.u(0));
        cx.metrics["error_center"] = num(e0);
        cx.metrics["u_at_r"] = num(ln.u(half));
        cx.metrics["r"] = num(bg.r(half));
        cx.metrics["error_at_r"] = num(eh);
        err = std::max(std::abs(e0), std::abs(eh));
    } else {
        const double em = ln.u(half) - exact_cylinder_ln(bg.length())(bg.r(half));
        cx.metrics["u_mid"] = num(ln.u(half));
        cx.metrics["error_mid"] = num(em);
        err = std::abs(em);
    }
    cx.verdicts["matches_closed_form"] = err <= tol;
}

void run_lowspeed(Context& cx, const BackgroundMetric& bg, const FlowConfig& fc) {
    Trajectory tr = run(fc);
    describe_run(cx.summary, tr);
    cx.out.traces(tr, bg);

    const double tol = param(cx.p, "curvature_tol", 0.05);
    const TimeSeries k = cx.out.merged_curvature(tr, bg);
    auto settle = settling_time(k, [tol](const std::vector<double>& row) {
        return std::all_of(row.begin(), row.end(), [tol](double v) { return std::abs(v - 1.0) <= tol; });
    });
    const auto& last = k.values.back();
    cx.metrics["curvature_settling_time"] = num(settle);
    cx.metrics["final_k_min"] = num(*std::min_element(last.begin(), last.end()));
    cx.metrics["final_k_max"] = num(*std::max_element(last.begin(), last.end()));
    cx.verdicts["curvature_tends_to_one"] =
        tr.status == TerminationStatus::ReachedHorizon && settle && *settle <= param(cx.p, "settle_max", 100.0);

    const TimeSeries lnd = ln_distance_trace(tr, bg, ln_reference(bg), region_of(cx.cfg.diagnostics));
    cx.metrics["final_ln_distance"] = num(lnd.values.back()[0]);
    if (cx.p.count("ln_tol")) cx.verdicts["ln_converged"] = lnd.values.back()[0] <= cx.p.at("ln_tol");
}

void run_fastgrowth(Context& cx, const BackgroundMetric& bg, const FlowConfig& fc) {
    Trajectory tr = run(fc);
    describe_run(cx.summary, tr);
    cx.out.traces(tr, bg);
    const TimeSeries k = cx.out.merged_curvature(tr, bg);
    const auto y = fast_growth_y(param(cx.cfg.boundary.params, "y0", 1.0));
    auto phi = [&y](double t) { return y.value(t); };
    // Worst component: the smallest k_min over all circles.
    TimeSeries kmin{{"k_min"}, {}, {}};
    for (std::size_t i = 0; i < k.size(); ++i) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k.columns.size(); c += 2) m = std::min(m, k.values[i][c]);
        kmin.push(k.times[i], {m});
    }
    const FastGrowthFit fit = fit_fast_growth_constant(kmin, 0, phi, param(cx.p, "fit_from", 1.0));
    cx.metrics["C"] = num(fit.C);
    cx.metrics["worst_time"] = num(fit.worst_time);
    cx.metrics["worst_deficit"] = num(fit.worst_deficit);
    cx.metrics["samples"] = fit.samples;
    cx.verdicts["bound_with_finite_C"] =
        tr.status == TerminationStatus::ReachedHorizon && fit.samples > 0 && std::isfinite(fit.C);
}

void run_divergence(Context& cx, const BackgroundMetric& bg, const FlowConfig& fc) {
    Trajectory tr = run(fc);
    describe_run(cx.summary, tr);
    cx.out.traces(tr, bg);

    const auto& in = cx.cfg.initial.params;
    const double eps0 = param(in, "eps0", 0.1);
    cx.metrics["sup_u0"] = num(fc.u0.sup());
    cx.metrics["sup_boundary_u0"] = num(fc.u0(bg.n_r()));
    cx.metrics["psi"] = num(fc.bc.value(0, 0, 0.0));
    cx.metrics["psi_cap"] = num(1.0 + eps0);

    auto [sup, inf] = sup_inf_trace(tr, TraceSource::Steps);
    const double t0 = param(cx.p, "slope_t0", 1.0);
    const double t1 = param(cx.p, "slope_t1", 5.0);
    const double slope = least_squares_slope(sup, 0, t0, t1);
    double max_step_slope = -std::numeric_limits<double>::infinity();
    double prev_t = 0.0;
    double prev = fc.u0.sup();
    for (std::size_t i = 0; i < sup.size(); ++i) {
        max_step_slope = std::max(max_step_slope, (sup.values[i][0] - prev) / (sup.times[i] - prev_t));
        prev_t = sup.times[i];
        prev = sup.values[i][0];
    }
    cx.metrics["slope"] = num(slope);
    cx.metrics["slope_window"] = {t0, t1};
    cx.metrics["max_step_slope"] = num(max_step_slope);
    cx.verdicts["blowdown"] = tr.status == TerminationStatus::BlowDown;
    cx.verdicts["sup_slope_at_most_minus_one"] = max_step_slope <= -1.0;
    cx.verdicts["slope_in_band"] =
        std::isfinite(slope) && slope >= param(cx.p, "slope_lo", -1.05) && slope <= param(cx.p, "slope_hi", -0.95);
}

void run_counterexample(Context& cx, const BackgroundMetric& bg, const FlowConfig& fc) {
    Trajectory tr = run(fc);
    describe_run(cx.summary, tr);
    cx.out.traces(tr, bg);
    cx.metrics["psi0"] = num(fc.bc.value(0, 0, 0.0));

    double rise = -std::numeric_limits<double>::infinity();
    for (const auto& s : tr.snapshots)
        for (std::size_t k = 0; k < s.u.size(); ++k) rise = std::max(rise, s.u[k] - fc.u0[k]);
    const TimeSeries lnd = ln_distance_trace(tr, bg, ln_reference(bg), region_of(cx.cfg.diagnostics));
    const auto col = lnd.column(0);
    const double gap = *std::min_element(col.begin(), col.end());
    cx.metrics["max_rise_over_u0"] = num(rise);
    cx.metrics["min_ln_distance"] = num(gap);
    cx.verdicts["stays_below_u0"] = rise <= param(cx.p, "ceiling_tol", 1e-6);
    cx.verdicts["ln_gap"] = gap >= param(cx.p, "gap_min", 0.6);
}

BoundarySpec shifted(const BoundarySpec& bc, double d) {
    BoundarySpec out = bc;
    out.schedule = [s = bc.schedule, d](int c, int j, double t) { return s(c, j, t) - d; };
    return out;
}

void run_pair(Context& cx, const BackgroundMetric& bg, const FlowConfig& upper) {
    FlowConfig lower = upper;
    const double du = param(cx.p, "u0_shift", 0.1);
    for (auto& v : lower.u0.values()) v -= du;
    lower.bc = shifted(upper.bc, param(cx.p, "data_shift", 0.1));
    auto trs = run_lockstep({lower, upper});
    describe_run(cx.summary, trs[1]);
    cx.out.traces(trs[1], bg);

    const bool swap = param(cx.p, "swap", 0.0) != 0.0;
    const ComparisonReport rep = swap ? comparison_check(trs[1], trs[0], param(cx.p, "tol", 1e-6))
                                      : comparison_check(trs[0], trs[1], param(cx.p, "tol", 1e-6));
    TimeSeries gap{{"max_difference"}, {}, {}};
    for (std::size_t s = 0; s < trs[0].snapshots.size(); ++s) {
        const auto& a = trs[swap ? 1 : 0].snapshots[s].u;
        const auto& b = trs[swap ? 0 : 1].snapshots[s].u;
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, a[k] - b[k]);
        gap.push(trs[0].snapshots[s].t, {worst});
    }
    cx.out.series("comparison", gap);
    cx.metrics["swapped"] = swap;
    cx.metrics["max_violation"] = num(rep.max_violation);
    cx.metrics["first_violation_time"] = num(rep.first_violation_time);
    cx.verdicts["ordered"] = rep.ordered;
}

void run_window(Context& cx, const BackgroundMetric& bg, const FlowConfig& base) {
    const auto& bp = cx.cfg.boundary.params;
    const auto y = fast_growth_y(param(bp, "y0", 1.0));
    const double placement = param(bp, "placement", 0.5);

    const std::string u1_kind = label(cx.cfg.scenario_labels, "u1_schedule", "log-shift");
    FlowConfig c1 = base;
    if (u1_kind == "power")
        c1.bc = low_speed_phi(LowSpeedKind::Power, param(cx.p, "u1_alpha", 0.5));
    else if (u1_kind == "loglog")
        c1.bc = low_speed_phi(LowSpeedKind::LogLog);
    else
        c1.bc = low_speed_phi(LowSpeedKind::LogShift);

    // Curvature of u1's latest trial state, per angle.
    auto lower = std::make_shared<std::vector<double>>(geodesic_curvature_conformal(bg, base.u0, 0));
    FlowConfig cu = base;
    cu.bc.mode = BoundaryMode::Curvature;
    cu.bc.time_derivative = {};
    cu.bc.schedule = [lower, y, placement](int, int j, double t) {
        const double lo = (*lower)[j];
        const double up = window_upper(y, t);
        return up >= lo ? lo + placement * (up - lo) : lo;
    };

    FlowConfig c2 = base;
    c2.u0 = solve_liouville_dirichlet(bg, y.y0, base.u0);
    c2.bc = fast_growth_phi(y);

    auto trs = run_lockstep({c1, cu, c2}, [&bg, lower](std::size_t m, double, const Field& trial) {
        if (m == 0) *lower = geodesic_curvature_conformal(bg, trial, 0);
    });
    describe_run(cx.summary, trs[1]);
    cx.out.traces(trs[1], bg);

    const double tol = param(cx.p, "sandwich_tol", 1e-6);
    const ComparisonReport below = comparison_check(trs[0], trs[1], tol);
    const ComparisonReport above = comparison_check(trs[1], trs[2], tol);
    TimeSeries sandwich{{"u1_minus_u", "u_minus_u2"}, {}, {}};
    for (std::size_t s = 0; s < trs[1].snapshots.size(); ++s) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = lo;
        const auto& u = trs[1].snapshots[s].u;
        for (std::size_t k = 0; k < u.size(); ++k) {
            lo = std::max(lo, trs[0].snapshots[s].u[k] - u[k]);
            hi = std::max(hi, u[k] - trs[2].snapshots[s].u[k]);
        }
        sandwich.push(trs[1].snapshots[s].t, {lo, hi});
    }
    cx.out.series("sandwich", sandwich);

    const TimeSeries lnd = ln_distance_trace(trs[1], bg, ln_reference(bg), region_of(cx.cfg.diagnostics));
    const double ln_tol = param(cx.p, "ln_tol", 0.05);
    auto reached = settling_time(lnd, [ln_tol](const std::vector<double>& v) { return v[0] <= ln_tol; });
    const auto col = lnd.column(0);
    std::optional<double> opened;
    try {
        opened = psi_window(trs[0], y).first_nonempty;
    } catch (const EmptyWindow&) {
    }
    cx.metrics["u1_schedule"] = u1_kind;
    cx.metrics["placement"] = placement;
    cx.metrics["window_opens"] = num(opened);
    cx.metrics["ln_settling_time"] = num(reached);
    cx.metrics["min_ln_distance"] = num(*std::min_element(col.begin(), col.end()));
    cx.metrics["violation_u1_le_u"] = num(below.max_violation);
    cx.metrics["violation_u_le_u2"] = num(above.max_violation);
    cx.verdicts["converges_to_ln"] = reached.has_value() && trs[1].status == TerminationStatus::ReachedHorizon;
    cx.verdicts["sandwich"] = below.ordered && above.ordered;
}

}  // namespace

const std::vector<ScenarioInfo>& registry() {
    static const std::vector<ScenarioInfo> list = [] {
        std::vector<ScenarioInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return list;
}

std::optional<std::string_view> bundled_config(std::string_view name) {
    for (const auto& b : kBundledConfigs)
        if (b.name == name) return b.text;
    return std::nullopt;
}

void validate(const ScenarioConfig& cfg) {
    const Entry* e = find_entry(cfg.scenario);
    if (!e) throw ConfigError("unknown scenario '" + cfg.scenario + "' (see 'flowlab list')");
    for (const auto& [k, v] : cfg.scenario_params)
        require(e->params.count(k) > 0, "unknown parameter scenario_params." + k + " for " + cfg.scenario);
    for (const auto& [k, v] : cfg.scenario_labels)
        require(e->labels.count(k) > 0, "unknown parameter scenario_params." + k + " for " + cfg.scenario);

    const std::string& s = cfg.scenario;
    const bool disk = cfg.domain.kind == "disk";
    const auto& b = cfg.boundary;
    require(b.schedule != "window" || s == "main-theorem-window",
            "boundary schedule 'window' is only available in main-theorem-window");
    require(!((cfg.initial.builtin == "bump" || cfg.initial.builtin == "steady-radial") && !cfg.initial.file && !disk),
            "initial builtin '" + cfg.initial.builtin + "' needs a disk domain");
    if (s == "cd-lowspeed")
        require(b.mode == "dirichlet" && b.schedule != "fast-growth" && b.schedule != "constant",
                "cd-lowspeed needs a low-speed dirichlet schedule");
    if (s == "cd-fastgrowth")
        require(b.mode == "dirichlet" && b.schedule == "fast-growth", "cd-fastgrowth needs the fast-growth schedule");
    if (s == "divergence-sec2")
        require(disk && b.mode == "curvature" && cfg.initial.builtin == "bump" && !cfg.initial.file,
                "divergence-sec2 needs a disk, the bump initial data and curvature boundary data");
    if (s == "steady-counterexample-sec3")
        require(disk && b.mode == "curvature" && cfg.initial.builtin == "steady-radial" && !cfg.initial.file,
                "steady-counterexample-sec3 needs a disk, steady-radial initial data and curvature boundary data");
    if (s == "main-theorem-window") {
        require(disk && b.mode == "curvature" && b.schedule == "window",
                "main-theorem-window needs a disk and the 'window' curvature schedule");
        const std::string k = label(cfg.scenario_labels, "u1_schedule", "log-shift");
        require(k == "log-shift" || k == "power" || k == "loglog",
                "scenario_params.u1_schedule must be log-shift, power or loglog");
        const double a = param(cfg.scenario_params, "u1_alpha", 0.5);
        require(a > 0.0 && a < 1.0, "scenario_params.u1_alpha must lie in (0, 1)");
    }
    if (s == "comparison-pair") require(b.schedule != "window", "comparison-pair cannot use the window schedule");
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
    validate(cfg);
    RunResult res;
    BackgroundMetric bg;
    Field u0;
    BoundarySpec bc;
    try {
        bg = make_background(cfg.domain);
        if (cfg.scenario != "ln-disk") {
            u0 = make_initial(bg, cfg.initial);
            if (cfg.boundary.schedule != "window") bc = make_boundary(bg, cfg.boundary, u0);
        }
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    } catch (const GridError& e) {
        throw ConfigError(e.what());
    }

    Emitter out(cfg, opts, res);
    ordered_json& s = res.summary;
    s["scenario"] = cfg.scenario;
    s["domain"] = {{"kind", cfg.domain.kind}, {"n_r", cfg.domain.n_r}, {"n_theta", cfg.domain.n_theta}};
    if (cfg.domain.kind == "cylinder") s["domain"]["L"] = cfg.domain.L;
    ordered_json metrics = ordered_json::object();
    ordered_json verdicts = ordered_json::object();
    Context cx{cfg, out, metrics, verdicts, s, cfg.scenario_params};

    const FlowConfig fc = cfg.scenario == "ln-disk" ? FlowConfig{} : make_flow(bg, u0, bc, cfg.time);
    if (cfg.scenario == "ln-disk") run_ln(cx, bg);
    else if (cfg.scenario == "cd-lowspeed") run_lowspeed(cx, bg, fc);
    else if (cfg.scenario == "cd-fastgrowth") run_fastgrowth(cx, bg, fc);
    else if (cfg.scenario == "divergence-sec2") run_divergence(cx, bg, fc);
    else if (cfg.scenario == "steady-counterexample-sec3") run_counterexample(cx, bg, fc);
    else if (cfg.scenario == "comparison-pair") run_pair(cx, bg, fc);
    else run_window(cx, bg, fc);

    s["metrics"] = std::move(metrics);
    s["verdicts"] = verdicts;
    for (const auto& [k, v] : verdicts.items()) res.verdicts_ok = res.verdicts_ok && v.get<bool>();
    s["passed"] = res.verdicts_ok;
    ordered_json files = ordered_json::array();
    for (const auto& f : res.files) files.push_back(f.filename().string());
    s["files"] = files;

    const auto path = opts.out_dir / "summary.json";
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << s.dump(2) << '\n';
    os.flush();
    if (!os) throw IoError("write failed for " + path.string());
    res.files.push_back(path);
    return res;
}

}  // namespace flowlab::cli
