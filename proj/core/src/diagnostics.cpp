#include "flowlab/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "flowlab/errors.hpp"

namespace flowlab {

void TimeSeries::push(double t, std::vector<double> row) {
    if (!times.empty() && !(t > times.back()))
        throw InvalidParameter("time series samples must be strictly increasing");
    times.push_back(t);
    values.push_back(std::move(row));
}

std::vector<double> TimeSeries::column(std::size_t k) const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row.at(k));
    return out;
}

std::pair<TimeSeries, TimeSeries> sup_inf_trace(const Trajectory& traj, TraceSource source) {
    if (traj.snapshots.empty()) throw InvalidParameter("empty trajectory");
    TimeSeries sup{{"sup"}, {}, {}};
    TimeSeries inf{{"inf"}, {}, {}};
    if (source == TraceSource::Steps) {
        for (const auto& d : traj.steps) {
            sup.push(d.t, {d.sup});
            inf.push(d.t, {d.inf});
        }
    } else {
        for (const auto& s : traj.snapshots) {
            sup.push(s.t, {s.u.sup()});
            inf.push(s.t, {s.u.inf()});
        }
    }
    return {std::move(sup), std::move(inf)};
}

std::vector<TimeSeries> boundary_curvature_trace(const Trajectory& traj, const BackgroundMetric& bg,
                                                 TraceSource source) {
    if (traj.snapshots.empty()) throw InvalidParameter("empty trajectory");
    std::vector<TimeSeries> out(bg.boundary_components().size(), TimeSeries{{"k_min", "k_max"}, {}, {}});
    auto add = [&](const StepDiagnostics& d) {
        for (std::size_t c = 0; c < out.size(); ++c) out[c].push(d.t, {d.k[c][0], d.k[c][1]});
    };
    if (source == TraceSource::Steps) {
        for (const auto& d : traj.steps) add(d);
    } else {
        for (const auto& s : traj.snapshots) add(diagnose(bg, s.u, s.t, 0.0));
    }
    return out;
}

bool CompactRegion::contains(const BackgroundMetric& bg, int i) const {
    const double r = bg.r(i);
    const double slack = 1e-12 * bg.length();
    if (bg.kind() == DomainKind::Disk) return r <= disk_rmax + slack;
    return r >= cylinder_lo * bg.length() - slack && r <= cylinder_hi * bg.length() + slack;
}

double ln_distance(const BackgroundMetric& bg, const Field& u, const Field& u_ln, const CompactRegion& region) {
    if (!u.fits(bg) || !u_ln.fits(bg)) throw DomainMismatch("field does not match grid");
    double d = 0.0;
    for (int i = 0; i <= bg.n_r(); ++i) {
        if (!region.contains(bg, i)) continue;
        for (int j = 0; j < bg.n_theta(); ++j) d = std::max(d, std::abs(u(i, j) - u_ln(i, j)));
    }
    return d;
}

TimeSeries ln_distance_trace(const Trajectory& traj, const BackgroundMetric& bg, const Field& u_ln,
                             const CompactRegion& region) {
    TimeSeries out{{"ln_distance"}, {}, {}};
    for (const auto& s : traj.snapshots) out.push(s.t, {ln_distance(bg, s.u, u_ln, region)});
    return out;
}

ComparisonReport comparison_check(const Trajectory& a, const Trajectory& b, double tol) {
    if (a.snapshots.size() != b.snapshots.size()) throw DomainMismatch("trajectories have different snapshot counts");
    ComparisonReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < a.snapshots.size(); ++s) {
        const auto& sa = a.snapshots[s];
        const auto& sb = b.snapshots[s];
        if (sa.t != sb.t) throw DomainMismatch("snapshot times differ");
        if (sa.u.size() != sb.u.size()) throw DomainMismatch("snapshot grids differ");
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < sa.u.size(); ++k) worst = std::max(worst, sa.u[k] - sb.u[k]);
        rep.max_violation = std::max(rep.max_violation, worst);
        if (worst > tol && !rep.first_violation_time) rep.first_violation_time = sa.t;
    }
    rep.ordered = rep.max_violation <= tol;
    return rep;
}

double least_squares_slope(const TimeSeries& s, std::size_t column, double t0, double t1) {
    double n = 0, st = 0, sv = 0, stt = 0, stv = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = s.times[i];
        if (t < t0 || t > t1) continue;
        const double v = s.values[i].at(column);
        n += 1;
        st += t;
        sv += v;
        stt += t * t;
        stv += t * v;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double den = n * stt - st * st;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (n * stv - st * sv) / den;
}

std::optional<double> settling_time(const TimeSeries& s, const std::function<bool(const std::vector<double>&)>& ok) {
    std::optional<double> since;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (ok(s.values[i])) {
            if (!since) since = s.times[i];
        } else {
            since.reset();
        }
    }
    return since;
}

FastGrowthFit fit_fast_growth_constant(const TimeSeries& k_trace, std::size_t column,
                                       const std::function<double(double)>& phi, double t_from) {
    FastGrowthFit fit;
    fit.worst_deficit = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k_trace.size(); ++i) {
        const double t = k_trace.times[i];
        if (t < t_from) continue;
        ++fit.samples;
        const double p = phi(t);
        const double deficit = std::cbrt(p) - 1.0 - k_trace.values[i].at(column);
        if (deficit > fit.worst_deficit) {
            fit.worst_deficit = deficit;
            fit.worst_time = t;
        }
        if (deficit <= 0.0) continue;
        const double need = deficit * std::exp(p);
        fit.C = std::max(fit.C, std::isfinite(need) ? need : std::numeric_limits<double>::infinity());
    }
    return fit;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace

void write_csv(const TimeSeries& s, const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << 't';
    for (const auto& c : s.columns) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << format_double(s.times[i]);
        for (double v : s.values[i]) os << ',' << format_double(v);
        os << '\n';
    }
    finish(os, path);
}

void write_csv(const BackgroundMetric& bg, const Field& u, const std::filesystem::path& path) {
    if (!u.fits(bg)) throw DomainMismatch("field does not match grid");
    std::ofstream os = open_out(path);
    os << "r,theta,u\n";
    for (int i = 0; i <= bg.n_r(); ++i)
        for (int j = 0; j < bg.n_theta(); ++j)
            os << format_double(bg.r(i)) << ',' << format_double(j * bg.dtheta()) << ',' << format_double(u(i, j))
               << '\n';
    finish(os, path);
}

TimeSeries read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    TimeSeries s;
    std::string line;
    if (!std::getline(is, line)) return s;
    {
        std::stringstream hs(line);
        std::string cell;
        bool first = true;
        while (std::getline(hs, cell, ',')) {
            if (!first) s.columns.push_back(cell);
            first = false;
        }
    }
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        std::vector<double> cells;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p <= end) {
            const char* comma = std::find(p, end, ',');
            double v = 0.0;
            const auto res = std::from_chars(p, comma, v);
            if (res.ec != std::errc() || res.ptr != comma)
                throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
            cells.push_back(v);
            p = comma + 1;
        }
        const double t = cells.front();
        cells.erase(cells.begin());
        s.push(t, std::move(cells));
    }
    return s;
}

}  // namespace flowlab
