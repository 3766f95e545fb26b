#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flowlab/flow.hpp"
#include "flowlab/geometry.hpp"

namespace flowlab {

// Rows of reals against strictly increasing times.
struct TimeSeries {
    std::vector<std::string> columns;
    std::vector<double> times;
    std::vector<std::vector<double>> values;

    std::size_t size() const { return times.size(); }
    void push(double t, std::vector<double> row);
    std::vector<double> column(std::size_t k) const;
};

enum class TraceSource { Snapshots, Steps };

// {sup, inf} of u over all nodes.
std::pair<TimeSeries, TimeSeries> sup_inf_trace(const Trajectory& traj,
                                                TraceSource source = TraceSource::Snapshots);

// One series per boundary component, columns k_min and k_max.
std::vector<TimeSeries> boundary_curvature_trace(const Trajectory& traj, const BackgroundMetric& bg,
                                                 TraceSource source = TraceSource::Snapshots);

struct CompactRegion {
    double disk_rmax = 0.9;
    double cylinder_lo = 0.25;
    double cylinder_hi = 0.75;

    bool contains(const BackgroundMetric& bg, int i) const;
};

TimeSeries ln_distance_trace(const Trajectory& traj, const BackgroundMetric& bg, const Field& u_ln,
                             const CompactRegion& region = {});
double ln_distance(const BackgroundMetric& bg, const Field& u, const Field& u_ln, const CompactRegion& region = {});

struct ComparisonReport {
    double max_violation = 0.0;
    std::optional<double> first_violation_time;
    bool ordered = true;
};

// max over snapshots and nodes of uA - uB.
ComparisonReport comparison_check(const Trajectory& a, const Trajectory& b, double tol);

// Least-squares slope of column k over samples with t in [t0, t1]; NaN when
// fewer than two samples fall inside.
double least_squares_slope(const TimeSeries& s, std::size_t column, double t0, double t1);

// Earliest sample time after which every later sample satisfies `ok`.
std::optional<double> settling_time(const TimeSeries& s, const std::function<bool(const std::vector<double>&)>& ok);

// Smallest C with k(t) >= phi(t)^{1/3} - 1 - C e^{-phi(t)} on samples
// t >= t_from, using the column of smallest curvatures. Infinite when the
// deficit is positive where e^{phi} overflows.
struct FastGrowthFit {
    double C = 0.0;
    double worst_time = 0.0;
    double worst_deficit = 0.0;
    std::size_t samples = 0;
};
FastGrowthFit fit_fast_growth_constant(const TimeSeries& k_trace, std::size_t column,
                                       const std::function<double(double)>& phi, double t_from);

std::string format_double(double v);

void write_csv(const TimeSeries& s, const std::filesystem::path& path);
// Rows r,theta,u in storage order.
void write_csv(const BackgroundMetric& bg, const Field& u, const std::filesystem::path& path);
TimeSeries read_csv(const std::filesystem::path& path);

}  // namespace flowlab
