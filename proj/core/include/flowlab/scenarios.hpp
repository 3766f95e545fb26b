#pragma once

#include <functional>
#include <optional>

#include "flowlab/elliptic.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/geometry.hpp"

namespace flowlab {

enum class LowSpeedKind { LogShift, Power, LogLog, Custom };

// xi(t) for log(t+1), (t+1)^alpha, log log(t+100), or a user pair.
struct LowSpeedFunction {
    LowSpeedKind kind = LowSpeedKind::LogShift;
    double alpha = 0.5;
    std::function<double(double)> custom;
    std::function<double(double)> custom_derivative;

    double value(double t) const;
    double derivative(double t) const;
    // Samples [0, horizon]: xi must stay positive after t = 0 and xi' <= tau
    // from some sample on. The first such time lands in *onset.
    bool check(double horizon, double tau, double* onset = nullptr) const;
};

LowSpeedFunction make_low_speed(LowSpeedKind kind, double alpha = 0.5);
BoundarySpec low_speed_phi(LowSpeedKind kind, double alpha = 0.5);
BoundarySpec low_speed_phi(const LowSpeedFunction& xi);

// Equality solution of y' = 3y + 1.
struct FastGrowthFunction {
    double y0 = 1.0;
    double value(double t) const;
    double derivative(double t) const;
};

FastGrowthFunction fast_growth_y(double y0);
BoundarySpec fast_growth_phi(const FastGrowthFunction& y);

struct PsiWindow {
    // Measured boundary curvature of u1, linearly interpolated in t.
    std::function<double(double)> lower;
    // y(t)^{1/3} - 2.
    std::function<double(double)> upper;
    double first_nonempty = 0.0;

    double midpoint(double t) const { return 0.5 * (lower(t) + upper(t)); }
};

double window_upper(const FastGrowthFunction& y, double t);
PsiWindow psi_window(const Trajectory& u1_traj, const FastGrowthFunction& y);

struct ScenarioData {
    Field u0;
    BoundarySpec bc;
};

// u0 = c0 - beta r^2 with c0 = -log(1 + eps0) - margin, paired with the
// constant curvature that makes the data compatible.
ScenarioData divergence_example(const BackgroundMetric& bg, double eps0, double beta = 0.25,
                                double margin = 0.05);

// u0 solves the steady equation with boundary value log(2b/(1 - b^2)) (the
// discrete counterpart of log(2b/(1 - b^2 r^2)) unless `closed_form`);
// psi(t) = 1 + (psi0 - 1) e^{-t} with psi0 its boundary curvature.
ScenarioData steady_radial_example(const BackgroundMetric& bg, double b, bool closed_form = false,
                                   const NewtonSettings& s = {});

}  // namespace flowlab
