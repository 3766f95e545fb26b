#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "flowlab/geometry.hpp"

namespace flowlab {

enum class BoundaryMode { Dirichlet, Curvature };
enum class GrowthClass { LowSpeed, FastGrowth, Custom };
enum class TerminationStatus { ReachedHorizon, BlowDown, StepCollapse };

const char* to_string(BoundaryMode m);
const char* to_string(GrowthClass g);
const char* to_string(TerminationStatus s);

// (component id, angular index, t) -> value.
using BoundarySchedule = std::function<double(int, int, double)>;

// Dirichlet data phi(x,t) or prescribed geodesic curvature psi(x,t).
struct BoundarySpec {
    BoundaryMode mode = BoundaryMode::Dirichlet;
    BoundarySchedule schedule;
    BoundarySchedule time_derivative;
    GrowthClass growth_class = GrowthClass::Custom;

    double value(int component, int j, double t) const;

    static BoundarySpec dirichlet(std::function<double(double)> phi,
                                  std::function<double(double)> dphi = {},
                                  GrowthClass g = GrowthClass::Custom);
    static BoundarySpec curvature(std::function<double(double)> psi,
                                  GrowthClass g = GrowthClass::Custom);
};

struct FlowConfig {
    BackgroundMetric bg;
    Field u0;
    BoundarySpec bc;
    double dt0 = 1e-3;
    double t_end = 1.0;
    // Largest accepted sup-change per step (over nodes not pinned by
    // Dirichlet data).
    double du_max = 0.05;
    double dt_max = 0.25;
    double dt_growth = 1.25;
    int snapshot_stride = 1;
    // When positive, steps are clipped so snapshots land on multiples of it.
    double snapshot_interval = 0.0;
    // Inner iteration on the nonlinear curvature closure.
    double picard_tol = 1e-10;
    int picard_max = 100;
    // BlowDown once sup u < inf u0 - blowdown_drop.
    double blowdown_drop = 20.0;
    double compat_warn = 1e-2;
};

struct FlowState {
    double t = 0.0;
    Field u;
};

struct StepDiagnostics {
    double t = 0.0;
    double dt = 0.0;
    double sup = 0.0;
    double inf = 0.0;
    // {min, max} of the boundary geodesic curvature, per component.
    std::vector<std::array<double, 2>> k;
};

struct Trajectory {
    std::vector<FlowState> snapshots;
    std::vector<StepDiagnostics> steps;
    TerminationStatus status = TerminationStatus::ReachedHorizon;
    int rejected_steps = 0;
    double compat_residual = 0.0;
    std::vector<std::string> warnings;

    double final_time() const { return snapshots.empty() ? 0.0 : snapshots.back().t; }
};

struct DirichletCompatibility {
    double value = 0.0;  // sup |u0 - phi(.,0)|
    double rate = 0.0;   // sup |phi_t(.,0) - e^{-2u0}(Delta u0 - K_g) + 1|
};

DirichletCompatibility check_compatibility_dirichlet(const BackgroundMetric& bg, const Field& u0,
                                                     const BoundarySpec& bc);
// One sup-norm per boundary component.
std::vector<double> check_compatibility_robin(const BackgroundMetric& bg, const Field& u0,
                                              const BoundarySpec& bc);

struct StepAttempt {
    bool accepted = false;
    Field u;
    double change = 0.0;
    int picard_iterations = 0;
    std::string reason;
};

// One semi-implicit step of size dt without retries. The input state is
// never modified.
StepAttempt attempt_step(const FlowState& state, const FlowConfig& cfg, double dt);

// Halves dt until a step is accepted; the returned state carries t + dt_used.
FlowState step(const FlowState& state, const FlowConfig& cfg, double dt);

StepDiagnostics diagnose(const BackgroundMetric& bg, const Field& u, double t, double dt);

Trajectory run(const FlowConfig& cfg);

// Called after each member's trial step inside a lockstep attempt.
using LockstepHook = std::function<void(std::size_t member, double t_new, const Field& trial)>;

// Integrates several configurations with one shared step-size sequence: a
// rejection by any member halves the step for all. Time controls come from
// the first configuration. All members end with the same status.
std::vector<Trajectory> run_lockstep(const std::vector<FlowConfig>& cfgs, const LockstepHook& hook = {});

// Test functions -log(a r + eps(t)) + sign * w(r) + c(t) r with
// w(r) = A((r + delta)^{-p} - delta^{-p}), r the distance to the boundary.
struct BarrierParams {
    double slope = 1.0;
    std::function<double(double)> eps;
    std::function<double(double)> deps;
    double A = 0.0;
    double p = 2.0;
    double delta = 0.1;
    int sign = 1;
    std::function<double(double)> linear;
    std::function<double(double)> dlinear;
};

double barrier_value(const BarrierParams& bp, double r, double t);

struct BarrierSample {
    double r = 0.0;
    double residual = 0.0;
};

// [e^{-2B}(Delta B - K_g) - 1] - B_t at `samples` equispaced distances in
// [0, band_end], from closed-form derivatives. Non-negative certifies a
// subsolution, non-positive a supersolution.
std::vector<BarrierSample> barrier_residual(const BarrierParams& bp, const BackgroundMetric& bg, double t,
                                            double band_end, int samples);

}  // namespace flowlab
