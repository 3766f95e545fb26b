#pragma once

#include <vector>

#include "flowlab/geometry.hpp"

namespace flowlab {

// `tol` bounds the Jacobi-scaled residual max_i |F_i| / |J_ii|; the raw
// residual carries a rounding floor of order eps * u / h^2 on fine grids.
// The scaled residual alone lets u err by up to 1/h^2 times tol, so
// iteration also continues until the last update is below `step_tol`.
struct NewtonSettings {
    double tol = 1e-12;
    int max_iter = 100;
    double damping = 0.5;
    double step_tol = 1e-10;
};

struct NewtonReport {
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

// Solves Delta u = K_g + e^{2u} with u prescribed on every boundary circle.
// `boundary_values` lists n_theta values per component, ordered by id.
Field solve_liouville_dirichlet(const BackgroundMetric& bg, const std::vector<double>& boundary_values,
                                const Field& guess, const NewtonSettings& s = {},
                                NewtonReport* report = nullptr);
Field solve_liouville_dirichlet(const BackgroundMetric& bg, double boundary_value, const Field& guess,
                                const NewtonSettings& s = {}, NewtonReport* report = nullptr);

struct LNSchedule {
    std::vector<double> N_values;
    double stop_delta = 1e-3;
};

struct LNResult {
    Field u;
    // Per radial index: false within 2h of the boundary.
    std::vector<bool> trusted;
    double level = 0.0;
    double last_delta = 0.0;
    std::vector<double> deltas;
    std::vector<Field> ladder;
};

// Ladder of Dirichlet solves with boundary level N_k, each warm-started from
// the previous one. Stops once the sup-change on the monitored set (disk
// r <= 0.9, cylinder middle half) drops to stop_delta.
LNResult loewner_nirenberg(const BackgroundMetric& bg, const LNSchedule& sched,
                           const NewtonSettings& s = {}, bool keep_ladder = false);

// Radial indices of the monitored compact set.
bool in_monitored_set(const BackgroundMetric& bg, int i);

struct DiskDirichletProfile {
    double m = 0.0;
    double a = 0.0;
    double operator()(double r) const;
};

// Radial solution of Delta u = e^{2u} on the unit disk with u = m on the
// boundary circle.
DiskDirichletProfile exact_disk_dirichlet(double m);
double disk_boundary_curvature(double a);

struct CylinderLNProfile {
    double L = 0.0;
    // +inf at r = 0 and r = L.
    double operator()(double r) const;
};

CylinderLNProfile exact_cylinder_ln(double L);
double exact_disk_ln(double r);

}  // namespace flowlab
