#include "flowlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "assembly.hpp"
#include "flowlab/errors.hpp"

namespace flowlab {

const char* to_string(BoundaryMode m) {
    return m == BoundaryMode::Dirichlet ? "Dirichlet" : "Curvature";
}

const char* to_string(GrowthClass g) {
    switch (g) {
        case GrowthClass::LowSpeed: return "LowSpeed";
        case GrowthClass::FastGrowth: return "FastGrowth";
        case GrowthClass::Custom: break;
    }
    return "Custom";
}

const char* to_string(TerminationStatus s) {
    switch (s) {
        case TerminationStatus::ReachedHorizon: return "ReachedHorizon";
        case TerminationStatus::BlowDown: return "BlowDown";
        case TerminationStatus::StepCollapse: break;
    }
    return "StepCollapse";
}

double BoundarySpec::value(int component, int j, double t) const {
    const double v = schedule(component, j, t);
    if (!std::isfinite(v)) throw NonFiniteState("boundary schedule is not finite at t = " + std::to_string(t));
    return v;
}

BoundarySpec BoundarySpec::dirichlet(std::function<double(double)> phi, std::function<double(double)> dphi,
                                     GrowthClass g) {
    BoundarySpec bc;
    bc.mode = BoundaryMode::Dirichlet;
    bc.schedule = [phi = std::move(phi)](int, int, double t) { return phi(t); };
    if (dphi) bc.time_derivative = [dphi = std::move(dphi)](int, int, double t) { return dphi(t); };
    bc.growth_class = g;
    return bc;
}

BoundarySpec BoundarySpec::curvature(std::function<double(double)> psi, GrowthClass g) {
    BoundarySpec bc;
    bc.mode = BoundaryMode::Curvature;
    bc.schedule = [psi = std::move(psi)](int, int, double t) { return psi(t); };
    bc.growth_class = g;
    return bc;
}

DirichletCompatibility check_compatibility_dirichlet(const BackgroundMetric& bg, const Field& u0,
                                                     const BoundarySpec& bc) {
    if (bc.mode != BoundaryMode::Dirichlet) throw InvalidParameter("boundary spec is not Dirichlet");
    if (!bc.time_derivative) throw MissingTimeDerivative("Dirichlet schedule has no time derivative");
    const Field lap = laplacian(bg, u0);
    DirichletCompatibility out;
    for (const auto& c : bg.boundary_components()) {
        for (int j = 0; j < bg.n_theta(); ++j) {
            const double u = u0(c.node, j);
            out.value = std::max(out.value, std::abs(u - bc.value(c.id, j, 0.0)));
            const double ut = std::exp(-2.0 * u) * (lap(c.node, j) - bg.K_g(c.node, j)) - 1.0;
            out.rate = std::max(out.rate, std::abs(bc.time_derivative(c.id, j, 0.0) - ut));
        }
    }
    return out;
}

std::vector<double> check_compatibility_robin(const BackgroundMetric& bg, const Field& u0,
                                              const BoundarySpec& bc) {
    if (bc.mode != BoundaryMode::Curvature) throw InvalidParameter("boundary spec is not Curvature");
    std::vector<double> out;
    for (const auto& c : bg.boundary_components()) {
        const std::vector<double> dn = normal_derivative(bg, u0, c.id);
        double worst = 0.0;
        for (int j = 0; j < bg.n_theta(); ++j) {
            const double res = dn[j] + c.k_g - bc.value(c.id, j, 0.0) * std::exp(u0(c.node, j));
            worst = std::max(worst, std::abs(res));
        }
        out.push_back(worst);
    }
    return out;
}

namespace {

struct RobinRow {
    std::size_t rb;
    std::size_t r1;
    double m;
    const BoundaryComponent* comp;
    int j;
};

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

StepAttempt attempt_step(const FlowState& state, const FlowConfig& cfg, double dt) {
    const BackgroundMetric& bg = cfg.bg;
    const Field& u = state.u;
    if (!(dt > 0.0)) throw InvalidParameter("step size must be positive");
    if (!u.fits(bg)) throw DomainMismatch("state does not match grid");
    if (!all_finite(u.values())) throw NonFiniteState("flow state contains NaN or Inf");

    const double tn = state.t + dt;
    const bool disk = bg.kind() == DomainKind::Disk;
    StepAttempt out;

    BandMatrix A = detail::make_system(bg);
    std::vector<double> rhs(u.size(), 0.0);
    for (int i = 0; i <= bg.n_r(); ++i) {
        if (bg.is_boundary_row(i)) continue;
        for (int j = 0; j < bg.n_theta(); ++j) {
            const auto row = bg.index(i, j);
            if (disk && i == 0 && j > 0) {
                detail::set_origin_tie(bg, A, rhs, j);
                continue;
            }
            const double d = std::exp(-2.0 * u[row]);
            detail::add_laplace_row(bg, A, static_cast<int>(row), -dt * d);
            A.at(row, row) += 1.0;
            rhs[row] = u[row] + dt * (-d * bg.K_g(i, j) - 1.0);
        }
    }

    std::vector<RobinRow> robin;
    for (const auto& c : bg.boundary_components()) {
        for (int j = 0; j < bg.n_theta(); ++j) {
            const auto rb = bg.index(c.node, j);
            if (cfg.bc.mode == BoundaryMode::Dirichlet) {
                detail::set_identity_row(A, rhs, static_cast<int>(rb), cfg.bc.value(c.id, j, tn));
            } else {
                const double m = detail::set_one_sided_row(bg, A, c, j);
                robin.push_back({rb, bg.index(c.node + c.inward, j), m, &c, j});
            }
        }
    }

    std::vector<double> sol;
    if (robin.empty()) {
        try {
            A.factor();
        } catch (const SingularLinearSystem& e) {
            out.reason = e.what();
            return out;
        }
        sol = rhs;
        A.solve(sol);
    } else {
        // Newton on psi e^{u_b}: the boundary rows carry its linearization
        // about the current iterate, so each pass refactors.
        const double two_h = 2.0 * bg.h();
        std::vector<double> psi(robin.size());
        std::vector<double> ub(robin.size());
        for (std::size_t k = 0; k < robin.size(); ++k) {
            psi[k] = cfg.bc.value(robin[k].comp->id, robin[k].j, tn);
            ub[k] = u[robin[k].rb];
        }
        bool converged = false;
        for (int it = 1; it <= cfg.picard_max; ++it) {
            BandMatrix Ak = A;
            sol = rhs;
            for (std::size_t k = 0; k < robin.size(); ++k) {
                const double e = psi[k] * std::exp(ub[k]);
                Ak.at(robin[k].rb, robin[k].rb) -= two_h * e;
                const double g = two_h * (e * (1.0 - ub[k]) - robin[k].comp->k_g);
                sol[robin[k].rb] = g - robin[k].m * rhs[robin[k].r1];
            }
            try {
                Ak.factor();
            } catch (const SingularLinearSystem& e) {
                out.reason = e.what();
                return out;
            }
            Ak.solve(sol);
            if (!all_finite(sol)) break;
            double diff = 0.0;
            for (std::size_t k = 0; k < robin.size(); ++k) {
                diff = std::max(diff, std::abs(sol[robin[k].rb] - ub[k]));
                ub[k] = sol[robin[k].rb];
            }
            out.picard_iterations = it;
            if (diff <= cfg.picard_tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            out.reason = "boundary iteration did not converge";
            return out;
        }
    }
    if (!all_finite(sol)) {
        out.reason = "non-finite trial state";
        return out;
    }

    out.u = Field(bg);
    out.u.values() = std::move(sol);
    detail::tie_origin(bg, out.u);

    const bool pinned = cfg.bc.mode == BoundaryMode::Dirichlet;
    double change = 0.0;
    for (int i = 0; i <= bg.n_r(); ++i) {
        if (pinned && bg.is_boundary_row(i)) continue;
        for (int j = 0; j < bg.n_theta(); ++j) change = std::max(change, std::abs(out.u(i, j) - u(i, j)));
    }
    out.change = change;
    if (change > cfg.du_max) {
        out.reason = "sup-change exceeds du_max";
        return out;
    }
    out.accepted = true;
    return out;
}

FlowState step(const FlowState& state, const FlowConfig& cfg, double dt) {
    double d = dt;
    for (;;) {
        StepAttempt a = attempt_step(state, cfg, d);
        if (a.accepted) return FlowState{state.t + d, std::move(a.u)};
        d *= 0.5;
        if (d < 1e-12 * cfg.dt0)
            throw StepCollapse("step size collapsed at t = " + std::to_string(state.t) + ": " + a.reason);
    }
}

StepDiagnostics diagnose(const BackgroundMetric& bg, const Field& u, double t, double dt) {
    StepDiagnostics d;
    d.t = t;
    d.dt = dt;
    d.sup = u.sup();
    d.inf = u.inf();
    for (const auto& c : bg.boundary_components()) {
        const std::vector<double> k = geodesic_curvature_conformal(bg, u, c.id);
        const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
        d.k.push_back({*lo, *hi});
    }
    return d;
}

namespace {

void validate(const FlowConfig& cfg) {
    if (!(cfg.dt0 > 0.0)) throw InvalidParameter("dt0 must be positive");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw InvalidParameter("t_end must be finite and >= 0");
    if (!(cfg.du_max > 0.0)) throw InvalidParameter("du_max must be positive");
    if (!(cfg.dt_max > 0.0)) throw InvalidParameter("dt_max must be positive");
    if (!(cfg.dt_growth >= 1.0)) throw InvalidParameter("dt_growth must be >= 1");
    if (cfg.snapshot_stride < 1) throw InvalidParameter("snapshot_stride must be >= 1");
    if (cfg.snapshot_interval < 0.0) throw InvalidParameter("snapshot_interval must be >= 0");
    if (!(cfg.picard_tol > 0.0) || cfg.picard_max < 1) throw InvalidParameter("invalid Picard controls");
    if (!cfg.bc.schedule) throw InvalidParameter("boundary schedule missing");
    check_field(cfg.bg, cfg.u0);
}

double compatibility_residual(const FlowConfig& cfg) {
    if (cfg.bc.mode == BoundaryMode::Curvature) {
        const auto r = check_compatibility_robin(cfg.bg, cfg.u0, cfg.bc);
        return *std::max_element(r.begin(), r.end());
    }
    if (!cfg.bc.time_derivative) {
        double v = 0.0;
        for (const auto& c : cfg.bg.boundary_components())
            for (int j = 0; j < cfg.bg.n_theta(); ++j)
                v = std::max(v, std::abs(cfg.u0(c.node, j) - cfg.bc.value(c.id, j, 0.0)));
        return v;
    }
    const auto r = check_compatibility_dirichlet(cfg.bg, cfg.u0, cfg.bc);
    return std::max(r.value, r.rate);
}

}  // namespace

std::vector<Trajectory> run_lockstep(const std::vector<FlowConfig>& cfgs, const LockstepHook& hook) {
    if (cfgs.empty()) throw InvalidParameter("no configurations to run");
    for (const auto& c : cfgs) validate(c);
    const FlowConfig& ctl = cfgs.front();
    const std::size_t M = cfgs.size();

    std::vector<Trajectory> trajs(M);
    std::vector<Field> states(M);
    std::vector<double> floors(M);
    for (std::size_t k = 0; k < M; ++k) {
        states[k] = cfgs[k].u0;
        floors[k] = cfgs[k].u0.inf() - cfgs[k].blowdown_drop;
        trajs[k].compat_residual = compatibility_residual(cfgs[k]);
        if (trajs[k].compat_residual > cfgs[k].compat_warn)
            trajs[k].warnings.push_back("compatibility residual " + std::to_string(trajs[k].compat_residual) +
                                        " exceeds " + std::to_string(cfgs[k].compat_warn));
        trajs[k].snapshots.push_back({0.0, states[k]});
        trajs[k].steps.push_back(diagnose(cfgs[k].bg, states[k], 0.0, 0.0));
    }

    const double t_end = ctl.t_end;
    const double tiny = 1e-12 * std::max(1.0, t_end);
    const double interval = ctl.snapshot_interval;
    long next_snap_index = 1;
    double t = 0.0;
    double dt = std::min(ctl.dt0, ctl.dt_max);
    long accepted = 0;
    int rejected = 0;
    TerminationStatus status = TerminationStatus::ReachedHorizon;
    std::vector<StepAttempt> trial(M);

    while (t < t_end - tiny) {
        double target = t + dt;
        bool clipped = false;
        bool snap_landing = false;
        if (target >= t_end - tiny) {
            clipped = target > t_end;
            target = t_end;
        }
        if (interval > 0.0) {
            const double next_snap = next_snap_index * interval;
            if (target >= next_snap - tiny) {
                clipped = clipped || target > next_snap;
                target = std::min(target, next_snap);
                snap_landing = true;
            }
        }
        const double dt_try = target - t;

        bool ok = true;
        double change = 0.0;
        for (std::size_t k = 0; k < M && ok; ++k) {
            trial[k] = attempt_step(FlowState{t, states[k]}, cfgs[k], dt_try);
            ok = trial[k].accepted;
            change = std::max(change, trial[k].change);
            if (ok && hook) hook(k, target, trial[k].u);
        }
        if (!ok) {
            ++rejected;
            dt = 0.5 * dt_try;
            if (dt < 1e-12 * ctl.dt0) {
                status = TerminationStatus::StepCollapse;
                break;
            }
            continue;
        }

        t = target;
        ++accepted;
        if (snap_landing) ++next_snap_index;
        const bool store = (accepted % ctl.snapshot_stride == 0) || snap_landing;
        bool below = false;
        for (std::size_t k = 0; k < M; ++k) {
            states[k] = std::move(trial[k].u);
            trajs[k].steps.push_back(diagnose(cfgs[k].bg, states[k], t, dt_try));
            if (store) trajs[k].snapshots.push_back({t, states[k]});
            below = below || states[k].sup() < floors[k];
        }
        if (below) {
            status = TerminationStatus::BlowDown;
            break;
        }
        if (!clipped && change < 0.5 * ctl.du_max) dt = std::min(dt * ctl.dt_growth, ctl.dt_max);
    }

    for (std::size_t k = 0; k < M; ++k) {
        if (trajs[k].snapshots.back().t < t) trajs[k].snapshots.push_back({t, states[k]});
        trajs[k].status = status;
        trajs[k].rejected_steps = rejected;
    }
    return trajs;
}

Trajectory run(const FlowConfig& cfg) { return std::move(run_lockstep({cfg}).front()); }

double barrier_value(const BarrierParams& bp, double r, double t) {
    const double eps = bp.eps(t);
    if (!(eps > 0.0)) throw InvalidParameter("barrier eps(t) must be positive");
    double b = -std::log(bp.slope * r + eps);
    if (bp.A != 0.0) b += bp.sign * bp.A * (std::pow(r + bp.delta, -bp.p) - std::pow(bp.delta, -bp.p));
    if (bp.linear) b += bp.linear(t) * r;
    return b;
}

std::vector<BarrierSample> barrier_residual(const BarrierParams& bp, const BackgroundMetric& bg, double t,
                                            double band_end, int samples) {
    if (!(bp.delta > 0.0) || bp.p < 1.0 || bp.A < 0.0) throw InvalidParameter("invalid barrier parameters");
    if (samples < 2) throw InvalidParameter("need at least two barrier samples");
    const bool disk = bg.kind() == DomainKind::Disk;
    const double collar = disk ? 1.0 : 0.5 * bg.length();
    if (!(band_end > 0.0) || band_end >= collar) throw InvalidParameter("band leaves the smooth collar");

    const double a = bp.slope;
    const double eps = bp.eps(t);
    const double deps = bp.deps ? bp.deps(t) : 0.0;
    const double c = bp.linear ? bp.linear(t) : 0.0;
    const double dc = bp.dlinear ? bp.dlinear(t) : 0.0;
    const auto& comp = bg.boundary_components().front();

    std::vector<BarrierSample> out(samples);
    for (int s = 0; s < samples; ++s) {
        const double r = band_end * s / (samples - 1);
        const double q = a * r + eps;
        double B = -std::log(q) + c * r;
        double B1 = -a / q + c;
        double B2 = a * a / (q * q);
        if (bp.A != 0.0) {
            const double x = r + bp.delta;
            B += bp.sign * bp.A * (std::pow(x, -bp.p) - std::pow(bp.delta, -bp.p));
            B1 += bp.sign * (-bp.A * bp.p * std::pow(x, -bp.p - 1.0));
            B2 += bp.sign * bp.A * bp.p * (bp.p + 1.0) * std::pow(x, -bp.p - 2.0);
        }
        // In distance coordinates the disk Laplacian is B'' - B'/(1 - r).
        const double lap = disk ? B2 - B1 / (1.0 - r) : B2;
        const int node = std::clamp(static_cast<int>(std::lround(comp.node + comp.inward * r / bg.h())), 0, bg.n_r());
        const double Kg = bg.K_g(node, 0);
        const double Bt = -deps / q + dc * r;
        out[s] = {r, std::exp(-2.0 * B) * (lap - Kg) - 1.0 - Bt};
    }
    return out;
}

}  // namespace flowlab
