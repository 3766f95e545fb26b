#include "flowlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "flowlab/errors.hpp"

namespace flowlab {

double LowSpeedFunction::value(double t) const {
    switch (kind) {
        case LowSpeedKind::LogShift: return std::log(t + 1.0);
        case LowSpeedKind::Power: return std::pow(t + 1.0, alpha);
        case LowSpeedKind::LogLog: return std::log(std::log(t + 100.0));
        case LowSpeedKind::Custom: break;
    }
    return custom(t);
}

double LowSpeedFunction::derivative(double t) const {
    switch (kind) {
        case LowSpeedKind::LogShift: return 1.0 / (t + 1.0);
        case LowSpeedKind::Power: return alpha * std::pow(t + 1.0, alpha - 1.0);
        case LowSpeedKind::LogLog: return 1.0 / ((t + 100.0) * std::log(t + 100.0));
        case LowSpeedKind::Custom: break;
    }
    return custom_derivative(t);
}

bool LowSpeedFunction::check(double horizon, double tau, double* onset) const {
    constexpr int kSamples = 4096;
    std::optional<double> start;
    for (int s = 0; s <= kSamples; ++s) {
        const double t = horizon * s / kSamples;
        if (s > 0 && !(value(t) > 0.0)) return false;
        if (derivative(t) <= tau) {
            if (!start) start = t;
        } else {
            start.reset();
        }
    }
    if (!start) return false;
    if (onset) *onset = *start;
    return true;
}

LowSpeedFunction make_low_speed(LowSpeedKind kind, double alpha) {
    if (kind == LowSpeedKind::Power && !(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameter("power exponent must lie in (0,1)");
    if (kind == LowSpeedKind::Custom) throw InvalidParameter("custom low-speed functions need explicit callables");
    LowSpeedFunction f;
    f.kind = kind;
    f.alpha = alpha;
    return f;
}

BoundarySpec low_speed_phi(const LowSpeedFunction& xi) {
    if (xi.kind == LowSpeedKind::Custom && (!xi.custom || !xi.custom_derivative))
        throw InvalidParameter("custom low-speed function needs value and derivative");
    return BoundarySpec::dirichlet([xi](double t) { return xi.value(t); },
                                   [xi](double t) { return xi.derivative(t); }, GrowthClass::LowSpeed);
}

BoundarySpec low_speed_phi(LowSpeedKind kind, double alpha) { return low_speed_phi(make_low_speed(kind, alpha)); }

double FastGrowthFunction::value(double t) const { return (y0 + 1.0 / 3.0) * std::exp(3.0 * t) - 1.0 / 3.0; }

double FastGrowthFunction::derivative(double t) const { return 3.0 * (y0 + 1.0 / 3.0) * std::exp(3.0 * t); }

FastGrowthFunction fast_growth_y(double y0) {
    if (!(y0 > 0.0)) throw InvalidParameter("y0 must be positive");
    return FastGrowthFunction{y0};
}

BoundarySpec fast_growth_phi(const FastGrowthFunction& y) {
    return BoundarySpec::dirichlet([y](double t) { return y.value(t); }, [y](double t) { return y.derivative(t); },
                                   GrowthClass::FastGrowth);
}

double window_upper(const FastGrowthFunction& y, double t) { return std::cbrt(y.value(t)) - 2.0; }

PsiWindow psi_window(const Trajectory& u1_traj, const FastGrowthFunction& y) {
    if (u1_traj.steps.empty()) throw InvalidParameter("empty trajectory");
    auto times = std::make_shared<std::vector<double>>();
    auto kmax = std::make_shared<std::vector<double>>();
    for (const auto& d : u1_traj.steps) {
        double k = -std::numeric_limits<double>::infinity();
        for (const auto& c : d.k) k = std::max(k, c[1]);
        times->push_back(d.t);
        kmax->push_back(k);
    }
    PsiWindow w;
    w.lower = [times, kmax](double t) {
        const auto& T = *times;
        if (t <= T.front()) return kmax->front();
        if (t >= T.back()) return kmax->back();
        const auto it = std::upper_bound(T.begin(), T.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - T.begin());
        const double s = (t - T[i - 1]) / (T[i] - T[i - 1]);
        return (1.0 - s) * (*kmax)[i - 1] + s * (*kmax)[i];
    };
    w.upper = [y](double t) { return window_upper(y, t); };
    for (std::size_t i = 0; i < times->size(); ++i) {
        if (window_upper(y, (*times)[i]) >= (*kmax)[i]) {
            w.first_nonempty = (*times)[i];
            return w;
        }
    }
    throw EmptyWindow("curvature window stays empty up to t = " + std::to_string(times->back()));
}

ScenarioData divergence_example(const BackgroundMetric& bg, double eps0, double beta, double margin) {
    if (bg.kind() != DomainKind::Disk) throw InvalidParameter("divergence example lives on the disk");
    if (!(eps0 > 0.0 && eps0 < 1.0)) throw InvalidParameter("eps0 must lie in (0,1)");
    if (!(beta >= 1e-3) || !(margin >= 1e-3)) throw InvalidParameter("infeasible shape parameters: beta and margin must be >= 1e-3");
    const double c0 = -std::log1p(eps0) - margin;
    ScenarioData out;
    out.u0 = Field::radial(bg, [=](double r) { return c0 - beta * r * r; });
    const double psi0 = geodesic_curvature_conformal(bg, out.u0, 0).front();
    if (psi0 > 1.0 + eps0)
        throw InvalidParameter("infeasible shape parameters: compatible curvature " + std::to_string(psi0) +
                               " exceeds 1 + eps0");
    out.bc = BoundarySpec::curvature([psi0](double) { return psi0; });
    return out;
}

ScenarioData steady_radial_example(const BackgroundMetric& bg, double b, bool closed_form, const NewtonSettings& s) {
    if (bg.kind() != DomainKind::Disk) throw InvalidParameter("steady radial example lives on the disk");
    if (!(b > 0.0 && b < 1.0)) throw InvalidParameter("b must lie in (0,1)");
    auto profile = [b](double r) { return std::log(2.0 * b / (1.0 - b * b * r * r)); };
    ScenarioData out;
    out.u0 = Field::radial(bg, profile);
    if (!closed_form) out.u0 = solve_liouville_dirichlet(bg, profile(1.0), out.u0, s);
    const std::vector<double> k = geodesic_curvature_conformal(bg, out.u0, 0);
    const double psi0 = *std::max_element(k.begin(), k.end());
    out.bc = BoundarySpec::curvature([psi0](double t) { return 1.0 + (psi0 - 1.0) * std::exp(-t); });
    return out;
}

}  // namespace flowlab
