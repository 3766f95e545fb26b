#include "flowlab/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "assembly.hpp"
#include "flowlab/errors.hpp"

namespace flowlab {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool is_origin_tie(const BackgroundMetric& bg, int i, int j) {
    return bg.kind() == DomainKind::Disk && i == 0 && j > 0;
}

// Residual of the steady equation and its Jacobi-scaled sup-norm.
double liouville_residual(const BackgroundMetric& bg, const Field& u, std::vector<double>& F) {
    const Stencil& st = bg.laplace_stencil();
    F.assign(u.size(), 0.0);
    double scaled = 0.0;
    for (int i = 0; i <= bg.n_r(); ++i) {
        if (bg.is_boundary_row(i)) continue;
        for (int j = 0; j < bg.n_theta(); ++j) {
            const auto row = bg.index(i, j);
            if (is_origin_tie(bg, i, j)) {
                F[row] = u(i, j) - u(0, 0);
                scaled = std::max(scaled, std::abs(F[row]));
                continue;
            }
            double lap = 0.0;
            double diag = 0.0;
            for (int k = st.row_ptr[row]; k < st.row_ptr[row + 1]; ++k) {
                lap += st.val[k] * u[st.col[k]];
                if (st.col[k] == static_cast<int>(row)) diag = st.val[k];
            }
            const double e2u = std::exp(2.0 * u[row]);
            F[row] = lap - bg.K_g(i, j) - e2u;
            const double J = std::abs(diag - 2.0 * e2u);
            scaled = std::max(scaled, std::abs(F[row]) / J);
        }
    }
    return std::isfinite(scaled) ? scaled : std::numeric_limits<double>::infinity();
}

void impose_boundary(const BackgroundMetric& bg, const std::vector<double>& values, Field& u) {
    const int nt = bg.n_theta();
    for (std::size_t c = 0; c < bg.boundary_components().size(); ++c) {
        const auto& comp = bg.boundary_components()[c];
        for (int j = 0; j < nt; ++j) u(comp.node, j) = values[c * nt + j];
    }
}

}  // namespace

Field solve_liouville_dirichlet(const BackgroundMetric& bg, const std::vector<double>& boundary_values,
                                const Field& guess, const NewtonSettings& s, NewtonReport* report) {
    if (!(s.tol > 0.0) || s.max_iter < 1 || !(s.damping > 0.0 && s.damping <= 1.0) || !(s.step_tol > 0.0))
        throw InvalidParameter("invalid Newton settings");
    const std::size_t expected = bg.boundary_components().size() * bg.n_theta();
    if (boundary_values.size() != expected)
        throw DomainMismatch("expected " + std::to_string(expected) + " boundary values, got " +
                             std::to_string(boundary_values.size()));
    for (double v : boundary_values)
        if (!std::isfinite(v)) throw NonFiniteField("boundary data must be finite");

    Field u = guess;
    if (!u.fits(bg)) throw DomainMismatch("guess does not match grid");
    for (double v : u.values())
        if (!std::isfinite(v)) throw NonFiniteField("guess must be finite");
    impose_boundary(bg, boundary_values, u);
    detail::tie_origin(bg, u);

    std::vector<double> F;
    std::vector<double> Ft;
    double res = liouville_residual(bg, u, F);
    NewtonReport rep;
    rep.residual_history.push_back(res);

    int it = 0;
    double step = std::numeric_limits<double>::infinity();
    while (res > s.tol || step > s.step_tol) {
        if (it >= s.max_iter)
            throw NonConvergence("Newton did not converge in " + std::to_string(s.max_iter) +
                                 " iterations (scaled residual " + num(res) + ")");
        BandMatrix A = detail::make_system(bg);
        std::vector<double> rhs(u.size(), 0.0);
        for (int i = 0; i <= bg.n_r(); ++i) {
            for (int j = 0; j < bg.n_theta(); ++j) {
                const auto row = bg.index(i, j);
                if (bg.is_boundary_row(i)) {
                    detail::set_identity_row(A, rhs, static_cast<int>(row), 0.0);
                } else if (is_origin_tie(bg, i, j)) {
                    detail::set_origin_tie(bg, A, rhs, j);
                } else {
                    detail::add_laplace_row(bg, A, static_cast<int>(row), 1.0);
                    A.at(row, row) -= 2.0 * std::exp(2.0 * u[row]);
                    rhs[row] = -F[row];
                }
            }
        }
        A.factor();
        A.solve(rhs);

        double lambda = 1.0;
        Field trial = u;
        double res_trial = std::numeric_limits<double>::infinity();
        for (;;) {
            for (std::size_t k = 0; k < u.size(); ++k) trial[k] = u[k] + lambda * rhs[k];
            detail::tie_origin(bg, trial);
            res_trial = liouville_residual(bg, trial, Ft);
            // Once within tol the residual sits at its rounding floor and
            // need not decrease further.
            if (res_trial < res || (res <= s.tol && res_trial <= s.tol)) break;
            lambda *= s.damping;
            if (lambda < 1e-10 || s.damping == 1.0)
                throw NonConvergence("damped Newton step failed to reduce the residual (" +
                                     num(res) + ")");
        }
        step = 0.0;
        for (double d : rhs) step = std::max(step, lambda * std::abs(d));
        u = std::move(trial);
        F.swap(Ft);
        res = res_trial;
        ++it;
        rep.residual_history.push_back(res);
    }
    rep.iterations = it;
    rep.residual = res;
    if (report) *report = std::move(rep);
    return u;
}

Field solve_liouville_dirichlet(const BackgroundMetric& bg, double boundary_value, const Field& guess,
                                const NewtonSettings& s, NewtonReport* report) {
    std::vector<double> values(bg.boundary_components().size() * bg.n_theta(), boundary_value);
    return solve_liouville_dirichlet(bg, values, guess, s, report);
}

bool in_monitored_set(const BackgroundMetric& bg, int i) {
    const double r = bg.r(i);
    const double slack = 1e-12 * bg.length();
    if (bg.kind() == DomainKind::Disk) return r <= 0.9 + slack;
    return r >= 0.25 * bg.length() - slack && r <= 0.75 * bg.length() + slack;
}

LNResult loewner_nirenberg(const BackgroundMetric& bg, const LNSchedule& sched, const NewtonSettings& s,
                           bool keep_ladder) {
    if (sched.N_values.empty()) throw InvalidParameter("empty LN schedule");
    if (!(sched.stop_delta > 0.0)) throw InvalidParameter("stop_delta must be positive");
    for (std::size_t k = 1; k < sched.N_values.size(); ++k)
        if (!(sched.N_values[k] > sched.N_values[k - 1]))
            throw InvalidParameter("LN levels must be strictly increasing");

    LNResult out;
    out.trusted.resize(bg.n_r() + 1);
    for (int i = 0; i <= bg.n_r(); ++i)
        out.trusted[i] = bg.distance_to_boundary(i) >= 2.0 * bg.h() * (1.0 - 1e-12);

    Field u(bg, 0.0);
    for (std::size_t k = 0; k < sched.N_values.size(); ++k) {
        Field next = solve_liouville_dirichlet(bg, sched.N_values[k], u, s);
        if (keep_ladder) out.ladder.push_back(next);
        if (k > 0) {
            double delta = 0.0;
            for (int i = 0; i <= bg.n_r(); ++i) {
                if (!in_monitored_set(bg, i)) continue;
                for (int j = 0; j < bg.n_theta(); ++j) delta = std::max(delta, std::abs(next(i, j) - u(i, j)));
            }
            out.deltas.push_back(delta);
            out.last_delta = delta;
            if (delta <= sched.stop_delta) {
                out.u = std::move(next);
                out.level = sched.N_values[k];
                return out;
            }
        }
        u = std::move(next);
    }
    throw ScheduleExhausted("LN ladder ended at level " + num(sched.N_values.back()) +
                            " with interior change " + num(out.last_delta) + " > " + num(sched.stop_delta));
}

double DiskDirichletProfile::operator()(double r) const {
    return std::log(2.0 * a / (1.0 - a * a * r * r));
}

DiskDirichletProfile exact_disk_dirichlet(double m) {
    // a^2 = 1 + 2x^2 - 2x sqrt(1 + x^2) = (sqrt(1 + x^2) - x)^2 with x = e^{-m}.
    const double x = std::exp(-m);
    return DiskDirichletProfile{m, std::sqrt(1.0 + x * x) - x};
}

double disk_boundary_curvature(double a) { return a + (1.0 - a * a) / (2.0 * a); }

double CylinderLNProfile::operator()(double r) const {
    if (r <= 0.0 || r >= L) return std::numeric_limits<double>::infinity();
    return std::log(std::numbers::pi / L) - std::log(std::sin(std::numbers::pi * r / L));
}

CylinderLNProfile exact_cylinder_ln(double L) {
    if (!(L > 0.0)) throw InvalidParameter("cylinder length must be positive");
    return CylinderLNProfile{L};
}

double exact_disk_ln(double r) {
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return std::log(2.0 / (1.0 - r * r));
}

}  // namespace flowlab
