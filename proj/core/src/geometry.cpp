#include "flowlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "flowlab/errors.hpp"

namespace flowlab {

namespace {

constexpr int kMinIntervals = 8;

void require_grid(int n_r, int n_theta) {
    if (n_r < kMinIntervals)
        throw GridError("grid too coarse: n_r = " + std::to_string(n_r) + " (need >= 8)");
    if (n_theta < 1) throw GridError("n_theta must be >= 1");
}

}  // namespace

int Stencil::lower_bandwidth() const {
    int bw = 0;
    for (std::size_t row = 0; row + 1 < row_ptr.size(); ++row)
        for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k)
            bw = std::max(bw, static_cast<int>(row) - col[k]);
    return bw;
}

int Stencil::upper_bandwidth() const {
    int bw = 0;
    for (std::size_t row = 0; row + 1 < row_ptr.size(); ++row)
        for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k)
            bw = std::max(bw, col[k] - static_cast<int>(row));
    return bw;
}

double BackgroundMetric::dtheta() const { return 2.0 * std::numbers::pi / n_theta_; }

double BackgroundMetric::distance_to_boundary(int i) const {
    const double ri = r(i);
    if (kind_ == DomainKind::Disk) return 1.0 - ri;
    return std::min(ri, length_ - ri);
}

double BackgroundMetric::metric_coeff(int i) const {
    if (kind_ == DomainKind::Disk) return r(i) * r(i);
    return 1.0;
}

const BoundaryComponent& BackgroundMetric::component(int id) const {
    for (const auto& c : components_)
        if (c.id == id) return c;
    throw UnknownComponent("unknown boundary component " + std::to_string(id));
}

bool BackgroundMetric::is_boundary_row(int i) const {
    for (const auto& c : components_)
        if (c.node == i) return true;
    return false;
}

void BackgroundMetric::build_stencil() {
    const int N = n_r_;
    const int nt = n_theta_;
    const double h2 = h_ * h_;
    const double ang = radial_mode() ? 0.0 : 1.0 / (dtheta() * dtheta());
    const bool disk = kind_ == DomainKind::Disk;

    stencil_ = Stencil{};
    stencil_.row_ptr.push_back(0);
    std::vector<std::pair<int, double>> row;

    auto at = [&](int i, int j) { return static_cast<int>(index(i, ((j % nt) + nt) % nt)); };
    auto flush = [&]() {
        std::sort(row.begin(), row.end());
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0 && row[k].first == stencil_.col.back()) {
                stencil_.val.back() += row[k].second;
            } else {
                stencil_.col.push_back(row[k].first);
                stencil_.val.push_back(row[k].second);
            }
        }
        stencil_.row_ptr.push_back(static_cast<int>(stencil_.col.size()));
        row.clear();
    };

    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j < nt; ++j) {
            if (disk && i == 0) {
                row.emplace_back(at(0, j), -4.0 / h2);
                for (int k = 0; k < nt; ++k) row.emplace_back(at(1, k), 4.0 / (h2 * nt));
                flush();
                continue;
            }
            // radial second derivative
            if (i > 0 && i < N) {
                row.emplace_back(at(i - 1, j), 1.0 / h2);
                row.emplace_back(at(i, j), -2.0 / h2);
                row.emplace_back(at(i + 1, j), 1.0 / h2);
            } else {
                const int s = (i == 0) ? 1 : -1;
                row.emplace_back(at(i, j), 2.0 / h2);
                row.emplace_back(at(i + s, j), -5.0 / h2);
                row.emplace_back(at(i + 2 * s, j), 4.0 / h2);
                row.emplace_back(at(i + 3 * s, j), -1.0 / h2);
            }
            double fa = ang;
            if (disk) {
                const double ri = r(i);
                if (i < N) {
                    row.emplace_back(at(i - 1, j), -1.0 / (2.0 * h_ * ri));
                    row.emplace_back(at(i + 1, j), 1.0 / (2.0 * h_ * ri));
                } else {
                    row.emplace_back(at(i, j), 3.0 / (2.0 * h_ * ri));
                    row.emplace_back(at(i - 1, j), -4.0 / (2.0 * h_ * ri));
                    row.emplace_back(at(i - 2, j), 1.0 / (2.0 * h_ * ri));
                }
                fa = ang / (ri * ri);
            }
            if (fa != 0.0) {
                row.emplace_back(at(i, j - 1), fa);
                row.emplace_back(at(i, j), -2.0 * fa);
                row.emplace_back(at(i, j + 1), fa);
            }
            flush();
        }
    }
}

BackgroundMetric make_disk(int n_r, int n_theta) {
    require_grid(n_r, n_theta);
    BackgroundMetric bg;
    bg.kind_ = DomainKind::Disk;
    bg.length_ = 1.0;
    bg.n_r_ = n_r;
    bg.n_theta_ = n_theta;
    bg.h_ = 1.0 / n_r;
    bg.K_g_.assign(bg.node_count(), 0.0);
    bg.components_ = {BoundaryComponent{0, n_r, -1, 1.0}};
    bg.build_stencil();
    return bg;
}

BackgroundMetric make_cylinder(double L, int n_r, int n_theta) {
    if (!(L > 0.0) || !std::isfinite(L)) throw GridError("cylinder length must be positive");
    require_grid(n_r, n_theta);
    BackgroundMetric bg;
    bg.kind_ = DomainKind::Cylinder;
    bg.length_ = L;
    bg.n_r_ = n_r;
    bg.n_theta_ = n_theta;
    bg.h_ = L / n_r;
    bg.K_g_.assign(bg.node_count(), 0.0);
    bg.components_ = {BoundaryComponent{0, 0, 1, 0.0}, BoundaryComponent{1, n_r, -1, 0.0}};
    bg.build_stencil();
    return bg;
}

Field::Field(int n_r, int n_theta, double value)
    : n_r_(n_r), n_theta_(n_theta), values_(static_cast<std::size_t>(n_r + 1) * n_theta, value) {}

Field::Field(const BackgroundMetric& bg, double value) : Field(bg.n_r(), bg.n_theta(), value) {}

Field Field::radial(const BackgroundMetric& bg, const std::function<double(double)>& profile) {
    Field u(bg);
    for (int i = 0; i <= bg.n_r(); ++i) {
        const double v = profile(bg.r(i));
        for (int j = 0; j < bg.n_theta(); ++j) u(i, j) = v;
    }
    return u;
}

double Field::sup() const { return *std::max_element(values_.begin(), values_.end()); }
double Field::inf() const { return *std::min_element(values_.begin(), values_.end()); }

bool Field::fits(const BackgroundMetric& bg) const {
    return n_r_ == bg.n_r() && n_theta_ == bg.n_theta();
}

void check_field(const BackgroundMetric& bg, const Field& u) {
    if (!u.fits(bg))
        throw DomainMismatch("field shape " + std::to_string(u.n_r() + 1) + "x" +
                             std::to_string(u.n_theta()) + " does not match grid " +
                             std::to_string(bg.n_r() + 1) + "x" + std::to_string(bg.n_theta()));
    for (double v : u.values())
        if (!std::isfinite(v)) throw NonFiniteField("field contains NaN or Inf");
    if (bg.kind() == DomainKind::Disk) {
        for (int j = 1; j < bg.n_theta(); ++j)
            if (std::abs(u(0, j) - u(0, 0)) > 1e-12 * (1.0 + std::abs(u(0, 0))))
                throw GridError("disk origin samples differ across angles");
    }
}

Field laplacian(const BackgroundMetric& bg, const Field& u) {
    check_field(bg, u);
    const int N = bg.n_r();
    const int nt = bg.n_theta();
    const double h = bg.h();
    const double h2 = h * h;
    const double ang = bg.radial_mode() ? 0.0 : 1.0 / (bg.dtheta() * bg.dtheta());
    const bool disk = bg.kind() == DomainKind::Disk;
    Field out(bg);

    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j < nt; ++j) {
            const double c = u(i, j);
            if (disk && i == 0) {
                double mean = u(1, 0);
                for (int k = 1; k < nt; ++k) mean += (u(1, k) - u(1, 0)) / nt;
                out(i, j) = 4.0 * (mean - c) / h2;
                continue;
            }
            double urr, ur;
            if (i > 0 && i < N) {
                urr = (u(i + 1, j) - 2.0 * c + u(i - 1, j)) / h2;
                ur = (u(i + 1, j) - u(i - 1, j)) / (2.0 * h);
            } else {
                const int s = (i == 0) ? 1 : -1;
                urr = (2.0 * c - 5.0 * u(i + s, j) + 4.0 * u(i + 2 * s, j) - u(i + 3 * s, j)) / h2;
                ur = -s * (3.0 * c - 4.0 * u(i + s, j) + u(i + 2 * s, j)) / (2.0 * h);
            }
            double uss = 0.0;
            if (ang != 0.0) {
                const int jm = (j + nt - 1) % nt;
                const int jp = (j + 1) % nt;
                uss = (u(i, jp) - 2.0 * c + u(i, jm)) * ang;
            }
            if (disk) {
                const double ri = bg.r(i);
                out(i, j) = urr + ur / ri + uss / (ri * ri);
            } else {
                out(i, j) = urr + uss;
            }
        }
    }
    return out;
}

Field apply_stencil(const BackgroundMetric& bg, const Field& u) {
    check_field(bg, u);
    const Stencil& st = bg.laplace_stencil();
    Field out(bg);
    for (std::size_t row = 0; row < u.size(); ++row) {
        double acc = 0.0;
        for (int k = st.row_ptr[row]; k < st.row_ptr[row + 1]; ++k) acc += st.val[k] * u[st.col[k]];
        out[row] = acc;
    }
    return out;
}

std::vector<double> normal_derivative(const BackgroundMetric& bg, const Field& u, int component) {
    const BoundaryComponent& c = bg.component(component);
    check_field(bg, u);
    const int s = c.inward;
    const int b = c.node;
    std::vector<double> out(bg.n_theta());
    for (int j = 0; j < bg.n_theta(); ++j)
        out[j] = (3.0 * u(b, j) - 4.0 * u(b + s, j) + u(b + 2 * s, j)) / (2.0 * bg.h());
    return out;
}

Field gauss_curvature_conformal(const BackgroundMetric& bg, const Field& u) {
    Field lap = laplacian(bg, u);
    for (int i = 0; i <= bg.n_r(); ++i)
        for (int j = 0; j < bg.n_theta(); ++j)
            lap(i, j) = std::exp(-2.0 * u(i, j)) * (bg.K_g(i, j) - lap(i, j));
    return lap;
}

std::vector<double> geodesic_curvature_conformal(const BackgroundMetric& bg, const Field& u,
                                                 int component) {
    const BoundaryComponent& c = bg.component(component);
    std::vector<double> k = normal_derivative(bg, u, component);
    for (int j = 0; j < bg.n_theta(); ++j) k[j] = std::exp(-u(c.node, j)) * (k[j] + c.k_g);
    return k;
}

}  // namespace flowlab
