#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace flowlab {

enum class DomainKind { Disk, Cylinder };

// One boundary circle. `node` is its radial index; `inward` is +1 when the
// interior lies at larger radial index (the cylinder's r = 0 end).
struct BoundaryComponent {
    int id = 0;
    int node = 0;
    int inward = -1;
    double k_g = 0.0;
};

// Compressed-row form of the discrete Laplace-Beltrami operator. Boundary
// rows hold the one-sided stencils; solvers overwrite them with closures.
struct Stencil {
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    int lower_bandwidth() const;
    int upper_bandwidth() const;
};

// Flat background metric on a node-centred polar or cylindrical grid with
// n_r radial intervals (n_r + 1 radial nodes) and n_theta angular nodes.
// Immutable after construction.
class BackgroundMetric {
public:
    DomainKind kind() const { return kind_; }
    // Radial extent: 1 on the disk, L on the cylinder.
    double length() const { return length_; }
    int n_r() const { return n_r_; }
    int n_theta() const { return n_theta_; }
    bool radial_mode() const { return n_theta_ == 1; }
    double h() const { return h_; }
    double dtheta() const;

    std::size_t node_count() const { return static_cast<std::size_t>(n_r_ + 1) * n_theta_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_theta_ + j; }

    double r(int i) const { return i * h_; }
    double distance_to_boundary(int i) const;
    // Angular metric coefficient f in dr^2 + f ds^2.
    double metric_coeff(int i) const;
    double K_g(int i, int j) const { return K_g_[index(i, j)]; }

    const std::vector<BoundaryComponent>& boundary_components() const { return components_; }
    const BoundaryComponent& component(int id) const;
    bool is_boundary_row(int i) const;

    const Stencil& laplace_stencil() const { return stencil_; }

private:
    friend BackgroundMetric make_disk(int n_r, int n_theta);
    friend BackgroundMetric make_cylinder(double L, int n_r, int n_theta);
    void build_stencil();

    DomainKind kind_ = DomainKind::Disk;
    double length_ = 1.0;
    int n_r_ = 0;
    int n_theta_ = 1;
    double h_ = 0.0;
    std::vector<double> K_g_;
    std::vector<BoundaryComponent> components_;
    Stencil stencil_;
};

BackgroundMetric make_disk(int n_r, int n_theta);
BackgroundMetric make_cylinder(double L, int n_r, int n_theta);

// Scalar sampled at every node, row-major in (radial, angular).
class Field {
public:
    Field() = default;
    Field(int n_r, int n_theta, double value = 0.0);
    explicit Field(const BackgroundMetric& bg, double value = 0.0);

    // Samples a radial profile; angular copies are identical.
    static Field radial(const BackgroundMetric& bg, const std::function<double(double)>& profile);

    int n_r() const { return n_r_; }
    int n_theta() const { return n_theta_; }
    std::size_t size() const { return values_.size(); }

    double& operator()(int i, int j = 0) { return values_[static_cast<std::size_t>(i) * n_theta_ + j]; }
    double operator()(int i, int j = 0) const { return values_[static_cast<std::size_t>(i) * n_theta_ + j]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double sup() const;
    double inf() const;
    bool fits(const BackgroundMetric& bg) const;

private:
    int n_r_ = 0;
    int n_theta_ = 0;
    std::vector<double> values_;
};

// Throws DomainMismatch, NonFiniteField, or (2-D disk) GridError when origin
// samples disagree.
void check_field(const BackgroundMetric& bg, const Field& u);

Field laplacian(const BackgroundMetric& bg, const Field& u);
// y = A u for the assembled stencil, including the one-sided boundary rows.
Field apply_stencil(const BackgroundMetric& bg, const Field& u);

// Outward normal derivative on one boundary circle, one value per angle.
std::vector<double> normal_derivative(const BackgroundMetric& bg, const Field& u, int component);

// K of e^{2u} g.
Field gauss_curvature_conformal(const BackgroundMetric& bg, const Field& u);
// k of the boundary circle in e^{2u} g.
std::vector<double> geodesic_curvature_conformal(const BackgroundMetric& bg, const Field& u,
                                                 int component);

}  // namespace flowlab
