#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "flowlab/elliptic.hpp"
#include "flowlab/errors.hpp"
#include "flowlab/geometry.hpp"

using namespace flowlab;

namespace {

constexpr double kPi = std::numbers::pi;

// The LN profile is infinite on the boundary circle; park a finite value there.
double ln_clipped(double r) { return r < 1.0 ? exact_disk_ln(r) : 0.0; }

double max_abs_diff_on(const BackgroundMetric& bg, const Field& a, const std::function<double(double)>& exact,
                       double rmin, double rmax) {
    double e = 0.0;
    for (int i = 0; i <= bg.n_r(); ++i) {
        const double r = bg.r(i);
        if (r < rmin - 1e-12 || r > rmax + 1e-12) continue;
        for (int j = 0; j < bg.n_theta(); ++j) e = std::max(e, std::abs(a(i, j) - exact(r)));
    }
    return e;
}

}  // namespace

TEST(Grid, DiskNodesAndBoundary) {
    auto bg = make_disk(8, 1);
    EXPECT_EQ(bg.node_count(), 9u);
    for (int i = 0; i <= 8; ++i) EXPECT_DOUBLE_EQ(bg.r(i), 0.125 * i);
    ASSERT_EQ(bg.boundary_components().size(), 1u);
    EXPECT_EQ(bg.boundary_components()[0].node, 8);
    EXPECT_DOUBLE_EQ(bg.boundary_components()[0].k_g, 1.0);
    EXPECT_TRUE(bg.is_boundary_row(8));
    EXPECT_FALSE(bg.is_boundary_row(0));
}

TEST(Grid, TooCoarseIsRejected) {
    EXPECT_THROW(make_disk(4, 1), GridError);
    EXPECT_THROW(make_disk(16, 0), GridError);
    EXPECT_THROW(make_cylinder(1.0, 7, 1), GridError);
}

TEST(Grid, PolarShape) {
    auto bg = make_disk(256, 64);
    EXPECT_EQ(bg.node_count(), 257u * 64u);
    EXPECT_FALSE(bg.radial_mode());
    EXPECT_NEAR(bg.dtheta(), 2 * kPi / 64, 1e-15);
}

TEST(Grid, Cylinder) {
    auto bg = make_cylinder(kPi, 64, 1);
    EXPECT_EQ(bg.boundary_components().size(), 2u);
    EXPECT_DOUBLE_EQ(bg.r(64), kPi);
    for (const auto& c : bg.boundary_components()) EXPECT_EQ(c.k_g, 0.0);
    EXPECT_THROW(make_cylinder(-1.0, 64, 1), GridError);
    EXPECT_EQ(make_cylinder(2.0, 128, 32).node_count(), 129u * 32u);
}

TEST(Grid, DistanceToBoundaryIsExact) {
    auto disk = make_disk(10, 1);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(disk.distance_to_boundary(i), 1.0 - 0.1 * i, 1e-15);
    auto cyl = make_cylinder(2.0, 10, 1);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(cyl.distance_to_boundary(i), std::min(0.2 * i, 2.0 - 0.2 * i), 1e-15);
}

TEST(Grid, FlatBackground) {
    auto bg = make_disk(32, 8);
    for (int i = 0; i <= 32; ++i)
        for (int j = 0; j < 8; ++j) EXPECT_EQ(bg.K_g(i, j), 0.0);
    for (int i = 1; i <= 32; ++i) EXPECT_GT(bg.metric_coeff(i), 0.0);
}

TEST(Grid, UnknownComponent) {
    auto bg = make_disk(16, 1);
    EXPECT_THROW(bg.component(1), UnknownComponent);
    EXPECT_NO_THROW(make_cylinder(1.0, 16, 1).component(1));
}

TEST(FieldCheck, RejectsBadFields) {
    auto bg = make_disk(16, 4);
    Field u(bg, 0.0);
    EXPECT_NO_THROW(check_field(bg, u));
    u(3, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(check_field(bg, u), NonFiniteField);
    EXPECT_THROW(check_field(bg, Field(16, 1, 0.0)), DomainMismatch);
    Field v(bg, 0.0);
    v(0, 2) = 1e-3;
    EXPECT_THROW(check_field(bg, v), GridError);
}

TEST(Laplacian, QuadraticIsExactOnDisk) {
    for (int nt : {1, 16}) {
        auto bg = make_disk(64, nt);
        Field u = Field::radial(bg, [](double r) { return r * r; });
        Field lap = laplacian(bg, u);
        for (std::size_t k = 0; k < lap.size(); ++k) EXPECT_NEAR(lap[k], 4.0, 1e-9) << "node " << k;
    }
}

TEST(Laplacian, HyperbolicProfileSecondOrder) {
    auto err = [](int n) {
        auto bg = make_disk(n, 1);
        Field u = Field::radial(bg, ln_clipped);
        Field lap = laplacian(bg, u);
        double e = 0.0;
        for (int i = 0; bg.r(i) <= 0.9 + 1e-12; ++i)
            e = std::max(e, std::abs(lap(i) / std::exp(2.0 * u(i)) - 1.0));
        return e;
    };
    const double e1 = err(256), e2 = err(512);
    EXPECT_LT(e1, 1e-3);
    EXPECT_GE(e1 / e2, 3.5);
    EXPECT_LE(e1 / e2, 4.5);
}

TEST(Laplacian, CylinderSine) {
    const double L = 2.0;
    auto err = [L](int n) {
        auto bg = make_cylinder(L, n, 1);
        Field u = Field::radial(bg, [L](double r) { return std::sin(kPi * r / L); });
        Field lap = laplacian(bg, u);
        return max_abs_diff_on(bg, lap, [L](double r) { return -(kPi / L) * (kPi / L) * std::sin(kPi * r / L); }, 0.0,
                               L);
    };
    const double e1 = err(128), e2 = err(256);
    EXPECT_LT(e1, 1e-3);
    EXPECT_GE(e1 / e2, 3.5);
    EXPECT_LE(e1 / e2, 4.5);
}

TEST(Laplacian, StencilMatchesDirectLoops) {
    for (auto bg : {make_disk(32, 1), make_disk(32, 8), make_cylinder(1.5, 40, 6)}) {
        Field u(bg, 0.0);
        for (int i = 0; i <= bg.n_r(); ++i)
            for (int j = 0; j < bg.n_theta(); ++j)
                u(i, j) = std::cos(1.3 * bg.r(i)) + (i == 0 && bg.kind() == DomainKind::Disk ? 0.0 : 0.1 * std::sin(j * bg.dtheta()) * bg.r(i));
        Field a = laplacian(bg, u);
        Field b = apply_stencil(bg, u);
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9 * (1.0 + std::abs(a[k])));
    }
}

TEST(Laplacian, PolarModeReproducesRadialMode) {
    auto radial = make_disk(64, 1);
    auto polar = make_disk(64, 12);
    auto prof = [](double r) { return std::log(1.4 / (1.0 - 0.49 * r * r)); };
    Field a = laplacian(radial, Field::radial(radial, prof));
    Field b = laplacian(polar, Field::radial(polar, prof));
    for (int i = 0; i <= 64; ++i)
        for (int j = 0; j < 12; ++j) EXPECT_NEAR(b(i, j), a(i), 1e-12 * (1.0 + std::abs(a(i))));
    const double k_radial = geodesic_curvature_conformal(radial, Field::radial(radial, prof), 0)[0];
    for (double k : geodesic_curvature_conformal(polar, Field::radial(polar, prof), 0)) EXPECT_NEAR(k, k_radial, 1e-12);
}

TEST(NormalDerivative, Orientation) {
    auto disk = make_disk(64, 1);
    EXPECT_NEAR(normal_derivative(disk, Field::radial(disk, [](double r) { return r * r; }), 0)[0], 2.0, 1e-10);
    auto cyl = make_cylinder(kPi, 64, 1);
    Field lin = Field::radial(cyl, [](double r) { return r; });
    EXPECT_NEAR(normal_derivative(cyl, lin, 0)[0], -1.0, 1e-12);
    EXPECT_NEAR(normal_derivative(cyl, lin, 1)[0], 1.0, 1e-12);
}

TEST(NormalDerivative, BoundedProfileSecondOrder) {
    auto prof = [](double r) { return std::log(1.4 / (1.0 - 0.49 * r * r)); };
    const double exact = 2.0 * 0.49 / 0.51;
    auto err = [&](int n) {
        auto bg = make_disk(n, 1);
        return std::abs(normal_derivative(bg, Field::radial(bg, prof), 0)[0] - exact);
    };
    EXPECT_NEAR(exact, 1.9215686274509802, 1e-15);
    EXPECT_LT(err(512), 1e-4);
    EXPECT_GE(err(128) / err(256), 3.5);
    EXPECT_LE(err(128) / err(256), 4.5);
}

TEST(Curvature, FlatCases) {
    auto disk = make_disk(32, 1);
    for (double c : {0.0, 0.7, -1.3}) {
        Field K = gauss_curvature_conformal(disk, Field(disk, c));
        for (std::size_t k = 0; k < K.size(); ++k) EXPECT_NEAR(K[k], 0.0, 1e-11);
    }
    EXPECT_NEAR(geodesic_curvature_conformal(disk, Field(disk, 0.0), 0)[0], 1.0, 1e-14);
    auto cyl = make_cylinder(kPi, 32, 4);
    for (int c : {0, 1})
        for (double k : geodesic_curvature_conformal(cyl, Field(cyl, 0.0), c)) EXPECT_EQ(k, 0.0);
}

TEST(Curvature, HyperbolicDisk) {
    auto bg = make_disk(1024, 1);
    Field u = Field::radial(bg, ln_clipped);
    Field K = gauss_curvature_conformal(bg, u);
    for (int i = 0; bg.r(i) <= 0.9 + 1e-12; ++i) EXPECT_NEAR(K(i), -1.0, 1e-4) << "r = " << bg.r(i);
}

TEST(Curvature, BoundaryOfSteadyProfile) {
    const auto p = exact_disk_dirichlet(1.0);
    EXPECT_NEAR(p.a, 0.6976416910622702, 1e-13);
    EXPECT_NEAR(disk_boundary_curvature(p.a), 1.0655211322337125, 1e-13);
    auto bg = make_disk(1024, 1);
    const double k = geodesic_curvature_conformal(bg, Field::radial(bg, p), 0)[0];
    EXPECT_NEAR(k, 1.0655211322337125, 1e-5);
}

TEST(Curvature, ConformalScaling) {
    for (auto bg : {make_disk(48, 1), make_disk(48, 6), make_cylinder(2.0, 48, 1)}) {
        Field u = Field::radial(bg, [](double r) { return 0.3 * std::cos(2.0 * r) - 0.2 * r; });
        const Field K = gauss_curvature_conformal(bg, u);
        for (double c : {0.25, -1.5}) {
            Field v = u;
            for (auto& x : v.values()) x += c;
            const Field Kc = gauss_curvature_conformal(bg, v);
            for (std::size_t k = 0; k < K.size(); ++k)
                EXPECT_NEAR(Kc[k], std::exp(-2.0 * c) * K[k], 1e-9 * (1.0 + std::abs(K[k])));
            for (const auto& comp : bg.boundary_components()) {
                const auto k0 = geodesic_curvature_conformal(bg, u, comp.id);
                const auto k1 = geodesic_curvature_conformal(bg, v, comp.id);
                for (std::size_t j = 0; j < k0.size(); ++j)
                    EXPECT_NEAR(k1[j], std::exp(-c) * k0[j], 1e-11 * (1.0 + std::abs(k0[j])));
            }
        }
    }
}
