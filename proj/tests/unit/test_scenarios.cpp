#include <gtest/gtest.h>

#include <cmath>

#include "flowlab/errors.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/scenarios.hpp"

using namespace flowlab;

TEST(LowSpeed, Values) {
    EXPECT_NEAR(make_low_speed(LowSpeedKind::LogShift).value(0.0), 0.0, 1e-15);
    EXPECT_NEAR(make_low_speed(LowSpeedKind::Power, 0.5).value(100.0), 10.04987562112089, 1e-12);
    EXPECT_NEAR(make_low_speed(LowSpeedKind::LogLog).value(0.0), std::log(std::log(100.0)), 1e-15);
    EXPECT_NEAR(make_low_speed(LowSpeedKind::LogShift).derivative(3.0), 0.25, 1e-15);
    EXPECT_THROW(make_low_speed(LowSpeedKind::Power, 1.5), InvalidParameter);
    EXPECT_THROW(make_low_speed(LowSpeedKind::Power, 0.0), InvalidParameter);
}

TEST(LowSpeed, DerivativesMatchFiniteDifferences) {
    for (auto kind : {LowSpeedKind::LogShift, LowSpeedKind::Power, LowSpeedKind::LogLog}) {
        const auto f = make_low_speed(kind, 0.3);
        for (double t : {0.5, 4.0, 40.0}) {
            const double h = 1e-5;
            EXPECT_NEAR(f.derivative(t), (f.value(t + h) - f.value(t - h)) / (2 * h), 1e-8);
        }
    }
}

TEST(LowSpeed, Check) {
    double onset = -1.0;
    EXPECT_TRUE(make_low_speed(LowSpeedKind::LogShift).check(100.0, 0.1, &onset));
    EXPECT_GE(onset, 9.0);
    EXPECT_LE(onset, 9.1);
    EXPECT_TRUE(make_low_speed(LowSpeedKind::LogLog).check(100.0, 0.01));
    LowSpeedFunction fast;
    fast.kind = LowSpeedKind::Custom;
    fast.custom = [](double t) { return t * t; };
    fast.custom_derivative = [](double t) { return 2 * t; };
    EXPECT_FALSE(fast.check(100.0, 0.1));
    LowSpeedFunction empty;
    empty.kind = LowSpeedKind::Custom;
    EXPECT_THROW(low_speed_phi(empty), InvalidParameter);
}

TEST(FastGrowth, ClosedForm) {
    const auto y = fast_growth_y(1.0);
    EXPECT_NEAR(y.value(0.0), 1.0, 1e-15);
    EXPECT_NEAR(y.value(1.0), 26.44738256425022, 1e-11);
    for (double t : {0.0, 0.7, 2.5}) EXPECT_NEAR(y.derivative(t), 3.0 * y.value(t) + 1.0, 1e-9 * y.derivative(t));
    EXPECT_THROW(fast_growth_y(0.0), InvalidParameter);
    EXPECT_THROW(fast_growth_y(-1.0), InvalidParameter);
    const auto bc = fast_growth_phi(y);
    EXPECT_EQ(bc.growth_class, GrowthClass::FastGrowth);
    EXPECT_NEAR(bc.value(0, 0, 1.0), y.value(1.0), 1e-12);
}

TEST(FastGrowth, WindowUpperEdge) {
    const auto y = fast_growth_y(1.0);
    EXPECT_NEAR(window_upper(y, 0.0), -1.0, 1e-15);
    EXPECT_NEAR(window_upper(y, 1.0), 0.9793914408, 1e-9);
    EXPECT_NEAR(window_upper(y, 2.0), 6.1310282977, 1e-9);
    double prev = window_upper(y, 0.0);
    for (double t = 0.1; t <= 5.0; t += 0.1) {
        const double u = window_upper(y, t);
        EXPECT_GT(u, prev);
        prev = u;
    }
}

TEST(FastGrowth, WindowOpens) {
    auto bg = make_disk(256, 1);
    const auto y = fast_growth_y(1.0);
    FlowConfig cfg{bg, Field(bg, 1.0), fast_growth_phi(y)};
    cfg.t_end = 3.0;
    const Trajectory tr = run(cfg);
    const PsiWindow w = psi_window(tr, y);
    EXPECT_GT(w.first_nonempty, 0.0);
    EXPECT_LE(w.first_nonempty, 3.0);
    EXPECT_GE(w.upper(w.first_nonempty), w.lower(w.first_nonempty) - 1e-12);
    EXPECT_NEAR(w.lower(0.0), tr.steps.front().k[0][1], 1e-15);

    cfg.t_end = 0.05;
    EXPECT_THROW(psi_window(run(cfg), y), EmptyWindow);
}

TEST(Divergence, InitialDataInequalities) {
    auto bg = make_disk(512, 1);
    for (double eps0 : {0.01, 0.1, 0.5}) {
        const ScenarioData d = divergence_example(bg, eps0, 0.25, 1e-3);
        const double ceiling = -std::log1p(eps0);
        for (double v : d.u0.values()) EXPECT_LT(v, ceiling);
        const double psi = d.bc.value(0, 0, 0.0);
        EXPECT_LE(psi, 1.0 + eps0);
        EXPECT_NEAR(psi, d.bc.value(0, 0, 17.0), 0.0);
        EXPECT_NEAR(check_compatibility_robin(bg, d.u0, d.bc)[0], 0.0, 1e-12);
    }
    EXPECT_LE(divergence_example(bg, 0.1).bc.value(0, 0, 0.0), 1.1);
}

TEST(Divergence, Rejections) {
    auto bg = make_disk(128, 1);
    EXPECT_THROW(divergence_example(bg, 0.01, 1e-3, 0.05), InvalidParameter);
    EXPECT_THROW(divergence_example(bg, 0.1, 0.25, 0.0), InvalidParameter);
    EXPECT_THROW(divergence_example(bg, 1.5), InvalidParameter);
    EXPECT_THROW(divergence_example(make_cylinder(2.0, 64, 1), 0.1), InvalidParameter);
}

TEST(SteadyRadial, ClosedForm) {
    auto bg = make_disk(1024, 1);
    const ScenarioData d = steady_radial_example(bg, 0.5, true);
    EXPECT_NEAR(d.u0(0), 0.0, 1e-15);
    EXPECT_NEAR(d.bc.value(0, 0, 0.0), 1.25, 1e-5);
    double prev = d.bc.value(0, 0, 0.0);
    for (double t = 0.5; t <= 20.0; t += 0.5) {
        const double v = d.bc.value(0, 0, t);
        EXPECT_LT(v, prev);
        EXPECT_GT(v, 1.0);
        prev = v;
    }
    EXPECT_NEAR(d.bc.value(0, 0, 40.0), 1.0, 1e-15);
}

TEST(SteadyRadial, DiscreteVariantIsCompatible) {
    auto bg = make_disk(256, 1);
    const ScenarioData d = steady_radial_example(bg, 0.5);
    EXPECT_NEAR(check_compatibility_robin(bg, d.u0, d.bc)[0], 0.0, 1e-12);
    EXPECT_THROW(steady_radial_example(bg, 1.0), InvalidParameter);
    EXPECT_THROW(steady_radial_example(make_cylinder(2.0, 64, 1), 0.5), InvalidParameter);
}
