#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "risnet/errors.hpp"
#include "risnet/quadrature.hpp"

using namespace risnet;

TEST(Quadrature, PolynomialIsExactOnOneSegment) {
    const QuadratureResult r = integrate([](double x) { return x * x * x * x - 2.0 * x; }, -1.0, 2.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, (32.0 + 1.0) / 5.0 - 3.0, 1e-14);
    EXPECT_EQ(r.evaluations, 15u);
}

TEST(Quadrature, PeakedAndEndpointSingular) {
    const QuadratureResult a = integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
    EXPECT_TRUE(a.converged);
    EXPECT_NEAR(a.value, 2.0 * std::atan(1.0 / 1e-2) / 1e-2, 1e-8);

    const QuadratureResult b = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    EXPECT_TRUE(b.converged);
    EXPECT_NEAR(b.value, 2.0, 1e-9);
}

TEST(Quadrature, SemiInfinite) {
    const QuadratureResult r = integrate_semi_infinite([](double x) { return std::exp(-x) / (1.0 + x); });
    EXPECT_TRUE(r.converged);
    // e * E1(1)
    EXPECT_NEAR(r.value, std::exp(1.0) * 0.21938393439552027, 1e-11);

    const QuadratureResult g = integrate_semi_infinite([](double x) { return std::exp(-x * x); });
    EXPECT_NEAR(g.value, std::sqrt(std::numbers::pi) / 2.0, 1e-11);
}

TEST(Quadrature, ReportsNonConvergence) {
    QuadratureOptions opt;
    opt.max_intervals = 8;
    const QuadratureResult r = integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt);
    EXPECT_FALSE(r.converged);
    EXPECT_LT(r.worst_lo, 0.2);
    EXPECT_THROW(integrate_or_throw([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt, "osc"),
                 quadrature_error);
    try {
        integrate_or_throw([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt, "osc");
    } catch (const quadrature_error& e) {
        EXPECT_LT(e.worst_lo(), e.worst_hi());
    }
}
