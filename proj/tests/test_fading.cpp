#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <gtest/gtest.h>

#include "risnet/fading.hpp"
#include "risnet/units.hpp"
#include "stat_helpers.hpp"

using namespace risnet;

TEST(Units, Conversions) {
    EXPECT_NEAR(db_to_linear(-30.0), 1e-3, 1e-18);
    EXPECT_NEAR(dbm_to_watts(-70.0), 1e-10, 1e-25);
    EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-15);
    EXPECT_NEAR(watts_to_dbm(1e-3), 0.0, 1e-12);
    EXPECT_NEAR(linear_to_db(100.0), 20.0, 1e-12);
}

TEST(PathLoss, Direct) {
    PathLossParams pl{1e-3, 1e-3, 2.5, 3.0};
    EXPECT_DOUBLE_EQ(pathloss_direct(pl, 1.0), 1e-3);
    EXPECT_NEAR(pathloss_direct(pl, 20.0), 5.5902e-7, 1e-11);
    pl.alpha = 4.0;
    EXPECT_NEAR(pathloss_direct(pl, 2.0) / pathloss_direct(pl, 4.0), 16.0, 1e-12);
    EXPECT_THROW(pathloss_direct(pl, 0.0), std::domain_error);
}

TEST(PathLoss, Reflected) {
    PathLossParams pl{1e-3, 1e-3, 2.5, 1.0};
    EXPECT_DOUBLE_EQ(pathloss_reflected(pl, 1.0), 1e-3);
    pl.d0 = 3.0;
    EXPECT_NEAR(pathloss_reflected(pl, std::hypot(20.0, 3.0)), 3.488e-8, 1e-11);
    PathLossParams swapped = pl;
    swapped.d0 = 5.0;
    EXPECT_DOUBLE_EQ(pathloss_reflected(pl, 5.0), pathloss_reflected(swapped, 3.0));
    EXPECT_THROW(pathloss_reflected(pl, -1.0), std::domain_error);
}

TEST(PathLoss, DecreasingInDistanceAndExponent) {
    PathLossParams pl{1e-3, 1e-3, 2.5, 3.0};
    double prev = INFINITY;
    for (double d = 1.5; d < 1e4; d *= 1.7) {
        const double v = pathloss_direct(pl, d);
        EXPECT_LT(v, prev);
        prev = v;
    }
    PathLossParams steeper = pl;
    steeper.alpha = 3.5;
    EXPECT_LT(pathloss_direct(steeper, 10.0), pathloss_direct(pl, 10.0));
    EXPECT_LT(pathloss_reflected(steeper, 10.0), pathloss_reflected(pl, 10.0));
}

TEST(PathLoss, Validation) {
    EXPECT_THROW((PathLossParams{0.0, 1e-3, 2.5, 3.0}.validate()), std::domain_error);
    EXPECT_THROW((PathLossParams{1e-3, 1e-3, 2.0, 3.0}.validate()), std::domain_error);
    EXPECT_THROW((PathLossParams{1e-3, 1e-3, 2.5, 0.0}.validate()), std::domain_error);
    EXPECT_THROW((FadingParams{0.4, 1.0}.validate()), std::domain_error);
}

TEST(Nakagami, RayleighCaseMatchesCdf) {
    const auto x = sample_nakagami_mag(1.0, 200000, 1);
    const double d = testutil::ks_statistic(x, [](double v) { return 1.0 - std::exp(-v * v); });
    EXPECT_LT(d, testutil::ks_critical_1pct(x.size()));
}

TEST(Nakagami, UnitPowerAndMean) {
    for (double m : {0.5, 1.0, 2.0, 4.0}) {
        const std::size_t n = 200000;
        const auto x = sample_nakagami_mag(m, n, 9);
        double s = 0.0, s2 = 0.0, s4 = 0.0;
        for (double v : x) {
            s += v;
            s2 += v * v;
            s4 += v * v * v * v;
        }
        const double var_pow = s4 / n - (s2 / n) * (s2 / n);
        EXPECT_NEAR(s2 / n, 1.0, 3.0 * std::sqrt(var_pow / n)) << m;
        if (m == 2.0) {
            const double want = std::tgamma(2.5) / (std::tgamma(2.0) * std::sqrt(2.0));  // 0.93999
            const double var = 1.0 - want * want;
            EXPECT_NEAR(s / n, want, 3.0 * std::sqrt(var / n));
        }
    }
}

TEST(Nakagami, PowerIsGammaDistributed) {
    const double m = 2.0;
    auto x = sample_nakagami_mag(m, 100000, 4);
    for (double& v : x) v *= v;
    boost::math::gamma_distribution<double> g(m, 1.0 / m);
    EXPECT_LT(testutil::ks_statistic(x, [&](double v) { return boost::math::cdf(g, v); }),
              testutil::ks_critical_1pct(x.size()));
    EXPECT_THROW(sample_nakagami_mag(0.3, 10, 1), std::domain_error);
}

TEST(Phase, UniformAndCircular) {
    const auto th = sample_uniform_phase(200000, 5);
    std::complex<double> acc{};
    for (double t : th) {
        ASSERT_GE(t, -std::numbers::pi);
        ASSERT_LT(t, std::numbers::pi);
        acc += std::polar(1.0, t);
    }
    acc /= static_cast<double>(th.size());
    EXPECT_LT(std::abs(acc), 4.0 / std::sqrt(static_cast<double>(th.size())));
    const double d = testutil::ks_statistic(th, [](double t) { return (t + std::numbers::pi) / (2.0 * std::numbers::pi); });
    EXPECT_LT(d, testutil::ks_critical_1pct(th.size()));
    EXPECT_EQ(sample_uniform_phase(50, 5), sample_uniform_phase(50, 5));
}
