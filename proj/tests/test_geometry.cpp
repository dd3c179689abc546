#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "risnet/errors.hpp"
#include "risnet/geometry.hpp"
#include "stat_helpers.hpp"

using namespace risnet;

TEST(Window, RejectsNonPositiveRadius) {
    EXPECT_THROW(Window(0.0), std::domain_error);
    EXPECT_THROW(Window(-1.0), std::domain_error);
    EXPECT_NEAR(Window(2.0).area(), 4.0 * std::numbers::pi, 1e-12);
}

TEST(Hppp, EmptyAndDomain) {
    EXPECT_TRUE(sample_hppp(0.0, Window(5000.0), 1).empty());
    EXPECT_THROW(sample_hppp(-1e-4, Window(5000.0), 1), std::domain_error);
}

TEST(Hppp, PoissonMeanCount) {
    const Window w(5000.0);
    const double expect = 1e-4 * w.area();  // 7853.98
    double sum = 0.0;
    const int reps = 1000;
    for (int i = 0; i < reps; ++i) {
        Rng rng = make_stream(7, i);
        sum += static_cast<double>(sample_hppp(rng, 1e-4, w).size());
    }
    const double sigma = std::sqrt(expect / reps);
    EXPECT_NEAR(sum / reps, expect, 3.0 * sigma);
}

TEST(Hppp, PointsInsideAndUniformRadius) {
    Rng rng = make_stream(3, 0);
    const Window w(100.0);
    const auto pts = sample_hppp(rng, 0.5, w);
    std::vector<double> r2;
    for (const Point2& p : pts) {
        ASSERT_LT(norm(p), 100.0);
        r2.push_back(norm(p) * norm(p) / 1e4);  // uniform on (0, 1) for a uniform disk
    }
    EXPECT_LT(testutil::ks_statistic(r2, [](double x) { return x; }), testutil::ks_critical_1pct(r2.size()));
}

TEST(Hppp, Determinism) {
    const auto a = sample_hppp(1e-4, Window(1000.0), 42);
    const auto b = sample_hppp(1e-4, Window(1000.0), 42);
    const auto c = sample_hppp(1e-4, Window(1000.0), 43);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].x, b[i].x);
        EXPECT_EQ(a[i].y, b[i].y);
    }
    bool differs = a.size() != c.size();
    for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].x != c[i].x;
    EXPECT_TRUE(differs);
}

TEST(Hppp, VoidProbability) {
    // P(no point in a sub-disk of area A) = exp(-lambda A)
    const double lambda = 1e-4;
    const double r = 60.0;
    const double want = std::exp(-lambda * std::numbers::pi * r * r);
    int empty = 0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i) {
        Rng rng = make_stream(11, i);
        bool any = false;
        for (const Point2& p : sample_hppp(rng, lambda, Window(500.0))) any = any || norm(p) < r;
        empty += any ? 0 : 1;
    }
    const double got = static_cast<double>(empty) / reps;
    EXPECT_NEAR(got, want, 3.0 * std::sqrt(want * (1.0 - want) / reps));
}

TEST(Gpp, DomainErrors) {
    const Window w(100.0);
    EXPECT_THROW(sample_gpp(1e-3, -0.1, 3.0, w, 1), std::domain_error);
    EXPECT_THROW(sample_gpp(1e-3, 1.1, 3.0, w, 1), std::domain_error);
    EXPECT_THROW(sample_gpp(1e-3, 0.5, 0.0, w, 1), std::domain_error);
}

TEST(Gpp, DegeneratesWithoutRis) {
    const GppRealization g = sample_gpp(1e-3, 0.0, 3.0, Window(500.0), 5);
    ASSERT_FALSE(g.clusters.empty());
    for (const Cluster& c : g.clusters) EXPECT_FALSE(c.daughter.has_value());
}

TEST(Gpp, DaughterDistanceAndFraction) {
    const GppRealization g = sample_gpp(1e-3, 1.0, 3.0, Window(500.0), 5);
    for (const Cluster& c : g.clusters) {
        ASSERT_TRUE(c.daughter.has_value());
        EXPECT_NEAR(distance(*c.daughter, c.parent), 3.0, 3e-9);
    }
    std::size_t total = 0, with = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng = make_stream(17, i);
        const GppRealization h = sample_gpp(rng, 1e-4, 0.5, 3.0, Window(5000.0));
        total += h.clusters.size();
        for (const Cluster& c : h.clusters) with += c.daughter ? 1 : 0;
    }
    const double frac = static_cast<double>(with) / static_cast<double>(total);
    EXPECT_NEAR(frac, 0.5, 3.0 * std::sqrt(0.25 / static_cast<double>(total)));
}

TEST(Gpp, DaughterAnglesUniform) {
    Rng rng = make_stream(23, 0);
    const GppRealization g = sample_gpp(rng, 1e-4, 1.0, 3.0, Window(3000.0));
    std::vector<double> ang;
    for (const Cluster& c : g.clusters) {
        double a = std::atan2(c.daughter->y - c.parent.y, c.daughter->x - c.parent.x);
        if (a < 0.0) a += 2.0 * std::numbers::pi;
        ang.push_back(a);
    }
    ASSERT_GT(ang.size(), 1000u);
    const double two_pi = 2.0 * std::numbers::pi;
    EXPECT_LT(testutil::ks_statistic(ang, [&](double x) { return x / two_pi; }), testutil::ks_critical_1pct(ang.size()));
}

TEST(NearestParent, BasicsAndTies) {
    GppRealization g;
    g.clusters.push_back({{20.0, 0.0}, std::nullopt});
    auto [i, d] = nearest_parent(g, {0.0, 0.0});
    EXPECT_EQ(i, 0u);
    EXPECT_DOUBLE_EQ(d, 20.0);

    GppRealization h;
    h.clusters.push_back({{0.0, 10.0001}, std::nullopt});
    h.clusters.push_back({{10.0, 0.0}, std::nullopt});
    EXPECT_EQ(nearest_parent(h, {0.0, 0.0}).first, 1u);

    GppRealization t;
    t.clusters.push_back({{0.0, 5.0}, std::nullopt});
    t.clusters.push_back({{5.0, 0.0}, std::nullopt});
    EXPECT_EQ(nearest_parent(t, {0.0, 0.0}).first, 0u);

    EXPECT_THROW(nearest_parent(GppRealization{}, {0.0, 0.0}), empty_realization_error);
}

TEST(NearestParent, ContactDistanceMean) {
    const double lambda = 1e-4;
    const int reps = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < reps; ++i) {
        Rng rng = make_stream(29, i);
        const GppRealization g = sample_gpp(rng, lambda, 0.5, 3.0, Window(800.0));
        const double d = nearest_parent(g, {0.0, 0.0}).second;
        sum += d;
        sum2 += d * d;
    }
    const double m = sum / reps;
    const double sd = std::sqrt(sum2 / reps - m * m);
    EXPECT_NEAR(m, 1.0 / (2.0 * std::sqrt(lambda)), 3.0 * sd / std::sqrt(reps));
}

TEST(Gpp, CsvDump) {
    GppRealization g;
    g.clusters.push_back({{1.5, -2.0}, Point2{4.5, -2.0}});
    g.clusters.push_back({{7.0, 8.0}, std::nullopt});
    std::ostringstream os;
    write_realization_csv(os, g);
    EXPECT_EQ(os.str(), "cluster_id,parent_x,parent_y,has_ris,ris_x,ris_y\n0,1.5,-2,1,4.5,-2\n1,7,8,0,,\n");
}
