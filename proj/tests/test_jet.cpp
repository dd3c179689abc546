#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "risnet/jet.hpp"

using namespace risnet;

namespace {

void expect_coeffs(const TaylorJet& j, const std::vector<double>& want, double rel) {
    ASSERT_GE(j.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        EXPECT_NEAR(j[i], want[i], rel * std::abs(want[i]) + 1e-300) << "coefficient " << i;
}

}  // namespace

TEST(TaylorJet, ArithmeticOnPolynomials) {
    const TaylorJet s = TaylorJet::variable(4);  // s around 1
    const TaylorJet p = s * s * s;              // (1 + h)^3
    expect_coeffs(p, {1, 3, 3, 1, 0}, 0.0);
    const TaylorJet q = 2.0 * s - 1.0;
    expect_coeffs(q, {1, 2, 0, 0, 0}, 0.0);
    const TaylorJet r = 3.0 - s;
    expect_coeffs(r, {2, -1, 0, 0, 0}, 0.0);
    EXPECT_DOUBLE_EQ(p.derivative(3), 6.0);
    EXPECT_THROW(TaylorJet::variable(3) + TaylorJet::variable(4), std::domain_error);
}

TEST(TaylorJet, ExpReciprocalPow) {
    const std::size_t n = 10;
    const TaylorJet s = TaylorJet::variable(n);
    // exp(-a s): coefficients exp(-a) (-a)^k / k!
    const double a = 2.5;
    const TaylorJet e = jet_exp(-a * s);
    double c = std::exp(-a);
    for (std::size_t k = 0; k <= n; ++k) {
        EXPECT_NEAR(e[k], c, 1e-14 * std::abs(c));
        c *= -a / static_cast<double>(k + 1);
    }
    // 1 / (1 + 2 s) = 1/3 * 1 / (1 + 2h/3)
    const TaylorJet r = jet_reciprocal(1.0 + 2.0 * s);
    double g = 1.0 / 3.0;
    for (std::size_t k = 0; k <= n; ++k) {
        EXPECT_NEAR(r[k], g, 1e-15);
        g *= -2.0 / 3.0;
    }
    // s^p has binomial coefficients C(p, k)
    const double p = 0.4;
    const TaylorJet y = jet_pow(s, p);
    double b = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        EXPECT_NEAR(y[k], b, 1e-14 * std::abs(b));
        b *= (p - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    const TaylorJet z = jet_sqrt(4.0 * s);
    EXPECT_NEAR(z[0], 2.0, 1e-15);
    EXPECT_NEAR(z[1], 1.0, 1e-15);
    EXPECT_THROW(jet_pow(s - 1.0, 0.5), std::domain_error);
    EXPECT_THROW(jet_reciprocal(s - 1.0), std::domain_error);
}

TEST(TaylorJet, SinCos) {
    const TaylorJet s = TaylorJet::variable(6);
    const auto [sn, cs] = jet_sin_cos(0.8 * s);
    double fs = std::sin(0.8), fc = std::cos(0.8);
    double scale = 1.0;
    for (std::size_t k = 0; k <= 6; ++k) {
        // d^k sin(0.8 s) = 0.8^k sin(0.8 + k pi/2)
        const double ws = std::sin(0.8 + k * std::numbers::pi / 2.0) * scale;
        const double wc = std::cos(0.8 + k * std::numbers::pi / 2.0) * scale;
        EXPECT_NEAR(sn[k], ws, 1e-15);
        EXPECT_NEAR(cs[k], wc, 1e-15);
        scale *= 0.8 / static_cast<double>(k + 1);
    }
    (void)fs;
    (void)fc;
}

TEST(TaylorJet, Hyp2F1AgainstReferenceSeries) {
    expect_coeffs(jet_hyp2f1_cov(3.0, 5.0, 8),
                  {7.1427001865440342, 4.6506890132515783, -0.72881853924563343, 0.29819918616678358,
                   -0.15787442238329865, 0.094532879668426811, -0.06083156916763305,
                   0.041032021323269878, -0.028607549558232356},
                  1e-12);
    expect_coeffs(jet_hyp2f1_cov(4.0, 0.4, 8),
                  {1.356668643278213, 0.32119146449624936, -0.029277457960797033,
                   0.0049205559969194097, -0.0009928818587576796, 0.00021902515500078679,
                   -5.0937402886402245e-5, 1.2267601035841474e-5, -3.0287648193239824e-6},
                  1e-11);
}

TEST(TaylorJet, Hyp2F1AgainstDerivativeIntegrals) {
    // For n >= 1 the n-th coefficient of G(c s) at s = 1 is
    //   d (-1)^(n+1) c^n int_0^1 u^(n-1-d) (1 + c u)^(-n-1) du.
    boost::math::quadrature::tanh_sinh<double> q;
    for (double alpha : {2.3, 3.0, 4.5}) {
        const double d = 2.0 / alpha;
        for (double c : {0.01, 0.9, 12.0, 300.0}) {
            const TaylorJet h = jet_hyp2f1_cov(alpha, c, 12);
            for (int n = 1; n <= 12; ++n) {
                const double integral = q.integrate(
                    [&](double u) { return std::pow(u, n - 1 - d) * std::pow(1.0 + c * u, -n - 1); }, 0.0, 1.0);
                const double want = d * ((n % 2 == 1) ? 1.0 : -1.0) * std::pow(c, n) * integral;
                EXPECT_NEAR(h[n], want, 1e-9 * std::abs(want)) << alpha << " " << c << " " << n;
            }
        }
    }
    const TaylorJet flat = jet_hyp2f1_cov(3.0, 0.0, 4);
    expect_coeffs(flat, {1, 0, 0, 0, 0}, 0.0);
}

TEST(TaylorJet, ErfcxSiCiAgainstReferenceSeries) {
    const TaylorJet s = TaylorJet::variable(6);
    expect_coeffs(jet_erfcx(0.7 * s),
                  {0.52593033734944096, -0.27445368636440668, 0.12322355898266678, -0.04940184161136836,
                   0.018086320755968111, -0.0061378420876584479, 0.0019515848491572447},
                  1e-12);
    const auto [si, ci] = jet_sin_cos_integrals(jet_sqrt(9.0 * s));
    expect_coeffs(si,
                  {1.8486525279994683, 0.070560004029933611, -0.40652718824013385, 0.3064326550197253,
                   -0.17349609241993868, 0.10664853994181424, -0.07434521836829627},
                  1e-12);
    expect_coeffs(ci,
                  {0.11962978600800033, -0.49499624830022273, 0.19457812112766116,
                   0.064724846197884454, -0.11153748168782589, 0.098852004588130393,
                   -0.083264976517576703},
                  1e-12);
}

TEST(TaylorJet, ErfcxLargeArgument) {
    const TaylorJet s = TaylorJet::variable(6);
    expect_coeffs(jet_erfcx(8.5 * s),
                  {0.065925122499980352, -0.065042719064696052, 0.063753648199290687, -0.062090246683691711,
                   0.060090379751013013, -0.05779615435441438, 0.055252594968083748},
                  1e-12);
    // z = 1e5 / sqrt(s): the derivative recurrence loses every digit here.
    expect_coeffs(jet_erfcx(1e5 * jet_reciprocal(jet_sqrt(s))),
                  {5.6418958351954681e-6, 2.8209479173156392e-6, -7.0523697954048091e-7, 3.526184897349786e-7,
                   -2.203865560799539e-7, 1.5427058925464541e-7, -1.1570294194043309e-7},
                  1e-12);
}

TEST(TaylorJet, ComposeMatchesDirectExp) {
    // exp(u) built from its own derivative jet must equal jet_exp.
    const TaylorJet s = TaylorJet::variable(7);
    const TaylorJet u = jet_sqrt(s) * 1.3;
    const TaylorJet direct = jet_exp(u);
    const TaylorJet composed = jet_compose_from_derivative(u, direct, std::exp(u[0]));
    for (std::size_t k = 0; k <= 7; ++k) EXPECT_NEAR(composed[k], direct[k], 1e-14);
}

TEST(AlternatingSum, SignsAndCompensation) {
    const TaylorJet f(std::vector<double>{1.0, 0.5, 0.25, 0.125});
    const AlternatingSum a = alternating_sum(f, 4);
    EXPECT_DOUBLE_EQ(a.value, 1.0 - 0.5 + 0.25 - 0.125);
    EXPECT_DOUBLE_EQ(a.abs_sum, 1.875);
    EXPECT_LT(a.cancellation(), 1e-15);

    const TaylorJet g(std::vector<double>{1e16, -1.0, 1e16});
    // 1e16 + 1 - 1e16 is lost without compensation.
    const TaylorJet h(std::vector<double>{1e16, -1.0, -1e16});
    const AlternatingSum b = alternating_sum(h, 3);
    EXPECT_DOUBLE_EQ(b.value, 1.0);
    EXPECT_GT(b.cancellation(), 1.0);
    EXPECT_DOUBLE_EQ(alternating_sum(g, 1).value, 1e16);
    EXPECT_THROW(alternating_sum(g, 4), std::domain_error);
    EXPECT_THROW(alternating_sum(g, 0), std::domain_error);
}
