#pragma once

// Special functions used by the coverage and rate expressions. Everything here
// is real-argument, double precision and pure.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

#include "risnet/errors.hpp"

namespace risnet {

namespace detail {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Series for P(a, x); good for x < a + 1.
inline double lower_gamma_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps * 0.5) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x); good for x >= a + 1.
inline double upper_gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

/// Regularized upper incomplete gamma Q(kappa, x) = Gamma(kappa, x) / Gamma(kappa).
inline double reg_upper_gamma(double kappa, double x) {
    detail::require(kappa > 0.0, "reg_upper_gamma: kappa must be positive");
    detail::require(x >= 0.0, "reg_upper_gamma: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < kappa + 1.0) return 1.0 - detail::lower_gamma_series(kappa, x);
    return detail::upper_gamma_cf(kappa, x);
}

/// Regularized lower incomplete gamma P(kappa, x); P + Q = 1.
inline double reg_lower_gamma(double kappa, double x) {
    detail::require(kappa > 0.0, "reg_lower_gamma: kappa must be positive");
    detail::require(x >= 0.0, "reg_lower_gamma: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < kappa + 1.0) return detail::lower_gamma_series(kappa, x);
    return 1.0 - detail::upper_gamma_cf(kappa, x);
}

namespace detail {

// (1+t)^d * 2F1(-d, -d; 1-d; t/(1+t)), the Pfaff image. Used for t <= 1 where w <= 1/2.
inline double hyp2f1_cov_pfaff(double d, double t) {
    const double w = t / (1.0 + t);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 10000; ++n) {
        term *= (n - d) * (n - d) / ((n + 1.0 - d) * (n + 1.0)) * w;
        sum += term;
        if (std::abs(term) < kEps * 0.25 * std::abs(sum)) break;
    }
    return std::pow(1.0 + t, d) * sum;
}

// Pfaff image continued to w -> 1 via the 1-w connection formula. With a = b = -d,
// c = 1-d the first connection term collapses to w^d and the second carries
// 2F1(1, 1; 2+d; 1/(1+t)), giving
//   pi d / sin(pi d) * t^d + d / ((1+d)(1+t)) * 2F1(1, 1; 2+d; 1/(1+t)).
inline double hyp2f1_cov_connection(double d, double t) {
    const double y = 1.0 / (1.0 + t);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 10000; ++n) {
        term *= (n + 1.0) / (n + 2.0 + d) * y;
        sum += term;
        if (term < kEps * 0.25 * sum) break;
    }
    const double pi = std::numbers::pi;
    return pi * d / std::sin(pi * d) * std::pow(t, d) + d / ((1.0 + d) * (1.0 + t)) * sum;
}

}  // namespace detail

/// 2F1(1, -2/alpha; 1 - 2/alpha; z) for z <= 0, the hypergeometric factor in
/// the nearest-association Laplace transforms and coverage expressions.
inline double hyp2f1_cov(double alpha, double z) {
    detail::require(alpha > 2.0, "hyp2f1_cov: alpha must exceed 2");
    detail::require(z <= 0.0, "hyp2f1_cov: z must be non-positive");
    const double d = 2.0 / alpha;
    const double t = -z;
    if (t == 0.0) return 1.0;
    if (t <= 1.0) return detail::hyp2f1_cov_pfaff(d, t);
    return detail::hyp2f1_cov_connection(d, t);
}

inline double erfc_fn(double x) { return std::erfc(x); }

/// Scaled complementary error function exp(x^2) erfc(x).
inline double erfcx(double x) {
    if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    // Asymptotic series; at x >= 25 the terms shrink by >= 1/1250 per step.
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        sum += term;
        if (std::abs(term) < detail::kEps * 0.1 * sum) break;
    }
    return sum * std::numbers::inv_sqrtpi / x;
}

struct SiCi {
    double si;
    double ci;
};

namespace detail {

constexpr double kSiCiSwitch = 4.0;

inline SiCi sin_cos_integrals_series(double x) {
    const double x2 = x * x;
    double si = 0.0;
    double ci = 0.0;
    double fact_term = x;  // (-1)^k x^(2k+1) / (2k+1)!
    for (int k = 0; k < 200; ++k) {
        const double s_term = fact_term / (2.0 * k + 1.0);
        si += s_term;
        fact_term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        if (std::abs(s_term) < kEps * 0.1 * std::abs(si)) break;
    }
    double c_fact = 1.0;  // (-1)^k x^(2k) / (2k)!
    for (int k = 1; k < 200; ++k) {
        c_fact *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double c_term = c_fact / (2.0 * k);
        ci += c_term;
        if (std::abs(c_term) < kEps * 0.1) break;
    }
    constexpr double euler_gamma = std::numbers::egamma;
    return {si, euler_gamma + std::log(x) + ci};
}

// E1(ix) by continued fraction; E1(ix) = -Ci(x) + i (Si(x) - pi/2).
inline SiCi sin_cos_integrals_cf(double x) {
    using cplx = std::complex<double>;
    cplx b(1.0, x);
    cplx c(1.0 / kTiny, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 2; i < 100000; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= cplx(std::cos(x), -std::sin(x));
    return {std::numbers::pi / 2.0 + h.imag(), -h.real()};
}

}  // namespace detail

/// Sine and cosine integrals Si(x), Ci(x) for x > 0.
inline SiCi sin_cos_integrals(double x) {
    detail::require(x > 0.0, "sin_cos_integrals: x must be positive");
    if (x <= detail::kSiCiSwitch) return detail::sin_cos_integrals_series(x);
    return detail::sin_cos_integrals_cf(x);
}

}  // namespace risnet
