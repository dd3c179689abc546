#pragma once

// Gamma moment matching for the desired-signal power and the exponential
// law used for each interferer.

#include <array>
#include <cmath>
#include <cstddef>

#include "risnet/errors.hpp"
#include "risnet/fading.hpp"
#include "risnet/specfun.hpp"

namespace risnet {

struct GammaFit {
    double kappa = 1.0;  // shape
    double omega = 1.0;  // scale

    double mean() const noexcept { return kappa * omega; }
    double variance() const noexcept { return kappa * omega * omega; }
};

struct SrMoments {
    double mean = 0.0;
    double second = 0.0;  // E[S_r^2]
};

/// Where the 3rd/4th raw moments of S_r come from when building chi_2.
enum class MomentSource {
    FittedGamma,  // moments of the gamma fit of S_r (the standard pipeline)
    Exact,        // exact moments of the sum of N i.i.d. |h||r| products
};

struct SignalMoments {
    double beta = 0.0;
    double chi1 = 0.0;
    double chi2 = 0.0;
    std::array<double, 5> mu_g{};  // mu_g[q], q = 1..4 (index 0 unused)
    std::array<double, 5> mu_s{};
};

namespace detail {

/// E|X|^k for X ~ Nakagami(m, 1).
inline double nakagami_raw_moment(double m, double k) {
    return std::exp(std::lgamma(m + 0.5 * k) - std::lgamma(m) - 0.5 * k * std::log(m));
}

inline GammaFit fit_from_mean_var(double mean, double var, const char* what) {
    if (!(var > 0.0) || !(mean > 0.0)) throw degenerate_fit_error(what);
    return {mean * mean / var, var / mean};
}

}  // namespace detail

inline SrMoments sr_moments(const FadingParams& f, std::size_t n_elements) {
    f.validate();
    detail::require(n_elements >= 1, "sr_moments: need at least one element");
    const double n = static_cast<double>(n_elements);
    const double a = detail::nakagami_raw_moment(f.m_h, 1.0) * detail::nakagami_raw_moment(f.m_r, 1.0);
    return {n * a, n + n * (n - 1.0) * a * a};
}

inline GammaFit sr_gamma_fit(const FadingParams& f, std::size_t n_elements) {
    const SrMoments m = sr_moments(f, n_elements);
    return detail::fit_from_mean_var(m.mean, m.second - m.mean * m.mean,
                                     "sr_gamma_fit: S_r has non-positive variance");
}

/// Raw moments 1..4 of S_r = sum of N i.i.d. |h||r|, through cumulants.
inline std::array<double, 5> sr_exact_raw_moments(const FadingParams& f, std::size_t n_elements) {
    f.validate();
    detail::require(n_elements >= 1, "sr_exact_raw_moments: need at least one element");
    std::array<double, 5> x{};
    for (int k = 1; k <= 4; ++k)
        x[k] = detail::nakagami_raw_moment(f.m_h, k) * detail::nakagami_raw_moment(f.m_r, k);
    const double k1 = x[1];
    const double k2 = x[2] - x[1] * x[1];
    const double k3 = x[3] - 3.0 * x[2] * x[1] + 2.0 * x[1] * x[1] * x[1];
    const double k4 = x[4] - 4.0 * x[3] * x[1] - 3.0 * x[2] * x[2] + 12.0 * x[2] * x[1] * x[1] -
                      6.0 * x[1] * x[1] * x[1] * x[1];
    const double n = static_cast<double>(n_elements);
    const double c1 = n * k1, c2 = n * k2, c3 = n * k3, c4 = n * k4;
    std::array<double, 5> m{};
    m[0] = 1.0;
    m[1] = c1;
    m[2] = c2 + c1 * c1;
    m[3] = c3 + 3.0 * c2 * c1 + c1 * c1 * c1;
    m[4] = c4 + 4.0 * c3 * c1 + 3.0 * c2 * c2 + 6.0 * c2 * c1 * c1 + c1 * c1 * c1 * c1;
    return m;
}

/// beta, chi_1, chi_2 and the raw moments behind them for S_0 = |sqrt(eta_g0) g0 + sqrt(eta_h0) S_r|^2,
/// normalized by eta_g0.
inline SignalMoments signal_moments(double eta_g0, double eta_h0, const FadingParams& f, std::size_t n_elements,
                                    MomentSource source = MomentSource::FittedGamma) {
    detail::require(eta_g0 > 0.0, "signal_moments: eta_g0 must be positive");
    detail::require(eta_h0 >= 0.0, "signal_moments: eta_h0 must be non-negative");
    SignalMoments s;
    s.beta = std::sqrt(eta_h0 / eta_g0);
    for (int q = 1; q <= 4; ++q) s.mu_g[q] = std::tgamma(1.0 + 0.5 * q);
    if (s.beta == 0.0 || n_elements == 0) {
        s.beta = 0.0;
        s.chi1 = s.mu_g[2];
        s.chi2 = s.mu_g[4];
        return s;
    }
    if (source == MomentSource::Exact) {
        s.mu_s = sr_exact_raw_moments(f, n_elements);
    } else {
        const GammaFit r = sr_gamma_fit(f, n_elements);
        // omega^q * kappa (kappa + 1) ... (kappa + q - 1); the Gamma ratio overflows for large kappa.
        double rising = 1.0;
        for (int q = 1; q <= 4; ++q) {
            rising *= r.kappa + (q - 1);
            s.mu_s[q] = std::pow(r.omega, q) * rising;
        }
    }
    const double b = s.beta;
    const auto& g = s.mu_g;
    const auto& m = s.mu_s;
    s.chi1 = g[2] + 2.0 * b * g[1] * m[1] + b * b * m[2];
    s.chi2 = g[4] + 4.0 * b * g[3] * m[1] + 6.0 * b * b * g[2] * m[2] + 4.0 * b * b * b * g[1] * m[3] +
             b * b * b * b * m[4];
    return s;
}

inline GammaFit signal_gamma_fit(const SignalMoments& s, double eta_g0) {
    const double var = s.chi2 - s.chi1 * s.chi1;
    if (!(var > 0.0)) throw degenerate_fit_error("signal_gamma_fit: chi2 <= chi1^2");
    return {s.chi1 * s.chi1 / var, eta_g0 * var / s.chi1};
}

inline GammaFit signal_gamma_fit(double eta_g0, double eta_h0, const FadingParams& f, std::size_t n_elements,
                                 MomentSource source = MomentSource::FittedGamma) {
    return signal_gamma_fit(signal_moments(eta_g0, eta_h0, f, n_elements, source), eta_g0);
}

inline double signal_ccdf(const GammaFit& fit, double x) {
    detail::require(x >= 0.0, "signal_ccdf: x must be non-negative");
    return reg_upper_gamma(fit.kappa, x / fit.omega);
}

/// x with signal_ccdf(fit, x) = prob, by bisection in log x.
inline double signal_ccdf_quantile(const GammaFit& fit, double prob) {
    detail::require(prob > 0.0 && prob < 1.0, "signal_ccdf_quantile: prob must lie in (0, 1)");
    double lo = fit.mean() * 1e-6;
    double hi = fit.mean() * 2.0;
    while (signal_ccdf(fit, lo) < prob) lo *= 1e-3;
    while (signal_ccdf(fit, hi) > prob) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (signal_ccdf(fit, mid) > prob) lo = mid;
        else hi = mid;
    }
    return std::sqrt(lo * hi);
}

/// Coefficient of variation 1/sqrt(kappa).
inline double coeff_variation(const GammaFit& fit) { return 1.0 / std::sqrt(fit.kappa); }

/// Rate of the exponential law for one interferer's received power.
inline double interferer_exp_param(double eta_gk, double eta_hk, std::size_t n_elements, bool has_ris) {
    if (!has_ris || n_elements == 0) return 1.0 / eta_gk;
    return 1.0 / (eta_gk + static_cast<double>(n_elements) * eta_hk);
}

}  // namespace risnet
