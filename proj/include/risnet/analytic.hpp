#pragma once

// Coverage probability and average rate for the typical user at the origin,
// under fixed association (known serving TX) and nearest-TX association.
//
// Derivative series of the form sum_{i<K} (-1)^i/i! d^i/ds^i f(s) at s = 1 are
// evaluated exactly through TaylorJet: the jet coefficient f_i already carries
// the 1/i!, so the series is an alternating sum of coefficients.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "risnet/errors.hpp"
#include "risnet/fading.hpp"
#include "risnet/geometry.hpp"
#include "risnet/jet.hpp"
#include "risnet/powerdist.hpp"
#include "risnet/quadrature.hpp"
#include "risnet/rng.hpp"
#include "risnet/specfun.hpp"
#include "risnet/units.hpp"

namespace risnet {

struct SystemParams {
    double lambda_t = 1e-4;  // TX density, per m^2
    double lambda_u = 1e-4;  // user density, per m^2 (carried for completeness; never enters a metric)
    double p = 0.5;          // probability that a TX has an assisting RIS
    std::size_t n_elements = 32;
    PathLossParams path{};
    FadingParams fading{};
    double tx_power_w = dbm_to_watts(0.0);
    double noise_w = dbm_to_watts(-70.0);
    Point2 serving_tx{20.0, 0.0};  // fixed association only
    Point2 serving_ris{20.0, 3.0};
    bool interference_limited = false;
    MomentSource moments = MomentSource::FittedGamma;

    double gamma_t() const { return tx_power_w / noise_w; }
    /// 1/gamma_t, or 0 when noise is neglected.
    double inv_gamma_t() const { return interference_limited ? 0.0 : noise_w / tx_power_w; }
    /// Effective interferer gain C_d + N C_r d0^-alpha.
    double e1() const {
        return path.C_d + static_cast<double>(n_elements) * path.C_r * std::pow(path.d0, -path.alpha);
    }
    double d_g0() const { return norm(serving_tx); }
    double eta_g0() const { return pathloss_direct(path, d_g0()); }
    double eta_h0() const { return pathloss_reflected(path, norm(serving_ris)); }

    void validate() const {
        path.validate();
        fading.validate();
        detail::require(lambda_t >= 0.0, "SystemParams: lambda_t must be non-negative");
        detail::require(lambda_u >= 0.0, "SystemParams: lambda_u must be non-negative");
        detail::require(p >= 0.0 && p <= 1.0, "SystemParams: p must lie in [0, 1]");
        detail::require(interference_limited || (tx_power_w > 0.0 && noise_w > 0.0),
                        "SystemParams: powers must be positive unless interference-limited");
        detail::require(norm(serving_tx) > 0.0 && norm(serving_ris) > 0.0,
                        "SystemParams: serving nodes cannot sit on the user");
    }
};

/// Which evaluation produced a coverage value.
enum class CoveragePath { Series, MonteCarloFallback };

inline const char* to_string(CoveragePath p) {
    return p == CoveragePath::Series ? "series" : "mc-fallback";
}

struct CoverageEvaluation {
    double value = 0.0;
    CoveragePath path = CoveragePath::Series;
    double cancellation = 0.0;  // relative rounding-loss estimate of the series
    std::size_t terms = 0;
};

struct FallbackOptions {
    double max_cancellation = 1e-6;
    std::size_t draws = 1'000'000;
    std::uint64_t seed = 0x52495343ull;
};

struct CoverageCurve {
    std::vector<double> thresholds;  // linear SINR thresholds
    std::vector<double> values;
    std::string method;
};

/// gamma_bar grid uniform in dB, `points` values over [lo_db, hi_db].
inline std::vector<double> threshold_grid(double lo_db = -20.0, double hi_db = 40.0, std::size_t points = 50) {
    detail::require(points >= 2 && hi_db > lo_db, "threshold_grid: need >= 2 points over a non-empty range");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = db_to_linear(lo_db + (hi_db - lo_db) * static_cast<double>(i) / static_cast<double>(points - 1));
    return g;
}

namespace detail {

/// (2 pi^2 lambda / alpha) csc(2 pi / alpha)
inline double ppp_interference_constant(double lambda_t, double alpha) {
    const double pi = std::numbers::pi;
    return 2.0 * pi * pi * lambda_t / alpha / std::sin(2.0 * pi / alpha);
}

inline std::size_t series_terms(double kappa) {
    return static_cast<std::size_t>(std::max(1.0, std::floor(kappa + 0.5)));
}

/// Gamma fit used under nearest association. The distance approximation d_r ~ d_g makes
/// eta_h0 / eta_g0 = C_r d0^-alpha / C_d, so the fit is in units of eta_g0 (omega = chi-bar).
inline GammaFit nearest_signal_fit(const SystemParams& sp) {
    const double beta2 = sp.path.C_r * std::pow(sp.path.d0, -sp.path.alpha) / sp.path.C_d;
    return signal_gamma_fit(1.0, beta2, sp.fading, sp.n_elements, sp.moments);
}

/// Y1(s) = p G(c1 s) + (1-p) G(c2 s) as a jet.
inline TaylorJet nearest_y1_jet(const SystemParams& sp, double gamma_bar, double chi_bar, std::size_t order) {
    const double a = sp.path.alpha;
    const double c1 = sp.e1() * gamma_bar / (sp.path.C_d * chi_bar);
    const double c2 = gamma_bar / chi_bar;
    return sp.p * jet_hyp2f1_cov(a, c1, order) + (1.0 - sp.p) * jet_hyp2f1_cov(a, c2, order);
}

/// Y2 = p G(e1 gamma_bar / C_d) + (1-p) G(gamma_bar): the no-RIS serving link.
inline double nearest_y2(const SystemParams& sp, double gamma_bar) {
    const double a = sp.path.alpha;
    return sp.p * hyp2f1_cov(a, -sp.e1() * gamma_bar / sp.path.C_d) + (1.0 - sp.p) * hyp2f1_cov(a, -gamma_bar);
}

/// Positive stable variate with E exp(-s X) = exp(-s^d), 0 < d < 1 (Kanter's representation).
inline double positive_stable(Rng& rng, double d) {
    const double u = std::numbers::pi * open_unit(rng);
    const double w = -std::log(open_unit(rng));
    const double a = std::sin(d * u) / std::pow(std::sin(u), 1.0 / d);
    const double b = std::pow(std::sin((1.0 - d) * u) / w, (1.0 - d) / d);
    return a * b;
}

}  // namespace detail

// ---------------------------------------------------------------- Laplace

/// E[exp(-s I)] for the interference seen under fixed association.
inline double laplace_fixed(const SystemParams& sp, double s) {
    detail::require(sp.path.alpha > 2.0, "laplace_fixed: alpha must exceed 2");
    detail::require(s >= 0.0, "laplace_fixed: s must be non-negative");
    const double d = 2.0 / sp.path.alpha;
    const double k = detail::ppp_interference_constant(sp.lambda_t, sp.path.alpha);
    return std::exp(-k * (sp.p * std::pow(sp.e1() * s, d) + (1.0 - sp.p) * std::pow(sp.path.C_d * s, d)));
}

/// E[exp(-s I)] when all interferers lie beyond the serving distance d_g0.
inline double laplace_nearest(const SystemParams& sp, double s, double d_g0) {
    detail::require(sp.path.alpha > 2.0, "laplace_nearest: alpha must exceed 2");
    detail::require(s >= 0.0, "laplace_nearest: s must be non-negative");
    detail::require(d_g0 > 0.0, "laplace_nearest: d_g0 must be positive");
    const double a = sp.path.alpha;
    const double scale = std::pow(d_g0, -a) * s;
    const double g1 = hyp2f1_cov(a, -sp.e1() * scale);
    const double g2 = hyp2f1_cov(a, -sp.path.C_d * scale);
    return std::exp(std::numbers::pi * sp.lambda_t * d_g0 * d_g0 * (sp.p * (1.0 - g1) + (1.0 - sp.p) * (1.0 - g2)));
}

// ---------------------------------------------------- fixed association

/// Monte Carlo evaluation of E[Q(K, gamma_bar (I + 1/gamma_t) / omega_s)] with the
/// interference drawn exactly from its stable law. Used when the series is ill-conditioned.
inline double coverage_fixed_ris_mc(const SystemParams& sp, double gamma_bar, const GammaFit& fit,
                                    std::size_t terms, const FallbackOptions& opt) {
    const double d = 2.0 / sp.path.alpha;
    const double k = detail::ppp_interference_constant(sp.lambda_t, sp.path.alpha) *
                     (sp.p * std::pow(sp.e1(), d) + (1.0 - sp.p) * std::pow(sp.path.C_d, d));
    const double scale = std::pow(k, 1.0 / d);
    Rng rng = make_stream(opt.seed, 0);
    const double kappa = static_cast<double>(terms);
    double sum = 0.0;
    for (std::size_t i = 0; i < opt.draws; ++i) {
        const double interference = k > 0.0 ? scale * detail::positive_stable(rng, d) : 0.0;
        sum += reg_upper_gamma(kappa, gamma_bar * (interference + sp.inv_gamma_t()) / fit.omega);
    }
    return sum / static_cast<double>(opt.draws);
}

/// Fixed serving TX with an assisting RIS: the signal is gamma(kappa_s, omega_s) and
///   P = sum_{i<K} (-1)^i [exp V]_i,  V(s) = -gamma_bar s / (gamma_t omega_s) - B s^(2/alpha).
inline CoverageEvaluation coverage_fixed_ris_detail(const SystemParams& sp, double gamma_bar,
                                                    const FallbackOptions& opt = {}) {
    sp.validate();
    detail::require(gamma_bar > 0.0, "coverage_fixed_ris: threshold must be positive");
    const GammaFit fit = signal_gamma_fit(sp.eta_g0(), sp.eta_h0(), sp.fading, sp.n_elements, sp.moments);
    const std::size_t terms = detail::series_terms(fit.kappa);
    const double d = 2.0 / sp.path.alpha;
    const double a = gamma_bar * sp.inv_gamma_t() / fit.omega;
    const double b = detail::ppp_interference_constant(sp.lambda_t, sp.path.alpha) *
                     (sp.p * std::pow(sp.e1() * gamma_bar / fit.omega, d) +
                      (1.0 - sp.p) * std::pow(sp.path.C_d * gamma_bar / fit.omega, d));
    const TaylorJet s = TaylorJet::variable(terms - 1);
    const TaylorJet v = -a * s - b * jet_pow(s, d);
    const AlternatingSum sum = alternating_sum(jet_exp(v), terms);
    CoverageEvaluation out{std::clamp(sum.value, 0.0, 1.0), CoveragePath::Series, sum.cancellation(), terms};
    if (out.cancellation > opt.max_cancellation) {
        out.value = coverage_fixed_ris_mc(sp, gamma_bar, fit, terms, opt);
        out.path = CoveragePath::MonteCarloFallback;
    }
    return out;
}

inline double coverage_fixed_ris(const SystemParams& sp, double gamma_bar) {
    return coverage_fixed_ris_detail(sp, gamma_bar).value;
}

/// Fixed serving TX without a RIS (Rayleigh direct link).
inline double coverage_fixed_noris(const SystemParams& sp, double gamma_bar) {
    sp.validate();
    detail::require(gamma_bar > 0.0, "coverage_fixed_noris: threshold must be positive");
    const double eg = sp.eta_g0();
    const double d = 2.0 / sp.path.alpha;
    const double b = detail::ppp_interference_constant(sp.lambda_t, sp.path.alpha) *
                     (sp.p * std::pow(sp.e1() * gamma_bar / eg, d) +
                      (1.0 - sp.p) * std::pow(sp.path.C_d * gamma_bar / eg, d));
    return std::exp(-gamma_bar * sp.inv_gamma_t() / eg - b);
}

// -------------------------------------------------- nearest association

inline constexpr double kNearestAbsTol = 1e-8;

/// Nearest-TX association. With u = lambda_t pi r^2 the serving-distance density
/// becomes e^-u du and
///   P = p int sum_i (-1)^i [exp(-A r^alpha s - u Y1(s))]_i du
///     + (1-p) int exp(-gamma_bar r^alpha / (gamma_t C_d) - u Y2) du,
/// A = gamma_bar / (gamma_t C_d chi-bar).
inline double coverage_nearest(const SystemParams& sp, double gamma_bar) {
    sp.validate();
    detail::require(gamma_bar > 0.0, "coverage_nearest: threshold must be positive");
    detail::require(sp.lambda_t > 0.0, "coverage_nearest: needs a positive TX density");
    const GammaFit fit = detail::nearest_signal_fit(sp);
    const std::size_t terms = detail::series_terms(fit.kappa);
    const double chi_bar = fit.omega;
    const double half_alpha = sp.path.alpha / 2.0;
    const double lam_pi = sp.lambda_t * std::numbers::pi;
    const double noise = gamma_bar * sp.inv_gamma_t() / sp.path.C_d;  // multiplies r^alpha
    const TaylorJet y1 = detail::nearest_y1_jet(sp, gamma_bar, chi_bar, terms - 1);
    const double y2 = detail::nearest_y2(sp, gamma_bar);
    const TaylorJet s = TaylorJet::variable(terms - 1);

    QuadratureOptions opt;
    opt.abs_tol = kNearestAbsTol / 4.0;
    opt.rel_tol = 1e-10;

    auto r_alpha = [&](double u) { return std::pow(u / lam_pi, half_alpha); };
    // Map scale: the smaller of the interference decay length 1/Y and the u at which
    // the noise exponent reaches 1; the latter can be tiny when noise dominates.
    auto map_scale = [&](double y, double noise_coeff) {
        double sc = 1.0 / y;
        if (noise_coeff > 0.0) sc = std::min(sc, lam_pi * std::pow(noise_coeff, -1.0 / half_alpha));
        return sc;
    };
    double ris_part = 0.0;
    if (sp.p > 0.0) {
        auto q_plus = [&](double u) {
            const TaylorJet v = (-noise / chi_bar * r_alpha(u)) * s - u * y1;
            return alternating_sum(jet_exp(v), terms).value;
        };
        const QuadratureResult r = integrate_semi_infinite(q_plus, opt, map_scale(y1[0], noise / chi_bar));
        if (!r.converged)
            throw quadrature_error("coverage_nearest: RIS-assisted integral", r.worst_lo, r.worst_hi);
        ris_part = r.value;
    }
    double direct_part = 0.0;
    if (sp.p < 1.0) {
        auto q_star = [&](double u) { return std::exp(-noise * r_alpha(u) - u * y2); };
        const QuadratureResult r = integrate_semi_infinite(q_star, opt, map_scale(y2, noise));
        if (!r.converged)
            throw quadrature_error("coverage_nearest: direct-link integral", r.worst_lo, r.worst_hi);
        direct_part = r.value;
    }
    return std::clamp(sp.p * ris_part + (1.0 - sp.p) * direct_part, 0.0, 1.0);
}

/// Closed form of coverage_nearest for alpha = 4 through erfc:
///   P = (pi lambda p / 2) sum_i (-1)^i [X+]_i + (pi lambda (1-p) / 2) X*,
///   X+(s) = sqrt(pi / X1) erfcx(X2 / (2 sqrt(X1))), X1 = gamma_bar s / (gamma_t C_d chi-bar),
///   X2 = pi lambda Y1(s); X* likewise with X3 = gamma_bar / (gamma_t C_d), X4 = pi lambda Y2.
inline double coverage_nearest_alpha4(const SystemParams& sp, double gamma_bar) {
    sp.validate();
    detail::require(sp.path.alpha == 4.0, "coverage_nearest_alpha4: requires alpha = 4");
    detail::require(gamma_bar > 0.0, "coverage_nearest_alpha4: threshold must be positive");
    detail::require(sp.lambda_t > 0.0, "coverage_nearest_alpha4: needs a positive TX density");
    const GammaFit fit = detail::nearest_signal_fit(sp);
    const std::size_t terms = detail::series_terms(fit.kappa);
    const std::size_t order = terms - 1;
    const double pi = std::numbers::pi;
    const double lam_pi = pi * sp.lambda_t;
    const double noise = gamma_bar * sp.inv_gamma_t() / sp.path.C_d;
    const TaylorJet s = TaylorJet::variable(order);

    // Without noise the Gaussian integral degenerates to 2 / X2.
    auto x_of = [&](const TaylorJet& x1, const TaylorJet& x2) {
        if (x1[0] == 0.0) return 2.0 * jet_reciprocal(x2);
        const TaylorJet root = jet_sqrt(x1);
        const TaylorJet z = 0.5 * x2 * jet_reciprocal(root);
        return std::sqrt(pi) * jet_erfcx(z) * jet_reciprocal(root);
    };
    const TaylorJet x1 = (noise / fit.omega) * s;
    const TaylorJet x2 = lam_pi * detail::nearest_y1_jet(sp, gamma_bar, fit.omega, order);
    const double x_plus = alternating_sum(x_of(x1, x2), terms).value;
    const TaylorJet x3 = TaylorJet::constant(0, noise);
    const TaylorJet x4 = TaylorJet::constant(0, lam_pi * detail::nearest_y2(sp, gamma_bar));
    const double x_star = x_of(x3, x4)[0];
    return std::clamp(0.5 * lam_pi * (sp.p * x_plus + (1.0 - sp.p) * x_star), 0.0, 1.0);
}

/// Monte Carlo evaluation of the RIS-assisted part of the interference-limited nearest
/// coverage, E[Q(K, gamma_bar I / (C_d r^-alpha chi-bar))], under the same exponential
/// interferer model. The result does not depend on lambda_t, so lambda_t = 1 is sampled.
inline double coverage_nearest_intlimited_mc_ris(const SystemParams& sp, double gamma_bar, const GammaFit& fit,
                                                 std::size_t terms, const FallbackOptions& opt) {
    const double a = sp.path.alpha;
    const double pi = std::numbers::pi;
    const double e1 = sp.e1();
    const double cd = sp.path.C_d;
    const double mean_gain = sp.p * e1 + (1.0 - sp.p) * cd;
    constexpr double kExplicitCount = 200.0;
    Rng rng = make_stream(opt.seed, 1);
    std::exponential_distribution<double> mark(1.0);
    const double kappa = static_cast<double>(terms);
    double sum = 0.0;
    for (std::size_t i = 0; i < opt.draws; ++i) {
        const double r = std::sqrt(-std::log(open_unit(rng)) / pi);
        const double r_out = std::sqrt(r * r + kExplicitCount / pi);
        double interference = 0.0;
        for (const Point2& x : sample_ppp_annulus(rng, 1.0, r, r_out)) {
            const double gain = open_unit(rng) < sp.p ? e1 : cd;
            interference += gain * std::pow(norm(x), -a) * mark(rng);
        }
        interference += 2.0 * pi * mean_gain * std::pow(r_out, 2.0 - a) / (a - 2.0);  // Campbell tail
        sum += reg_upper_gamma(kappa, gamma_bar * interference / (cd * std::pow(r, -a) * fit.omega));
    }
    return sum / static_cast<double>(opt.draws);
}

/// Interference-limited nearest association:
///   P = p sum_i (-1)^i [1 / Y1(s)]_i + (1-p) / Y2, free of lambda_t.
inline CoverageEvaluation coverage_nearest_intlimited_detail(const SystemParams& sp, double gamma_bar,
                                                             const FallbackOptions& opt = {}) {
    sp.path.validate();
    sp.fading.validate();
    detail::require(sp.p >= 0.0 && sp.p <= 1.0, "coverage_nearest_intlimited: p must lie in [0, 1]");
    detail::require(gamma_bar > 0.0, "coverage_nearest_intlimited: threshold must be positive");
    const GammaFit fit = detail::nearest_signal_fit(sp);
    const std::size_t terms = detail::series_terms(fit.kappa);
    const TaylorJet y1 = detail::nearest_y1_jet(sp, gamma_bar, fit.omega, terms - 1);
    const AlternatingSum sum = alternating_sum(jet_reciprocal(y1), terms);
    const double direct = (1.0 - sp.p) / detail::nearest_y2(sp, gamma_bar);
    CoverageEvaluation out{std::clamp(sp.p * sum.value + direct, 0.0, 1.0), CoveragePath::Series,
                           sum.cancellation(), terms};
    if (sp.p > 0.0 && out.cancellation > opt.max_cancellation) {
        out.value = std::clamp(sp.p * coverage_nearest_intlimited_mc_ris(sp, gamma_bar, fit, terms, opt) + direct,
                               0.0, 1.0);
        out.path = CoveragePath::MonteCarloFallback;
    }
    return out;
}

inline double coverage_nearest_intlimited(const SystemParams& sp, double gamma_bar) {
    return coverage_nearest_intlimited_detail(sp, gamma_bar).value;
}

// ------------------------------------------------------------------ rates

struct RateResult {
    double value = 0.0;  // bits/s/Hz
    double abs_error = 0.0;
    bool converged = false;
    bool diverged = false;  // coverage does not decay, so the rate is unbounded
};

inline constexpr double kRateRelTol = 1e-7;

/// R = (1/ln 2) int_0^inf P_c(x) / (1 + x) dx, integrated over t in (0, 1) with x = t / (1 - t).
inline RateResult rate_from_coverage(const std::function<double(double)>& coverage) {
    constexpr double kProbe = 1e30;
    RateResult out;
    if (coverage(kProbe) > 1e-3) {
        out.diverged = true;
        out.value = INFINITY;
        return out;
    }
    auto integrand = [&](double t) {
        if (t <= 0.0) return coverage(0.0);
        if (t >= 1.0) return 0.0;
        const double x = t / (1.0 - t);
        const double pc = coverage(x);
        return pc == 0.0 ? 0.0 : pc / (1.0 - t);
    };
    QuadratureOptions opt;
    opt.rel_tol = kRateRelTol;
    opt.abs_tol = 1e-13;
    opt.max_intervals = 2000;
    const QuadratureResult r = integrate(integrand, 0.0, 1.0, opt);
    out.value = r.value / std::numbers::ln2;
    out.abs_error = r.abs_error / std::numbers::ln2;
    out.converged = r.converged;
    return out;
}

namespace detail {

inline double rate_or_throw(const std::function<double(double)>& coverage, const char* what) {
    const RateResult r = rate_from_coverage(coverage);
    if (r.diverged) throw std::domain_error(std::string(what) + ": coverage does not decay, rate diverges");
    if (!r.converged) throw quadrature_error(what, 0.0, 1.0);
    return r.value;
}

// coverage(x) at x = 0 is 1 by definition; the closed forms need a positive threshold.
template <class F>
std::function<double(double)> at_positive(F f) {
    return [f](double x) { return x <= 0.0 ? 1.0 : f(x); };
}

}  // namespace detail

/// Average rate under fixed association, with or without the serving RIS.
inline double rate_fixed(const SystemParams& sp, bool with_ris) {
    if (with_ris)
        return detail::rate_or_throw(detail::at_positive([&sp](double x) { return coverage_fixed_ris(sp, x); }),
                                     "rate_fixed");
    return detail::rate_or_throw(detail::at_positive([&sp](double x) { return coverage_fixed_noris(sp, x); }),
                                 "rate_fixed");
}

/// Closed form of rate_fixed for alpha = 4 without noise:
///   R1 = (1/ln 2) sum_i (-1)^i [V+(V1(s))]_i,  R2 = (1/ln 2) V+(V2),
///   V+(v) = (pi - 2 Si(v)) sin v - 2 Ci(v) cos v,
///   V1(s) = (pi^2 lambda / 2) (p sqrt(e1 s / omega_s) + (1-p) sqrt(C_d s / omega_s)),
/// and V2 is V1 at s = 1 with eta_g0 in place of omega_s.
inline double rate_fixed_alpha4_intlim(const SystemParams& sp, bool with_ris) {
    sp.validate();
    detail::require(sp.path.alpha == 4.0, "rate_fixed_alpha4_intlim: requires alpha = 4");
    detail::require(sp.interference_limited, "rate_fixed_alpha4_intlim: requires the interference-limited setting");
    detail::require(sp.lambda_t > 0.0, "rate_fixed_alpha4_intlim: needs a positive TX density");
    const double pi = std::numbers::pi;
    const double c = 0.5 * pi * pi * sp.lambda_t;
    auto v_plus = [pi](const TaylorJet& v) {
        const auto [sn, cs] = jet_sin_cos(v);
        const auto [si, ci] = jet_sin_cos_integrals(v);
        return (pi - 2.0 * si) * sn - 2.0 * ci * cs;
    };
    if (!with_ris) {
        const double eg = sp.eta_g0();
        const double v2 = c * (sp.p * std::sqrt(sp.e1() / eg) + (1.0 - sp.p) * std::sqrt(sp.path.C_d / eg));
        return v_plus(TaylorJet::constant(0, v2))[0] / std::numbers::ln2;
    }
    const GammaFit fit = signal_gamma_fit(sp.eta_g0(), sp.eta_h0(), sp.fading, sp.n_elements, sp.moments);
    const std::size_t terms = detail::series_terms(fit.kappa);
    const TaylorJet root_s = jet_sqrt(TaylorJet::variable(terms - 1));
    const double w = c * (sp.p * std::sqrt(sp.e1() / fit.omega) + (1.0 - sp.p) * std::sqrt(sp.path.C_d / fit.omega));
    return alternating_sum(v_plus(w * root_s), terms).value / std::numbers::ln2;
}

/// Average rate under nearest association; the interference-limited variant uses the
/// lambda_t-free closed form.
inline double rate_nearest(const SystemParams& sp, bool interference_limited) {
    SystemParams q = sp;
    q.interference_limited = interference_limited;
    if (interference_limited)
        return detail::rate_or_throw(
            detail::at_positive([&q](double x) { return coverage_nearest_intlimited(q, x); }), "rate_nearest");
    return detail::rate_or_throw(detail::at_positive([&q](double x) { return coverage_nearest(q, x); }),
                                 "rate_nearest");
}

// ----------------------------------------------------------------- curves

enum class CoverageMethod { FixedRis, FixedNoRis, Nearest, NearestAlpha4, NearestIntLimited };

inline const char* to_string(CoverageMethod m) {
    switch (m) {
        case CoverageMethod::FixedRis: return "fixed-ris";
        case CoverageMethod::FixedNoRis: return "fixed-noris";
        case CoverageMethod::Nearest: return "nearest";
        case CoverageMethod::NearestAlpha4: return "nearest-alpha4";
        case CoverageMethod::NearestIntLimited: return "nearest-intlimited";
    }
    return "unknown";
}

inline double coverage(const SystemParams& sp, CoverageMethod m, double gamma_bar) {
    switch (m) {
        case CoverageMethod::FixedRis: return coverage_fixed_ris(sp, gamma_bar);
        case CoverageMethod::FixedNoRis: return coverage_fixed_noris(sp, gamma_bar);
        case CoverageMethod::Nearest: return coverage_nearest(sp, gamma_bar);
        case CoverageMethod::NearestAlpha4: return coverage_nearest_alpha4(sp, gamma_bar);
        case CoverageMethod::NearestIntLimited: return coverage_nearest_intlimited(sp, gamma_bar);
    }
    throw std::domain_error("coverage: unknown method");
}

inline CoverageCurve coverage_curve(const SystemParams& sp, CoverageMethod m, const std::vector<double>& thresholds) {
    CoverageCurve c{thresholds, {}, to_string(m)};
    c.values.reserve(thresholds.size());
    for (double g : thresholds) c.values.push_back(coverage(sp, m, g));
    return c;
}

}  // namespace risnet
