#pragma once

// Monte Carlo SINR simulator for the typical user at the origin.
//
// Each trial samples the TX/RIS field, all small-scale fading and the true
// TX-user and RIS-user distances. Interferers are handled in three rings so
// that dense networks stay affordable:
//   near  (expected `near_count` TXs)  per-element Nakagami magnitudes and uniform phases
//   mid   (next `mid_count` TXs)       exponential power with mean eta_g + N eta_h
//   far   (out to the window edge)     one Gaussian draw with the ring's exact mean and variance
// Setting near_count to infinity gives the full per-element model everywhere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <thread>
#include <vector>

#include "risnet/analytic.hpp"
#include "risnet/errors.hpp"
#include "risnet/fading.hpp"
#include "risnet/geometry.hpp"
#include "risnet/rng.hpp"

namespace risnet {

enum class Association { Fixed, Nearest };

inline const char* to_string(Association a) { return a == Association::Fixed ? "fixed" : "nearest"; }

struct McConfig {
    std::size_t trials = 100'000;
    std::uint64_t seed = 1;
    Window window{};
    SystemParams params{};
    std::size_t threads = 0;  // 0: hardware concurrency
    double near_count = 64.0;
    double mid_count = 1024.0;
    bool interference = true;  // false: signal-only trials

    void validate() const {
        params.validate();
        detail::require(trials >= 1, "McConfig: trials must be >= 1");
        detail::require(near_count > 0.0 && mid_count >= 0.0, "McConfig: bad ring sizes");
    }
};

/// Received powers of one trial at unit transmit power; SINR = signal / (interference + 1/gamma_t).
struct LinkSample {
    double signal = 0.0;
    double interference = 0.0;
};

class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples)) {
        std::sort(sorted_.begin(), sorted_.end());
    }

    std::size_t n() const noexcept { return sorted_.size(); }
    const std::vector<double>& sorted_samples() const noexcept { return sorted_; }

    /// Fraction of samples strictly above x.
    double ccdf(double x) const {
        if (sorted_.empty()) return 0.0;
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(sorted_.end() - it) / static_cast<double>(n());
    }
    double cdf(double x) const { return 1.0 - ccdf(x); }

    /// 95% normal-approximation half-width of ccdf(x).
    double ci_halfwidth(double x) const {
        const double f = ccdf(x);
        return 1.96 * std::sqrt(f * (1.0 - f) / static_cast<double>(n()));
    }

    /// Lower empirical quantile: smallest sample with cdf >= q.
    double quantile(double q) const {
        detail::require(!sorted_.empty(), "quantile: empty distribution");
        detail::require(q >= 0.0 && q <= 1.0, "quantile: q must lie in [0, 1]");
        const double pos = std::ceil(q * static_cast<double>(n()));
        const std::size_t i = pos < 1.0 ? 0 : static_cast<std::size_t>(pos) - 1;
        return sorted_[std::min(i, n() - 1)];
    }

    /// sup |F_n - F| against a continuous reference CDF.
    double ks_distance(const std::function<double(double)>& ref_cdf) const {
        double d = 0.0;
        const double nn = static_cast<double>(n());
        for (std::size_t i = 0; i < n(); ++i) {
            const double f = ref_cdf(sorted_[i]);
            d = std::max({d, f - static_cast<double>(i) / nn, static_cast<double>(i + 1) / nn - f});
        }
        return d;
    }

    double mean() const {
        double s = 0.0;
        for (double v : sorted_) s += v;
        return sorted_.empty() ? 0.0 : s / static_cast<double>(n());
    }

private:
    std::vector<double> sorted_;
};

struct Estimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;
};

inline constexpr std::size_t kMinEstimateSamples = 100;

/// P(SINR > gamma_bar) with its 95% binomial half-width.
inline Estimate estimate_coverage(const EmpiricalDistribution& dist, double gamma_bar) {
    if (dist.n() < kMinEstimateSamples) throw insufficient_samples_error("estimate_coverage: need >= 100 samples");
    return {dist.ccdf(gamma_bar), dist.ci_halfwidth(gamma_bar)};
}

/// Sample mean of log2(1 + SINR), bits/s/Hz.
inline Estimate estimate_rate(const EmpiricalDistribution& dist) {
    if (dist.n() < kMinEstimateSamples) throw insufficient_samples_error("estimate_rate: need >= 100 samples");
    double s = 0.0, s2 = 0.0;
    for (double v : dist.sorted_samples()) {
        const double r = std::log2(1.0 + v);
        s += r;
        s2 += r * r;
    }
    const double nn = static_cast<double>(dist.n());
    const double mean = s / nn;
    const double var = std::max(0.0, s2 / nn - mean * mean) * nn / (nn - 1.0);
    return {mean, 1.96 * std::sqrt(var / nn)};
}

/// (1/ln 2) * integral of the empirical CCDF against dx/(1+x), integrated exactly over
/// the step function.
inline double rate_from_empirical_ccdf(const EmpiricalDistribution& dist) {
    if (dist.n() < kMinEstimateSamples) throw insufficient_samples_error("rate_from_empirical_ccdf: need >= 100 samples");
    const auto& s = dist.sorted_samples();
    const double nn = static_cast<double>(dist.n());
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = std::max(s[i], 0.0);
        // on [prev, x) the CCDF equals (n - i) / n
        if (x > prev) acc += (nn - static_cast<double>(i)) / nn * (std::log1p(x) - std::log1p(prev));
        prev = std::max(prev, x);
    }
    return acc / std::numbers::ln2;
}

/// One value per row under a header line.
inline void write_samples_csv(std::ostream& os, const EmpiricalDistribution& dist, const char* header = "sinr") {
    os << header << '\n';
    const auto old = os.precision(17);
    for (double v : dist.sorted_samples()) os << v << '\n';
    os.precision(old);
}

namespace detail {

inline std::size_t resolve_threads(std::size_t requested, std::size_t work) {
    std::size_t t = requested != 0 ? requested : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(t, work));
}

/// Calls fn(i) for i in [0, n) over worker threads; fn must only write slot i.
template <class Fn>
void parallel_for_index(std::size_t n, std::size_t threads, Fn&& fn) {
    const std::size_t t = resolve_threads(threads, n);
    if (t == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += t) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct LinkDraws {
    explicit LinkDraws(const FadingParams& f) : h(f.m_h), r(f.m_r) {}
    NakagamiSampler h;
    NakagamiSampler r;
    std::normal_distribution<double> gauss{0.0, std::numbers::sqrt2 / 2.0};  // each part of CN(0, 1)
    std::exponential_distribution<double> expo{1.0};
};

/// |sqrt(eta_g) g + sqrt(eta_h) sum_i |h_i||r_i| e^{j theta_i}|^2 with independent phases.
inline double interferer_power_full(Rng& rng, LinkDraws& d, double eta_g, double eta_h, std::size_t n, bool has_ris) {
    const double sg = std::sqrt(eta_g);
    double re = sg * d.gauss(rng);
    double im = sg * d.gauss(rng);
    if (has_ris) {
        const double sh = std::sqrt(eta_h);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = sh * d.h(rng) * d.r(rng);
            const double th = uniform_phase(rng);
            re += a * std::cos(th);
            im += a * std::sin(th);
        }
    }
    return re * re + im * im;
}

/// Phase-aligned serving power (sqrt(eta_g)|g| + sqrt(eta_h) sum_i |h_i||r_i|)^2.
inline double serving_power(Rng& rng, LinkDraws& d, double eta_g, double eta_h, std::size_t n, bool has_ris) {
    double amp = std::sqrt(eta_g * d.expo(rng));
    if (has_ris) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += d.h(rng) * d.r(rng);
        amp += std::sqrt(eta_h) * s;
    }
    return amp * amp;
}

struct ClusterGains {
    double eta_g = 0.0;
    double eta_h = 0.0;
    bool has_ris = false;
};

inline ClusterGains gains_at_origin(const PathLossParams& pl, const Cluster& c) {
    ClusterGains g;
    g.eta_g = pathloss_direct(pl, norm(c.parent));
    if (c.daughter) {
        g.has_ris = true;
        g.eta_h = pathloss_reflected(pl, norm(*c.daughter));
    }
    return g;
}

/// Ring radii for the near / mid split at density lambda inside `window`.
struct Rings {
    double r_near = 0.0;
    double r_mid = 0.0;
    double r_out = 0.0;
};

inline Rings ring_radii(const McConfig& cfg) {
    const double lam = cfg.params.lambda_t;
    const double r_out = cfg.window.radius();
    if (lam <= 0.0) return {0.0, 0.0, r_out};
    const double per = std::numbers::pi * lam;
    const double rn = std::min(r_out, std::sqrt(cfg.near_count / per));
    const double rm = std::min(r_out, std::sqrt((cfg.near_count + cfg.mid_count) / per));
    return {rn, rm, r_out};
}

/// First two raw moments of one interferer's received power,
/// |sqrt(eta_g) g + sqrt(eta_h) sum_i |h_i||r_i| e^{j theta_i}|^2.
inline std::pair<double, double> interferer_power_moments(double eta_g, double eta_h, std::size_t n_elements,
                                                          const FadingParams& f) {
    const double n = static_cast<double>(n_elements);
    const double mu4 = (1.0 + 1.0 / f.m_h) * (1.0 + 1.0 / f.m_r);  // E|h|^4 E|r|^4
    const double m1 = eta_g + n * eta_h;
    const double m2 = 2.0 * eta_g * eta_g + eta_h * eta_h * (n * mu4 + 2.0 * n * (n - 1.0)) + 4.0 * eta_g * eta_h * n;
    return {m1, m2};
}

/// Mean and variance of the interference from the GPP restricted to r_in <= |x| < r_out,
/// with RIS-user distance taken equal to the TX-user distance (the ring starts far away).
inline std::pair<double, double> far_ring_moments(const SystemParams& sp, double r_in, double r_out) {
    if (sp.lambda_t <= 0.0 || r_out <= r_in) return {0.0, 0.0};
    const double a = sp.path.alpha;
    const double cd = sp.path.C_d;
    const double ch = sp.path.C_r * std::pow(sp.path.d0, -a);
    // per-cluster moments at unit distance; they scale as x^-alpha and x^-2 alpha
    const auto with = interferer_power_moments(cd, ch, sp.n_elements, sp.fading);
    const auto without = interferer_power_moments(cd, 0.0, sp.n_elements, sp.fading);
    const double k1 = sp.p * with.first + (1.0 - sp.p) * without.first;
    const double k2 = sp.p * with.second + (1.0 - sp.p) * without.second;
    const auto radial = [&](double e) {  // integral of x^(1 - e) over the ring
        return (std::pow(r_out, 2.0 - e) - std::pow(r_in, 2.0 - e)) / (2.0 - e);
    };
    const double c = 2.0 * std::numbers::pi * sp.lambda_t;
    return {c * k1 * radial(a), c * k2 * radial(2.0 * a)};
}

inline LinkSample simulate_one(const McConfig& cfg, Association assoc, bool forced_ris, const Rings& rings,
                               const std::pair<double, double>& far, std::uint64_t trial) {
    const SystemParams& sp = cfg.params;
    const PathLossParams& pl = sp.path;
    const std::size_t n = sp.n_elements;
    Rng rng = make_stream(cfg.seed, trial);
    LinkDraws draws(sp.fading);
    LinkSample out;

    std::vector<Cluster> near, mid;
    if (cfg.interference || assoc == Association::Nearest) {
        near = attach_daughters(rng, sample_ppp_annulus(rng, sp.lambda_t, 0.0, rings.r_near), sp.p, pl.d0);
        mid = attach_daughters(rng, sample_ppp_annulus(rng, sp.lambda_t, rings.r_near, rings.r_mid), sp.p, pl.d0);
    }

    std::size_t serving_near = std::numeric_limits<std::size_t>::max();
    std::size_t serving_mid = std::numeric_limits<std::size_t>::max();
    if (assoc == Association::Fixed) {
        const double eta_g = pathloss_direct(pl, norm(sp.serving_tx));
        const double eta_h = forced_ris ? pathloss_reflected(pl, norm(sp.serving_ris)) : 0.0;
        out.signal = serving_power(rng, draws, eta_g, eta_h, n, forced_ris);
    } else {
        // the nearest TX lies in the near ring unless that ring is empty
        const std::vector<Cluster>& pool = near.empty() ? mid : near;
        if (pool.empty()) return out;  // no TX inside the simulated window: outage
        GppRealization g;
        g.clusters = pool;
        const std::size_t idx = nearest_parent(g, {0.0, 0.0}).first;
        (near.empty() ? serving_mid : serving_near) = idx;
        const ClusterGains cg = gains_at_origin(pl, pool[idx]);
        out.signal = serving_power(rng, draws, cg.eta_g, cg.eta_h, n, cg.has_ris);
    }
    if (!cfg.interference) return out;

    double interference = 0.0;
    for (std::size_t i = 0; i < near.size(); ++i) {
        if (i == serving_near) continue;
        const ClusterGains cg = gains_at_origin(pl, near[i]);
        interference += interferer_power_full(rng, draws, cg.eta_g, cg.eta_h, n, cg.has_ris);
    }
    for (std::size_t i = 0; i < mid.size(); ++i) {
        if (i == serving_mid) continue;
        const ClusterGains cg = gains_at_origin(pl, mid[i]);
        interference += (cg.eta_g + static_cast<double>(n) * cg.eta_h) * draws.expo(rng);
    }
    if (far.first > 0.0) {
        std::normal_distribution<double> nd(far.first, std::sqrt(far.second));
        interference += std::max(0.0, nd(rng));
    }
    out.interference = interference;
    return out;
}

}  // namespace detail

/// Per-trial (signal, interference) pairs. For fixed association the serving TX sits at
/// params.serving_tx and, when forced_ris, its RIS at params.serving_ris; the sampled field
/// supplies the interferers. For nearest association the closest TX serves, with its own RIS
/// if it has one, and forced_ris is ignored.
inline std::vector<LinkSample> simulate_links(const McConfig& cfg, Association assoc, bool forced_ris = true) {
    cfg.validate();
    const detail::Rings rings = detail::ring_radii(cfg);
    const auto far = cfg.interference ? detail::far_ring_moments(cfg.params, rings.r_mid, rings.r_out)
                                      : std::pair<double, double>{0.0, 0.0};
    std::vector<LinkSample> out(cfg.trials);
    detail::parallel_for_index(cfg.trials, cfg.threads, [&](std::size_t i) {
        out[i] = detail::simulate_one(cfg, assoc, forced_ris, rings, far, i);
    });
    return out;
}

/// SINR samples at a given 1/gamma_t (0 for interference-limited).
inline EmpiricalDistribution sinr_distribution(const std::vector<LinkSample>& links, double inv_gamma_t) {
    detail::require(inv_gamma_t >= 0.0, "sinr_distribution: inv_gamma_t must be non-negative");
    std::vector<double> v(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        const double den = links[i].interference + inv_gamma_t;
        v[i] = den > 0.0 ? links[i].signal / den : std::numeric_limits<double>::infinity();
    }
    return EmpiricalDistribution(std::move(v));
}

inline EmpiricalDistribution simulate_sinr(const McConfig& cfg, Association assoc, bool forced_ris = true) {
    return sinr_distribution(simulate_links(cfg, assoc, forced_ris), cfg.params.inv_gamma_t());
}

namespace detail {

inline constexpr std::size_t kSampleBlock = 4096;

/// Fills `count` values, block b of kSampleBlock drawn from stream (seed, b).
template <class Draw>
std::vector<double> blocked_samples(std::size_t count, std::uint64_t seed, std::size_t threads,
                                    const FadingParams& f, Draw&& draw) {
    std::vector<double> out(count);
    const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
    parallel_for_index(blocks, threads, [&](std::size_t b) {
        Rng rng = make_stream(seed, b);
        LinkDraws d(f);
        const std::size_t end = std::min(count, (b + 1) * kSampleBlock);
        for (std::size_t i = b * kSampleBlock; i < end; ++i) out[i] = draw(rng, d);
    });
    return out;
}

}  // namespace detail

/// Samples of the phase-aligned serving power S0 (watts per watt transmitted) for the TX and
/// RIS positions in `sp`.
inline EmpiricalDistribution simulate_signal_power(const SystemParams& sp, std::size_t samples, std::uint64_t seed,
                                                   bool with_ris = true, std::size_t threads = 0) {
    sp.validate();
    const double eta_g = sp.eta_g0();
    const double eta_h = with_ris ? sp.eta_h0() : 0.0;
    return EmpiricalDistribution(
        detail::blocked_samples(samples, seed, threads, sp.fading, [&](Rng& rng, detail::LinkDraws& d) {
            return detail::serving_power(rng, d, eta_g, eta_h, sp.n_elements, with_ris);
        }));
}

/// Samples of a single interferer's received power with random RIS phases.
inline EmpiricalDistribution simulate_interferer_power(const PathLossParams& pl, const FadingParams& f,
                                                       std::size_t n_elements, Point2 tx, std::optional<Point2> ris,
                                                       std::size_t samples, std::uint64_t seed,
                                                       std::size_t threads = 0) {
    pl.validate();
    f.validate();
    const Cluster c{tx, ris};
    const detail::ClusterGains g = detail::gains_at_origin(pl, c);
    return EmpiricalDistribution(
        detail::blocked_samples(samples, seed, threads, f, [&](Rng& rng, detail::LinkDraws& d) {
            return detail::interferer_power_full(rng, d, g.eta_g, g.eta_h, n_elements, g.has_ris);
        }));
}

}  // namespace risnet
