#pragma once

// Distance-based path loss and the small-scale fading samplers.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "risnet/errors.hpp"
#include "risnet/rng.hpp"

namespace risnet {

struct PathLossParams {
    double C_d = 1e-3;   // direct-link gain at 1 m (linear)
    double C_r = 1e-3;   // reflected-link gain at 1 m (linear)
    double alpha = 2.5;  // path-loss exponent
    double d0 = 3.0;     // TX-RIS distance, meters

    void validate() const {
        detail::require(C_d > 0.0 && C_r > 0.0, "PathLossParams: gains must be positive");
        detail::require(alpha > 2.0, "PathLossParams: alpha must exceed 2");
        detail::require(d0 > 0.0, "PathLossParams: d0 must be positive");
    }
};

/// Nakagami shapes with unit spread: m_h for TX-RIS, m_r for RIS-UE links.
struct FadingParams {
    double m_h = 1.0;
    double m_r = 1.0;

    void validate() const {
        detail::require(m_h >= 0.5 && m_r >= 0.5, "FadingParams: Nakagami shapes must be >= 0.5");
    }
};

inline double pathloss_direct(const PathLossParams& pl, double d) {
    detail::require(d > 0.0, "pathloss_direct: distance must be positive");
    return pl.C_d * std::pow(d, -pl.alpha);
}

inline double pathloss_reflected(const PathLossParams& pl, double d_r) {
    detail::require(d_r > 0.0, "pathloss_reflected: distance must be positive");
    return pl.C_r * std::pow(pl.d0 * d_r, -pl.alpha);
}

/// Nakagami(m, 1) magnitude as sqrt(Gamma(m, 1/m)).
class NakagamiSampler {
public:
    explicit NakagamiSampler(double m) : gamma_(m, 1.0 / m) {
        detail::require(m >= 0.5, "NakagamiSampler: m must be >= 0.5");
    }
    double operator()(Rng& rng) { return std::sqrt(gamma_(rng)); }
    double power(Rng& rng) { return gamma_(rng); }

private:
    std::gamma_distribution<double> gamma_;
};

inline std::vector<double> sample_nakagami_mag(double m, std::size_t count, std::uint64_t seed) {
    NakagamiSampler s(m);
    Rng rng = make_stream(seed, 0);
    std::vector<double> out(count);
    for (double& v : out) v = s(rng);
    return out;
}

/// Uniform on [-pi, pi).
inline double uniform_phase(Rng& rng) {
    return std::numbers::pi * (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
}

inline std::vector<double> sample_uniform_phase(std::size_t count, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    std::vector<double> out(count);
    for (double& v : out) v = uniform_phase(rng);
    return out;
}

}  // namespace risnet
