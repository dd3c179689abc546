#pragma once

#include <cstdint>
#include <random>

namespace risnet {

using Rng = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Independent generator for realization `index` under a run seed. The stream
/// depends only on (seed, index), so parallel sweeps reproduce regardless of
/// how trials are scheduled.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(detail::splitmix64(detail::splitmix64(seed) ^ detail::splitmix64(~index)));
}

/// Uniform on the open interval (0, 1); never returns an endpoint.
inline double open_unit(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace risnet
