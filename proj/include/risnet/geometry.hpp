#pragma once

// Point processes on a disk: the user HPPP, the Gauss-Poisson TX/RIS field and
// nearest-TX association.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "risnet/errors.hpp"
#include "risnet/rng.hpp"

namespace risnet {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Disk of the given radius (meters) centred at the origin.
class Window {
public:
    Window() = default;
    explicit Window(double radius) : radius_(radius) {
        detail::require(radius > 0.0, "Window: radius must be positive");
    }
    double radius() const noexcept { return radius_; }
    double area() const noexcept { return std::numbers::pi * radius_ * radius_; }

private:
    double radius_ = 5000.0;
};

struct Cluster {
    Point2 parent;                  // TX
    std::optional<Point2> daughter;  // assisting RIS, at distance d0 from the TX
};

struct GppRealization {
    std::vector<Cluster> clusters;
    double lambda_t = 0.0;
    double p = 0.0;
    double d0 = 0.0;
    Window window;
};

namespace detail {

inline Point2 uniform_in_annulus(Rng& rng, double r_in, double r_out) {
    const double u = open_unit(rng);
    const double r = std::sqrt(r_in * r_in + u * (r_out * r_out - r_in * r_in));
    const double phi = 2.0 * std::numbers::pi * open_unit(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

inline std::size_t poisson_count(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::size_t> dist(mean);
    return dist(rng);
}

}  // namespace detail

/// Poisson points of the given density inside the annulus r_in <= |x| < r_out,
/// drawn from an existing stream.
inline std::vector<Point2> sample_ppp_annulus(Rng& rng, double density, double r_in, double r_out) {
    detail::require(density >= 0.0, "sample_ppp_annulus: density must be non-negative");
    detail::require(r_in >= 0.0 && r_out >= r_in, "sample_ppp_annulus: bad radii");
    const double area = std::numbers::pi * (r_out * r_out - r_in * r_in);
    const std::size_t n = detail::poisson_count(rng, density * area);
    std::vector<Point2> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(detail::uniform_in_annulus(rng, r_in, r_out));
    return pts;
}

inline std::vector<Point2> sample_hppp(Rng& rng, double density, const Window& window) {
    return sample_ppp_annulus(rng, density, 0.0, window.radius());
}

inline std::vector<Point2> sample_hppp(double density, const Window& window, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    return sample_hppp(rng, density, window);
}

/// Attach a RIS to each parent with probability p, uniformly on the circle of radius d0.
inline std::vector<Cluster> attach_daughters(Rng& rng, const std::vector<Point2>& parents, double p, double d0) {
    detail::require(p >= 0.0 && p <= 1.0, "attach_daughters: p must lie in [0, 1]");
    detail::require(d0 > 0.0, "attach_daughters: d0 must be positive");
    std::vector<Cluster> out;
    out.reserve(parents.size());
    for (const Point2& c : parents) {
        Cluster cl{c, std::nullopt};
        if (open_unit(rng) < p) {
            const double phi = 2.0 * std::numbers::pi * open_unit(rng);
            cl.daughter = Point2{c.x + d0 * std::cos(phi), c.y + d0 * std::sin(phi)};
        }
        out.push_back(cl);
    }
    return out;
}

inline GppRealization sample_gpp(Rng& rng, double lambda_t, double p, double d0, const Window& window) {
    detail::require(p >= 0.0 && p <= 1.0, "sample_gpp: p must lie in [0, 1]");
    detail::require(d0 > 0.0, "sample_gpp: d0 must be positive");
    GppRealization g{{}, lambda_t, p, d0, window};
    g.clusters = attach_daughters(rng, sample_hppp(rng, lambda_t, window), p, d0);
    return g;
}

inline GppRealization sample_gpp(double lambda_t, double p, double d0, const Window& window, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    return sample_gpp(rng, lambda_t, p, d0, window);
}

/// Index and distance of the cluster whose TX is closest to `query`; ties go to the lower index.
inline std::pair<std::size_t, double> nearest_parent(const GppRealization& g, Point2 query) {
    if (g.clusters.empty()) throw empty_realization_error("nearest_parent: realization has no clusters");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.clusters.size(); ++i) {
        const double d = distance(g.clusters[i].parent, query);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return {best, best_d};
}

/// CSV dump: cluster_id,parent_x,parent_y,has_ris,ris_x,ris_y (RIS columns empty when absent).
inline void write_realization_csv(std::ostream& os, const GppRealization& g) {
    os << "cluster_id,parent_x,parent_y,has_ris,ris_x,ris_y\n";
    const auto old_prec = os.precision(17);
    for (std::size_t i = 0; i < g.clusters.size(); ++i) {
        const Cluster& c = g.clusters[i];
        os << i << ',' << c.parent.x << ',' << c.parent.y << ',' << (c.daughter ? 1 : 0) << ',';
        if (c.daughter) os << c.daughter->x << ',' << c.daughter->y;
        else os << ',';
        os << '\n';
    }
    os.precision(old_prec);
}

}  // namespace risnet
