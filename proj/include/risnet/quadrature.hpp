#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with interval bisection,
// plus the two maps used to bring (0, inf) onto (0, 1).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "risnet/errors.hpp"

namespace risnet {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
    /// Subinterval carrying the largest error estimate when the loop stopped.
    double worst_lo = 0.0;
    double worst_hi = 0.0;
};

namespace detail {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo, hi, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = f(c);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const double fsum = f(c - dx) + f(c + dx);
        kronrod += kKronrodWeights[j] * fsum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
    }
    return {lo, hi, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Integrate f over [lo, hi]. Never throws; check `converged`.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
    std::priority_queue<detail::Segment> heap;
    QuadratureResult out;
    detail::Segment first = detail::gk15(f, lo, hi);
    out.evaluations = 15;
    double total = first.value;
    double error = first.error;
    heap.push(first);
    while (true) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (error <= target) {
            out.converged = true;
            break;
        }
        if (heap.size() >= opt.max_intervals) break;
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;  // cannot split further
        heap.pop();
        const detail::Segment left = detail::gk15(f, worst.lo, mid);
        const detail::Segment right = detail::gk15(f, mid, worst.hi);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Recompute from the pieces so accumulated update round-off does not leak in.
    double value = 0.0;
    double err = 0.0;
    const detail::Segment worst = heap.top();
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.abs_error = err;
    out.worst_lo = worst.lo;
    out.worst_hi = worst.hi;
    return out;
}

/// Integrate f over [0, inf) through x = scale * t / (1 - t). `scale` should sit near
/// where f does its work; a narrow feature far below it can slip between the nodes.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, const QuadratureOptions& opt = {}, double scale = 1.0) {
    detail::require(scale > 0.0, "integrate_semi_infinite: scale must be positive");
    auto mapped = [&f, scale](double t) {
        const double one_minus = 1.0 - t;
        const double v = f(scale * t / one_minus);
        return v == 0.0 ? 0.0 : scale * v / (one_minus * one_minus);
    };
    QuadratureResult r = integrate(mapped, 0.0, 1.0, opt);
    // Report the worst subinterval in the caller's variable.
    r.worst_lo = scale * r.worst_lo / (1.0 - r.worst_lo);
    r.worst_hi = r.worst_hi >= 1.0 ? INFINITY : scale * r.worst_hi / (1.0 - r.worst_hi);
    return r;
}

template <class F>
double integrate_or_throw(F&& f, double lo, double hi, const QuadratureOptions& opt,
                          const char* what) {
    const QuadratureResult r = integrate(f, lo, hi, opt);
    if (!r.converged) throw quadrature_error(what, r.worst_lo, r.worst_hi);
    return r.value;
}

}  // namespace risnet
