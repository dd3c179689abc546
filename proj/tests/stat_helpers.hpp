#pragma once

// Small statistics helpers shared by the sampling tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace testutil {

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return d;
}

/// Critical value of the KS statistic at the 1% level (asymptotic).
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

/// Two-sample KS critical value at the 1% level.
inline double ks2_critical_1pct(std::size_t n, std::size_t m) {
    const double a = static_cast<double>(n), b = static_cast<double>(m);
    return 1.628 * std::sqrt((a + b) / (a * b));
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace testutil
