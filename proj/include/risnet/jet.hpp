#pragma once

// Truncated Taylor arithmetic. A TaylorJet of order n holds the normalized
// coefficients f^(i)(s0) / i! for i = 0..n; every operation below is exact to
// the carried order. The coverage expressions only ever expand around s0 = 1.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "risnet/errors.hpp"
#include "risnet/specfun.hpp"

namespace risnet {

class TaylorJet {
public:
    TaylorJet() : coeffs_(1, 0.0) {}
    explicit TaylorJet(std::size_t order, double value = 0.0) : coeffs_(order + 1, 0.0) {
        coeffs_[0] = value;
    }
    explicit TaylorJet(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        detail::require(!coeffs_.empty(), "TaylorJet: needs at least one coefficient");
    }

    static TaylorJet constant(std::size_t order, double c) { return TaylorJet(order, c); }

    /// The identity map s around s0.
    static TaylorJet variable(std::size_t order, double s0 = 1.0) {
        TaylorJet j(order, s0);
        if (order >= 1) j.coeffs_[1] = 1.0;
        return j;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    double value() const noexcept { return coeffs_[0]; }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    double& operator[](std::size_t i) { return coeffs_[i]; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

    /// i-th derivative at the expansion point.
    double derivative(std::size_t i) const {
        double f = 1.0;
        for (std::size_t k = 2; k <= i; ++k) f *= static_cast<double>(k);
        return coeffs_[i] * f;
    }

    TaylorJet& operator+=(const TaylorJet& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    TaylorJet& operator-=(const TaylorJet& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    TaylorJet& operator+=(double c) {
        coeffs_[0] += c;
        return *this;
    }
    TaylorJet& operator-=(double c) {
        coeffs_[0] -= c;
        return *this;
    }
    TaylorJet& operator*=(double c) {
        for (double& v : coeffs_) v *= c;
        return *this;
    }
    TaylorJet& operator*=(const TaylorJet& o) {
        check_same(o);
        std::vector<double> out(size(), 0.0);
        for (std::size_t n = 0; n < size(); ++n)
            for (std::size_t k = 0; k <= n; ++k) out[n] += coeffs_[k] * o.coeffs_[n - k];
        coeffs_ = std::move(out);
        return *this;
    }

    TaylorJet operator-() const {
        TaylorJet r = *this;
        r *= -1.0;
        return r;
    }

private:
    void check_same(const TaylorJet& o) const {
        detail::require(o.size() == size(), "TaylorJet: order mismatch");
    }

    std::vector<double> coeffs_;
};

inline TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
inline TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
inline TaylorJet operator*(TaylorJet a, const TaylorJet& b) { return a *= b; }
inline TaylorJet operator+(TaylorJet a, double c) { return a += c; }
inline TaylorJet operator+(double c, TaylorJet a) { return a += c; }
inline TaylorJet operator-(TaylorJet a, double c) { return a -= c; }
inline TaylorJet operator-(double c, TaylorJet a) { return (-a) += c; }
inline TaylorJet operator*(TaylorJet a, double c) { return a *= c; }
inline TaylorJet operator*(double c, TaylorJet a) { return a *= c; }

/// exp of a power series: e_n = (1/n) sum_k k v_k e_{n-k}.
inline TaylorJet jet_exp(const TaylorJet& v) {
    TaylorJet e(v.order(), std::exp(v[0]));
    for (std::size_t n = 1; n <= v.order(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * v[k] * e[n - k];
        e[n] = acc / static_cast<double>(n);
    }
    return e;
}

inline TaylorJet jet_reciprocal(const TaylorJet& u) {
    detail::require(u[0] != 0.0, "jet_reciprocal: zero constant term");
    TaylorJet r(u.order(), 1.0 / u[0]);
    for (std::size_t n = 1; n <= u.order(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += u[k] * r[n - k];
        r[n] = -acc / u[0];
    }
    return r;
}

inline TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) { return a * jet_reciprocal(b); }

/// u^p for u(s0) > 0, from u y' = p u' y.
inline TaylorJet jet_pow(const TaylorJet& u, double p) {
    detail::require(u[0] > 0.0, "jet_pow: base must be positive at the expansion point");
    TaylorJet y(u.order(), std::pow(u[0], p));
    for (std::size_t n = 1; n <= u.order(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += (p * static_cast<double>(k) - static_cast<double>(n - k)) * u[k] * y[n - k];
        y[n] = acc / (static_cast<double>(n) * u[0]);
    }
    return y;
}

inline TaylorJet jet_sqrt(const TaylorJet& u) { return jet_pow(u, 0.5); }

inline std::pair<TaylorJet, TaylorJet> jet_sin_cos(const TaylorJet& u) {
    TaylorJet s(u.order(), std::sin(u[0]));
    TaylorJet c(u.order(), std::cos(u[0]));
    for (std::size_t n = 1; n <= u.order(); ++n) {
        double as = 0.0;
        double ac = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double ku = static_cast<double>(k) * u[k];
            as += ku * c[n - k];
            ac += ku * s[n - k];
        }
        s[n] = as / static_cast<double>(n);
        c[n] = -ac / static_cast<double>(n);
    }
    return {s, c};
}

/// f(u(s)) given f(u0) and the jet of f'(u(s)): y' = f'(u) u'.
inline TaylorJet jet_compose_from_derivative(const TaylorJet& u, const TaylorJet& fprime_of_u,
                                             double f_at_u0) {
    detail::require(fprime_of_u.order() + 1 >= u.order(), "jet_compose: derivative jet too short");
    TaylorJet y(u.order(), f_at_u0);
    for (std::size_t n = 1; n <= u.order(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * u[k] * fprime_of_u[n - k];
        y[n] = acc / static_cast<double>(n);
    }
    return y;
}

/// Jet of 2F1(1, -2/alpha; 1-2/alpha; -c s) around s = 1 (c >= 0).
///
/// G(t) = 2F1(1, -d; 1-d; -t) obeys t G'(t) = d (G(t) - 1/(1+t)), so with
/// H(s) = G(c s) the coefficients follow
///   h_{n+1} = ((d - n) h_n - d q_n) / (n + 1),  q_n = (-rho)^n / (1 + c),
/// where rho = c / (1 + c) are the coefficients of 1/(1 + c s).
///
/// For small c the true coefficients fall off like c^n while the recurrence
/// carries absolute error ~eps * h_0, so there the power series
/// G(t) = sum_k d / (d - k) (-t)^k is re-expanded around s = 1 instead.
inline TaylorJet jet_hyp2f1_cov(double alpha, double c, std::size_t order) {
    detail::require(c >= 0.0, "jet_hyp2f1_cov: scale must be non-negative");
    TaylorJet h(order, hyp2f1_cov(alpha, -c));
    if (c == 0.0) return h;
    const double d = 2.0 / alpha;
    if (c <= 0.5) {
        for (std::size_t n = 1; n <= order; ++n) {
            // sum_{k>=n} d/(d-k) (-c)^k C(k, n)
            const double dn = static_cast<double>(n);
            double term = std::pow(-c, dn);  // (-c)^k C(k, n) at k = n
            double sum = 0.0;
            for (std::size_t k = n; k < n + 2000; ++k) {
                const double dk = static_cast<double>(k);
                const double t = d / (d - dk) * term;
                sum += t;
                if (std::abs(t) <= 1e-17 * std::abs(sum)) break;
                term *= -c * (dk + 1.0) / (dk + 1.0 - dn);
            }
            h[n] = sum;
        }
        return h;
    }
    const double rho = c / (1.0 + c);
    double q = 1.0 / (1.0 + c);
    for (std::size_t n = 0; n < order; ++n) {
        const double dn = static_cast<double>(n);
        h[n + 1] = ((d - dn) * h[n] - d * q) / (dn + 1.0);
        q *= -rho;
    }
    return h;
}

/// erfcx(z(s)) via erfcx'(z) = 2 z erfcx(z) - 2/sqrt(pi). For large z[0] that recurrence
/// cancels (2 z erfcx(z) -> 2/sqrt(pi)), so the asymptotic series
///   erfcx(z) = 1/(z sqrt(pi)) sum_k (-1)^k (2k-1)!! / (2 z^2)^k
/// is composed instead.
inline TaylorJet jet_erfcx(const TaylorJet& z) {
    const std::size_t order = z.order();
    if (z[0] > 8.0) {
        const TaylorJet inv = jet_reciprocal(z);
        const TaylorJet u = 0.5 * inv * inv;
        // Coefficients shrink until k ~ z^2; at z >= 8 forty terms are far below rounding.
        constexpr int kTerms = 40;
        std::vector<double> c(kTerms);
        c[0] = 1.0;
        for (int k = 1; k < kTerms; ++k) c[k] = -c[k - 1] * (2.0 * k - 1.0);
        TaylorJet acc = TaylorJet::constant(order, c[kTerms - 1]);
        for (int k = kTerms - 2; k >= 0; --k) acc = acc * u + TaylorJet::constant(order, c[k]);
        return std::numbers::inv_sqrtpi * inv * acc;
    }
    TaylorJet y(order, erfcx(z[0]));
    std::vector<double> zy(order + 1, 0.0);
    for (std::size_t n = 0; n < order; ++n) {
        // (z*y)_n only needs y_0..y_n, which are known here.
        double acc = 0.0;
        for (std::size_t j = 0; j <= n; ++j) acc += z[j] * y[n - j];
        zy[n] = acc;
        double next = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            double r = 2.0 * zy[n - k];
            if (n - k == 0) r -= 2.0 * std::numbers::inv_sqrtpi;
            next += static_cast<double>(k + 1) * z[k + 1] * r;
        }
        y[n + 1] = next / static_cast<double>(n + 1);
    }
    return y;
}

/// Si(u(s)) and Ci(u(s)) from Si' = sin/u, Ci' = cos/u.
inline std::pair<TaylorJet, TaylorJet> jet_sin_cos_integrals(const TaylorJet& u) {
    const auto [s, c] = jet_sin_cos(u);
    const TaylorJet inv = jet_reciprocal(u);
    const SiCi at0 = sin_cos_integrals(u[0]);
    return {jet_compose_from_derivative(u, s * inv, at0.si),
            jet_compose_from_derivative(u, c * inv, at0.ci)};
}

/// Result of sum_{i<terms} (-1)^i f_i, which is how every derivative series in
/// the coverage expressions collapses once the jet of f is known.
struct AlternatingSum {
    double value = 0.0;
    double abs_sum = 0.0;  // sum of |terms|
    /// Relative rounding loss estimate: eps * abs_sum / |value|.
    double cancellation() const {
        if (value == 0.0) return abs_sum == 0.0 ? 0.0 : 1.0;
        return std::numeric_limits<double>::epsilon() * abs_sum / std::abs(value);
    }
};

/// Neumaier-compensated alternating sum of the first `terms` coefficients.
inline AlternatingSum alternating_sum(const TaylorJet& f, std::size_t terms) {
    detail::require(terms >= 1 && terms <= f.size(), "alternating_sum: bad term count");
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
        const double t = (i % 2 == 0) ? f[i] : -f[i];
        abs_sum += std::abs(t);
        const double next = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - next) + t;
        else
            comp += (t - next) + sum;
        sum = next;
    }
    return {sum + comp, abs_sum};
}

}  // namespace risnet
