#pragma once

#include <stdexcept>
#include <string>

namespace risnet {

/// Raised when a moment-matched gamma fit would have non-positive variance.
class degenerate_fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double worst_lo, double worst_hi)
        : std::runtime_error(what + " (worst subinterval [" + std::to_string(worst_lo) + ", " +
                             std::to_string(worst_hi) + "])"),
          worst_lo_(worst_lo), worst_hi_(worst_hi) {}

    double worst_lo() const noexcept { return worst_lo_; }
    double worst_hi() const noexcept { return worst_hi_; }

private:
    double worst_lo_;
    double worst_hi_;
};

class insufficient_samples_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class empty_realization_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad key, value or unit in a run configuration.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

}  // namespace detail
}  // namespace risnet
