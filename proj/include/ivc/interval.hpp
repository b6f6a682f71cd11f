#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ivc/errors.hpp"

namespace ivc {

/// A compact real interval [lo, hi], lo <= hi, both finite.
///
/// Values are immutable after construction and all operations are pure.
/// Endpoints are plain doubles; no directed rounding is performed.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}

    explicit Interval(double point) : Interval(point, point) {}

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw validity_error("Interval: endpoints must be finite, got [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
        if (lo > hi)
            throw validity_error("Interval: lower endpoint " + std::to_string(lo) +
                                 " exceeds upper endpoint " + std::to_string(hi));
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }

    bool operator==(const Interval& other) const {
        return lo_ == other.lo_ && hi_ == other.hi_;
    }
    bool operator!=(const Interval& other) const { return !(*this == other); }

private:
    double lo_, hi_;
};

namespace detail {
inline void check_range(double v, const char* op) {
    if (!std::isfinite(v))
        throw std::range_error(std::string(op) + ": result overflows to a non-finite value");
}
} // namespace detail

/// Endpoint-wise sum A + B = [a_lo + b_lo, a_hi + b_hi].
inline Interval operator+(const Interval& a, const Interval& b) {
    const double lo = a.lo() + b.lo();
    const double hi = a.hi() + b.hi();
    detail::check_range(lo, "Interval +");
    detail::check_range(hi, "Interval +");
    return Interval(lo, hi);
}

/// Scalar multiple t*A; endpoints swap when t < 0.
inline Interval operator*(double t, const Interval& a) {
    if (!std::isfinite(t))
        throw std::invalid_argument("Interval scale: scalar must be finite");
    const double x = t * a.lo();
    const double y = t * a.hi();
    detail::check_range(x, "Interval scale");
    detail::check_range(y, "Interval scale");
    return t >= 0 ? Interval(x, y) : Interval(y, x);
}

inline Interval add(const Interval& a, const Interval& b) { return a + b; }
inline Interval scale(double t, const Interval& a) { return t * a; }

/// Generalized Hukuhara difference
/// A gh- B = [min{a_lo - b_lo, a_hi - b_hi}, max{a_lo - b_lo, a_hi - b_hi}].
/// Always exists; gh_sub(A, A) = [0, 0].
inline Interval gh_sub(const Interval& a, const Interval& b) {
    const double dl = a.lo() - b.lo();
    const double dh = a.hi() - b.hi();
    detail::check_range(dl, "gh_sub");
    detail::check_range(dh, "gh_sub");
    return Interval(std::min(dl, dh), std::max(dl, dh));
}

/// Pompeiu-Hausdorff distance D(A,B) = max{|a_lo - b_lo|, |a_hi - b_hi|}.
inline double dist(const Interval& a, const Interval& b) {
    return std::max(std::abs(a.lo() - b.lo()), std::abs(a.hi() - b.hi()));
}

/// ||A|| = max{|a| : a in A} = dist(A, [0,0]).
inline double norm(const Interval& a) {
    return std::max(std::abs(a.lo()), std::abs(a.hi()));
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

} // namespace ivc
