#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ivc/errors.hpp"
#include "ivc/interval.hpp"

namespace ivc {

namespace detail {

inline bool is_dyadic_node_count(std::size_t q) {
    if (q < 2) return false;
    const std::size_t segments = q - 1;
    return (segments & (segments - 1)) == 0;
}

// Adaptive Simpson quadrature with an absolute error target.
// Standard Richardson-controlled recursion; deterministic.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Exact integral of the piecewise-linear interpolant of uniformly spaced node
// values over [t0, t1] (partial first/last segments included).
inline double pl_integral(double a, double b, std::span<const double> vals, double t0, double t1) {
    const std::size_t q = vals.size();
    const double h = (b - a) / static_cast<double>(q - 1);
    // the last node is pinned to b; a + (q-1)*h need not equal b exactly
    auto node = [&](std::size_t i) { return i + 1 == q ? b : a + static_cast<double>(i) * h; };
    auto value_at = [&](double t) {
        auto i = static_cast<std::size_t>(std::max(0.0, (t - a) / h));
        i = std::min(i, q - 2);
        if (t == node(i)) return vals[i];
        if (t == node(i + 1)) return vals[i + 1];
        const double th = (t - node(i)) / h;
        return vals[i] * (1.0 - th) + vals[i + 1] * th;
    };
    auto first = static_cast<std::size_t>(std::max(0.0, (t0 - a) / h));
    first = std::min(first, q - 2);
    double acc = 0.0;
    for (std::size_t i = first; i < q - 1 && node(i) < t1; ++i) {
        const double u = std::max(node(i), t0);
        const double v = std::min(node(i + 1), t1);
        if (v > u) acc += (v - u) * 0.5 * (value_at(u) + value_at(v));
    }
    return acc;
}

} // namespace detail

/// Strictly increasing evaluation points covering [a, b]; used to discretize
/// the sup in the uniform metric H.
class EvalGrid {
public:
    explicit EvalGrid(std::vector<double> points) : points_(std::move(points)) {
        if (points_.size() < 2)
            throw std::invalid_argument("EvalGrid: need at least 2 points");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i] > points_[i - 1]))
                throw std::invalid_argument("EvalGrid: points must be strictly increasing");
    }

    static EvalGrid uniform(double a, double b, std::size_t n) {
        if (!(a < b)) throw std::invalid_argument("EvalGrid: need a < b");
        if (n < 2) throw std::invalid_argument("EvalGrid: need n >= 2");
        std::vector<double> pts(n);
        const double h = (b - a) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) pts[i] = a + static_cast<double>(i) * h;
        pts.front() = a;
        pts.back() = b;
        return EvalGrid(std::move(pts));
    }

    std::span<const double> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

private:
    std::vector<double> points_;
};

/// Continuous interval-valued function on [a, b], represented either by a pair
/// of analytic endpoint callables or by endpoint values on q = 2^k + 1
/// uniformly spaced dyadic nodes with piecewise-linear interpolation.
///
/// Validity (lower <= upper) is checked at all nodes on construction for the
/// grid representation and at every evaluation for the analytic one.
class IvFun1D {
public:
    using Endpoint = std::function<double(double)>;

    IvFun1D(double a, double b, Endpoint lower, Endpoint upper)
        : a_(a), b_(b), lower_fn_(std::move(lower)), upper_fn_(std::move(upper)) {
        check_domain();
        if (!lower_fn_ || !upper_fn_)
            throw std::invalid_argument("IvFun1D: endpoint callables must be non-empty");
    }

    static IvFun1D grid(double a, double b, std::vector<double> lower, std::vector<double> upper) {
        IvFun1D f;
        f.a_ = a;
        f.b_ = b;
        f.check_domain();
        if (lower.size() != upper.size())
            throw std::invalid_argument("IvFun1D::grid: endpoint value counts differ");
        if (!detail::is_dyadic_node_count(lower.size()))
            throw std::invalid_argument("IvFun1D::grid: node count must be 2^k + 1");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
                throw validity_error("IvFun1D::grid: non-finite value at node " + std::to_string(i));
            if (lower[i] > upper[i])
                throw validity_error("IvFun1D::grid: lower > upper at node " + std::to_string(i));
        }
        f.lower_vals_ = std::move(lower);
        f.upper_vals_ = std::move(upper);
        return f;
    }

    double domain_lo() const { return a_; }
    double domain_hi() const { return b_; }
    bool is_grid() const { return !lower_vals_.empty(); }

    /// Node count q (grid representation only).
    std::size_t size() const {
        require_grid();
        return lower_vals_.size();
    }
    double node(std::size_t i) const {
        require_grid();
        // pinned endpoints: node(q-1) is exactly b
        if (i + 1 == lower_vals_.size()) return b_;
        return a_ + static_cast<double>(i) * step();
    }
    double step() const {
        require_grid();
        return (b_ - a_) / static_cast<double>(lower_vals_.size() - 1);
    }
    const std::vector<double>& lower_values() const {
        require_grid();
        return lower_vals_;
    }
    const std::vector<double>& upper_values() const {
        require_grid();
        return upper_vals_;
    }

    Interval operator()(double t) const {
        if (t < a_ || t > b_)
            throw std::domain_error("IvFun1D: evaluation at t = " + std::to_string(t) +
                                    " outside domain [" + std::to_string(a_) + ", " +
                                    std::to_string(b_) + "]");
        if (is_grid()) {
            const double h = step();
            const std::size_t q = lower_vals_.size();
            auto i = static_cast<std::size_t>(std::max(0.0, (t - a_) / h));
            i = std::min(i, q - 2);
            // exact node hits reproduce stored values bit-for-bit
            if (t == node(i)) return Interval(lower_vals_[i], upper_vals_[i]);
            if (t == node(i + 1)) return Interval(lower_vals_[i + 1], upper_vals_[i + 1]);
            const double th = (t - node(i)) / h;
            const double lo = lower_vals_[i] * (1.0 - th) + lower_vals_[i + 1] * th;
            const double hi = upper_vals_[i] * (1.0 - th) + upper_vals_[i + 1] * th;
            return Interval(lo, hi);
        }
        return Interval(lower_fn_(t), upper_fn_(t));
    }

    double lower_at(double t) const { return (*this)(t).lo(); }
    double upper_at(double t) const { return (*this)(t).hi(); }

private:
    IvFun1D() = default;
    void check_domain() const {
        if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_))
            throw std::invalid_argument("IvFun1D: need finite a < b");
    }
    void require_grid() const {
        if (!is_grid()) throw std::logic_error("IvFun1D: grid representation required");
    }

    double a_ = 0.0, b_ = 1.0;
    Endpoint lower_fn_, upper_fn_;
    std::vector<double> lower_vals_, upper_vals_;
};

/// Continuous interval-valued function on the square [a, b]^2; analytic
/// endpoints or a q x q dyadic grid with piecewise-bilinear interpolation.
class IvFun2D {
public:
    using Endpoint = std::function<double(double, double)>;

    IvFun2D(double a, double b, Endpoint lower, Endpoint upper)
        : a_(a), b_(b), lower_fn_(std::move(lower)), upper_fn_(std::move(upper)) {
        check_domain();
        if (!lower_fn_ || !upper_fn_)
            throw std::invalid_argument("IvFun2D: endpoint callables must be non-empty");
    }

    /// Row-major node values: index i*q + l holds the value at (t_i, s_l).
    static IvFun2D grid(double a, double b, std::size_t q, std::vector<double> lower,
                        std::vector<double> upper) {
        IvFun2D z;
        z.a_ = a;
        z.b_ = b;
        z.check_domain();
        if (!detail::is_dyadic_node_count(q))
            throw std::invalid_argument("IvFun2D::grid: node count per axis must be 2^k + 1");
        if (lower.size() != q * q || upper.size() != q * q)
            throw std::invalid_argument("IvFun2D::grid: need q*q values per endpoint");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
                throw validity_error("IvFun2D::grid: non-finite value at node " + std::to_string(i));
            if (lower[i] > upper[i])
                throw validity_error("IvFun2D::grid: lower > upper at node " + std::to_string(i));
        }
        z.q_ = q;
        z.lower_vals_ = std::move(lower);
        z.upper_vals_ = std::move(upper);
        return z;
    }

    double domain_lo() const { return a_; }
    double domain_hi() const { return b_; }
    bool is_grid() const { return q_ != 0; }
    std::size_t size() const { return q_; }
    double node(std::size_t i) const {
        if (i + 1 == q_) return b_;
        return a_ + static_cast<double>(i) * step();
    }
    double step() const { return (b_ - a_) / static_cast<double>(q_ - 1); }

    Interval operator()(double t, double s) const {
        check_point(t);
        check_point(s);
        if (!is_grid()) return Interval(lower_fn_(t, s), upper_fn_(t, s));
        const auto [lo, hi] = bilinear(t, s);
        return Interval(lo, hi);
    }

    /// Fixed-t restriction sampled at the s-nodes; linear in s on each cell.
    std::pair<std::vector<double>, std::vector<double>> row_at(double t) const {
        check_point(t);
        require_grid();
        const double h = step();
        auto i = static_cast<std::size_t>(std::max(0.0, (t - a_) / h));
        i = std::min(i, q_ - 2);
        std::vector<double> lo(q_), hi(q_);
        if (t == node(i) || t == node(i + 1)) {
            const std::size_t row = (t == node(i)) ? i : i + 1;
            for (std::size_t l = 0; l < q_; ++l) {
                lo[l] = lower_vals_[row * q_ + l];
                hi[l] = upper_vals_[row * q_ + l];
            }
            return {lo, hi};
        }
        const double th = (t - node(i)) / h;
        for (std::size_t l = 0; l < q_; ++l) {
            lo[l] = lower_vals_[i * q_ + l] * (1.0 - th) + lower_vals_[(i + 1) * q_ + l] * th;
            hi[l] = upper_vals_[i * q_ + l] * (1.0 - th) + upper_vals_[(i + 1) * q_ + l] * th;
        }
        return {lo, hi};
    }

private:
    IvFun2D() = default;
    void check_domain() const {
        if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_))
            throw std::invalid_argument("IvFun2D: need finite a < b");
    }
    void check_point(double x) const {
        if (x < a_ || x > b_)
            throw std::domain_error("IvFun2D: evaluation outside domain square");
    }
    void require_grid() const {
        if (!is_grid()) throw std::logic_error("IvFun2D: grid representation required");
    }
    std::pair<double, double> bilinear(double t, double s) const {
        const double h = step();
        auto i = static_cast<std::size_t>(std::max(0.0, (t - a_) / h));
        auto l = static_cast<std::size_t>(std::max(0.0, (s - a_) / h));
        i = std::min(i, q_ - 2);
        l = std::min(l, q_ - 2);
        const double tt = (t == node(i)) ? 0.0 : (t == node(i + 1)) ? 1.0 : (t - node(i)) / h;
        const double ss = (s == node(l)) ? 0.0 : (s == node(l + 1)) ? 1.0 : (s - node(l)) / h;
        auto blend = [&](const std::vector<double>& v) {
            const double v00 = v[i * q_ + l], v01 = v[i * q_ + l + 1];
            const double v10 = v[(i + 1) * q_ + l], v11 = v[(i + 1) * q_ + l + 1];
            const double r0 = v00 * (1.0 - ss) + v01 * ss;
            const double r1 = v10 * (1.0 - ss) + v11 * ss;
            return r0 * (1.0 - tt) + r1 * tt;
        };
        return {blend(lower_vals_), blend(upper_vals_)};
    }

    double a_ = 0.0, b_ = 1.0;
    std::size_t q_ = 0;
    IvFun2D::Endpoint lower_fn_, upper_fn_;
    std::vector<double> lower_vals_, upper_vals_;
};

namespace detail {
inline void check_same_domain(const IvFun1D& f, const IvFun1D& h) {
    if (f.domain_lo() != h.domain_lo() || f.domain_hi() != h.domain_hi())
        throw std::invalid_argument("interval functions live on different domains");
}
} // namespace detail

/// Grid approximation of the uniform metric H(f, h) = sup_t D(f(t), h(t)):
/// the max of the pointwise Pompeiu-Hausdorff distance over the grid.
/// Exact when f and h are piecewise linear with breakpoints in the grid.
inline double metric_h(const IvFun1D& f, const IvFun1D& h, const EvalGrid& grid) {
    detail::check_same_domain(f, h);
    double worst = 0.0;
    for (double t : grid.points()) worst = std::max(worst, dist(f(t), h(t)));
    return worst;
}

inline constexpr double kAnalyticQuadTol = 1e-12;

/// Endpoint-wise integral [int lower, int upper] over [t0, t1].
/// Grid representation: exact piecewise-linear quadrature (partial segments
/// included). Analytic representation: adaptive quadrature, abs. tol 1e-12.
inline Interval integrate(const IvFun1D& f, double t0, double t1) {
    if (t0 > t1) throw std::invalid_argument("integrate: need t0 <= t1");
    if (t0 < f.domain_lo() || t1 > f.domain_hi())
        throw std::domain_error("integrate: [t0, t1] outside the function domain");
    if (t0 == t1) return Interval(0.0, 0.0);
    double ilo, ihi;
    if (f.is_grid()) {
        ilo = detail::pl_integral(f.domain_lo(), f.domain_hi(), f.lower_values(), t0, t1);
        ihi = detail::pl_integral(f.domain_lo(), f.domain_hi(), f.upper_values(), t0, t1);
    } else {
        ilo = detail::adaptive_simpson([&](double t) { return f(t).lo(); }, t0, t1,
                                       kAnalyticQuadTol);
        ihi = detail::adaptive_simpson([&](double t) { return f(t).hi(); }, t0, t1,
                                       kAnalyticQuadTol);
    }
    if (ilo > ihi) {
        // the two adaptive passes may disagree by quadrature noise on
        // (near-)degenerate integrands; anything larger is a real violation
        if (ilo - ihi > 10.0 * kAnalyticQuadTol)
            throw validity_error("integrate: endpoint integrals are out of order");
        const double mid = 0.5 * (ilo + ihi);
        ilo = ihi = mid;
    }
    return Interval(ilo, ihi);
}

/// Integral in s of the fixed-t slice s -> z(t, s) over [s0, s1].
/// For the grid (bilinear) representation the slice is piecewise linear in s
/// and is integrated exactly.
inline Interval slice_integrate(const IvFun2D& z, double t, double s0, double s1) {
    if (s0 > s1) throw std::invalid_argument("slice_integrate: need s0 <= s1");
    if (t < z.domain_lo() || t > z.domain_hi() || s0 < z.domain_lo() || s1 > z.domain_hi())
        throw std::domain_error("slice_integrate: arguments outside the domain square");
    if (s0 == s1) return Interval(0.0, 0.0);
    double ilo, ihi;
    if (z.is_grid()) {
        const auto [row_lo, row_hi] = z.row_at(t);
        ilo = detail::pl_integral(z.domain_lo(), z.domain_hi(), row_lo, s0, s1);
        ihi = detail::pl_integral(z.domain_lo(), z.domain_hi(), row_hi, s0, s1);
    } else {
        ilo = detail::adaptive_simpson([&](double s) { return z(t, s).lo(); }, s0, s1,
                                       kAnalyticQuadTol);
        ihi = detail::adaptive_simpson([&](double s) { return z(t, s).hi(); }, s0, s1,
                                       kAnalyticQuadTol);
    }
    if (ilo > ihi) {
        if (ilo - ihi > 10.0 * kAnalyticQuadTol)
            throw validity_error("slice_integrate: endpoint integrals are out of order");
        const double mid = 0.5 * (ilo + ihi);
        ilo = ihi = mid;
    }
    return Interval(ilo, ihi);
}

/// Pointwise generalized Hukuhara difference t -> f(t) gh- h(t).
/// The result is kept in analytic form: its endpoints are min/max
/// combinations of the endpoint differences, which need not be piecewise
/// linear even when f and h are.
inline IvFun1D gh_sub_fun(const IvFun1D& f, const IvFun1D& h) {
    detail::check_same_domain(f, h);
    return IvFun1D(
        f.domain_lo(), f.domain_hi(),
        [f, h](double t) { return gh_sub(f(t), h(t)).lo(); },
        [f, h](double t) { return gh_sub(f(t), h(t)).hi(); });
}

} // namespace ivc
