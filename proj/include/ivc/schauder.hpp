#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivc/interval.hpp"
#include "ivc/ivfun.hpp"

namespace ivc {

namespace detail {
// hats are indexed 2, 3, ...; hat m = n - 2 lives on refinement level l >= 1
// (2^(l-1) hats per level) and is centered at an odd multiple of 2^-l
inline int hat_refinement_level(std::size_t n) {
    std::size_t m = n - 2;
    int l = 1;
    std::size_t first = 0; // index of the first hat on level l
    while (m - first >= (std::size_t{1} << (l - 1))) {
        first += std::size_t{1} << (l - 1);
        ++l;
    }
    return l;
}
inline std::size_t hat_position(std::size_t n) {
    std::size_t m = n - 2;
    int l = 1;
    std::size_t first = 0;
    while (m - first >= (std::size_t{1} << (l - 1))) {
        first += std::size_t{1} << (l - 1);
        ++l;
    }
    return m - first;
}
} // namespace detail

/// Faber-Schauder hat system on the dyadic nodes of [a, b].
///
/// Basis ordering: constant 1, ramp (t-a)/(b-a), then hats level by level
/// (node ordering a, b, midpoint, quarters, eighths, ...). Every basis
/// function is nonnegative, and the projection onto the first q = 2^k + 1
/// functions is plain piecewise-linear interpolation on the uniform dyadic
/// grid, which maps nonnegative functions to nonnegative interpolants.
class DyadicBasis1D {
public:
    explicit DyadicBasis1D(int level, double a = 0.0, double b = 1.0)
        : level_(level), a_(a), b_(b) {
        if (level < 0) throw std::invalid_argument("DyadicBasis1D: level must be >= 0");
        if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("DyadicBasis1D: need finite a < b");
    }

    int level() const { return level_; }
    double domain_lo() const { return a_; }
    double domain_hi() const { return b_; }

    /// Basis size q = 2^k + 1.
    std::size_t size() const { return (std::size_t{1} << level_) + 1; }

    /// n-th node in the Schauder ordering: a, b, midpoint, quarters, ...
    double schauder_node(std::size_t n) const {
        check_index(n);
        if (n == 0) return a_;
        if (n == 1) return b_;
        return hat_center(n);
    }

    /// Nodes in ascending order, node(i) = a + i*(b-a)/(q-1); the last is b.
    std::vector<double> ascending_nodes() const {
        const std::size_t q = size();
        std::vector<double> nodes(q);
        const double h = (b_ - a_) / static_cast<double>(q - 1);
        for (std::size_t i = 0; i < q; ++i) nodes[i] = a_ + static_cast<double>(i) * h;
        nodes.front() = a_;
        nodes.back() = b_;
        return nodes;
    }

    /// n-th basis function; nonnegative on [a, b].
    double basis_function(std::size_t n, double t) const {
        check_index(n);
        if (n == 0) return 1.0;
        if (n == 1) return (t - a_) / (b_ - a_);
        const double c = hat_center(n);
        const double w = hat_halfwidth(n);
        return std::max(0.0, 1.0 - std::abs(t - c) / w);
    }

    /// Exact integral of the n-th basis function over [t0, t1].
    double basis_integral(std::size_t n, double t0, double t1) const {
        check_index(n);
        if (t0 > t1) throw std::invalid_argument("basis_integral: need t0 <= t1");
        if (n == 0) return t1 - t0;
        if (n == 1) {
            const double u1 = t1 - a_, u0 = t0 - a_;
            return (u1 * u1 - u0 * u0) / (2.0 * (b_ - a_));
        }
        const double c = hat_center(n);
        const double w = hat_halfwidth(n);
        auto piece = [&](double u0, double u1) {
            const double x0 = std::max(t0, u0), x1 = std::min(t1, u1);
            if (x1 <= x0) return 0.0;
            const double v0 = 1.0 - std::abs(x0 - c) / w;
            const double v1 = 1.0 - std::abs(x1 - c) / w;
            return (x1 - x0) * 0.5 * (v0 + v1);
        };
        return piece(c - w, c) + piece(c, c + w);
    }

    /// Halfwidth of the support of hat n (n >= 2).
    double hat_halfwidth(std::size_t n) const {
        check_index(n);
        if (n < 2) throw std::invalid_argument("hat_halfwidth: index does not name a hat");
        return (b_ - a_) / static_cast<double>(std::size_t{1} << detail::hat_refinement_level(n));
    }

    /// Projection of a scalar function: its values at the ascending nodes
    /// (the projection itself is the piecewise-linear interpolant of these).
    std::vector<double> project_scalar(const std::function<double(double)>& g) const {
        const auto nodes = ascending_nodes();
        std::vector<double> vals(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            vals[i] = g(nodes[i]);
            if (!std::isfinite(vals[i]))
                throw std::range_error("project_scalar: non-finite sample at t = " +
                                       std::to_string(nodes[i]));
        }
        return vals;
    }

    /// Piecewise-linear interpolation of ascending node values at t.
    double interpolate(std::span<const double> node_vals, double t) const {
        if (node_vals.size() != size())
            throw std::invalid_argument("interpolate: node value count mismatch");
        const std::size_t q = size();
        const double h = (b_ - a_) / static_cast<double>(q - 1);
        auto node = [&](std::size_t i) {
            return i + 1 == q ? b_ : a_ + static_cast<double>(i) * h;
        };
        auto i = static_cast<std::size_t>(std::max(0.0, (t - a_) / h));
        i = std::min(i, q - 2);
        if (t == node(i)) return node_vals[i];
        if (t == node(i + 1)) return node_vals[i + 1];
        const double th = (t - node(i)) / h;
        return node_vals[i] * (1.0 - th) + node_vals[i + 1] * th;
    }

private:
    void check_index(std::size_t n) const {
        if (n >= size()) throw std::out_of_range("DyadicBasis1D: basis index out of range");
    }
    double hat_center(std::size_t n) const {
        const int l = detail::hat_refinement_level(n);
        const std::size_t j = detail::hat_position(n);
        const double denom = static_cast<double>(std::size_t{1} << l);
        return a_ + (b_ - a_) * (static_cast<double>(2 * j + 1) / denom);
    }

    int level_;
    double a_, b_;
};

/// Same basis transported to [a, b] by the affine map t -> a + (b-a)t.
inline DyadicBasis1D rescale(const DyadicBasis1D& basis, double a, double b) {
    return DyadicBasis1D(basis.level(), a, b);
}

/// Tensor-product dyadic basis on [a, b]^2; the projection onto the full
/// level is bilinear interpolation on the q x q grid.
class DyadicBasis2D {
public:
    explicit DyadicBasis2D(int level, double a = 0.0, double b = 1.0) : axis_(level, a, b) {}

    int level() const { return axis_.level(); }
    double domain_lo() const { return axis_.domain_lo(); }
    double domain_hi() const { return axis_.domain_hi(); }
    std::size_t axis_size() const { return axis_.size(); }
    std::size_t size() const { return axis_.size() * axis_.size(); }
    const DyadicBasis1D& axis() const { return axis_; }

    /// Row-major samples of g at the q x q ascending nodes.
    std::vector<double> project_scalar(const std::function<double(double, double)>& g) const {
        const auto nodes = axis_.ascending_nodes();
        const std::size_t q = nodes.size();
        std::vector<double> vals(q * q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t l = 0; l < q; ++l) {
                vals[i * q + l] = g(nodes[i], nodes[l]);
                if (!std::isfinite(vals[i * q + l]))
                    throw std::range_error("project_scalar: non-finite sample at (" +
                                           std::to_string(nodes[i]) + ", " +
                                           std::to_string(nodes[l]) + ")");
            }
        return vals;
    }

private:
    DyadicBasis1D axis_;
};

inline DyadicBasis2D rescale(const DyadicBasis2D& basis, double a, double b) {
    return DyadicBasis2D(basis.level(), a, b);
}

/// Interval projection P_n(f) = [proj(lower), proj(upper)] as a grid function.
/// Validity is preserved: interpolation of upper - lower >= 0 stays >= 0.
inline IvFun1D project_interval(const DyadicBasis1D& basis, const IvFun1D& f) {
    if (f.domain_lo() != basis.domain_lo() || f.domain_hi() != basis.domain_hi())
        throw std::invalid_argument("project_interval: basis and function domains differ");
    const auto nodes = basis.ascending_nodes();
    std::vector<double> lo(nodes.size()), hi(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Interval v = f(nodes[i]);
        lo[i] = v.lo();
        hi[i] = v.hi();
    }
    return IvFun1D::grid(basis.domain_lo(), basis.domain_hi(), std::move(lo), std::move(hi));
}

inline IvFun2D project_interval(const DyadicBasis2D& basis, const IvFun2D& z) {
    if (z.domain_lo() != basis.domain_lo() || z.domain_hi() != basis.domain_hi())
        throw std::invalid_argument("project_interval: basis and function domains differ");
    const auto nodes = basis.axis().ascending_nodes();
    const std::size_t q = nodes.size();
    std::vector<double> lo(q * q), hi(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t l = 0; l < q; ++l) {
            const Interval v = z(nodes[i], nodes[l]);
            lo[i * q + l] = v.lo();
            hi[i * q + l] = v.hi();
        }
    return IvFun2D::grid(basis.domain_lo(), basis.domain_hi(), q, std::move(lo), std::move(hi));
}

/// Coefficients of P_n(f) split for the gH representation
///   P_n(f) = sum alpha_k phi_k + sum_{beta_k-alpha_k >= 0} (beta_k-alpha_k) psi_k
///            gh- sum_{beta_k-alpha_k < 0} |beta_k-alpha_k| psi_k
/// with phi_k = [f_k, f_k] and psi_k = [0, f_k].
struct GHDecomposition {
    std::vector<double> alphas;           // lower-endpoint coefficients
    std::vector<double> betas;            // upper-endpoint coefficients
    std::vector<std::size_t> nonneg_idx;  // k with beta_k - alpha_k >= 0
    std::vector<std::size_t> neg_idx;     // k with beta_k - alpha_k < 0
};

/// Schauder coefficients of both endpoint functions, computed by the
/// level-by-level interpolation-residual recursion (exact on grid data):
/// at a hat's center the previous-level interpolant is the mean of the
/// two support endpoints.
inline GHDecomposition gh_decompose(const DyadicBasis1D& basis, const IvFun1D& f) {
    if (f.domain_lo() != basis.domain_lo() || f.domain_hi() != basis.domain_hi())
        throw std::invalid_argument("gh_decompose: basis and function domains differ");
    const std::size_t q = basis.size();
    GHDecomposition d;
    d.alphas.resize(q);
    d.betas.resize(q);
    for (std::size_t n = 0; n < q; ++n) {
        const double tn = basis.schauder_node(n);
        const Interval at_tn = f(tn);
        if (n == 0) {
            d.alphas[0] = at_tn.lo();
            d.betas[0] = at_tn.hi();
        } else if (n == 1) {
            const Interval at_a = f(basis.schauder_node(0));
            d.alphas[1] = at_tn.lo() - at_a.lo();
            d.betas[1] = at_tn.hi() - at_a.hi();
        } else {
            const double w = basis.hat_halfwidth(n);
            // clamp: tn +- w can land an ulp outside [a, b]
            const Interval left = f(std::max(basis.domain_lo(), tn - w));
            const Interval right = f(std::min(basis.domain_hi(), tn + w));
            d.alphas[n] = at_tn.lo() - 0.5 * (left.lo() + right.lo());
            d.betas[n] = at_tn.hi() - 0.5 * (left.hi() + right.hi());
        }
        if (d.betas[n] - d.alphas[n] >= 0.0)
            d.nonneg_idx.push_back(n);
        else
            d.neg_idx.push_back(n);
    }
    return d;
}

/// Evaluates the gH decomposition at t; equals [proj(lower), proj(upper)](t).
inline Interval gh_reconstruct(const DyadicBasis1D& basis, const GHDecomposition& d, double t) {
    double base = 0.0, plus = 0.0, minus = 0.0;
    for (std::size_t n = 0; n < d.alphas.size(); ++n)
        base += d.alphas[n] * basis.basis_function(n, t);
    for (std::size_t n : d.nonneg_idx)
        plus += (d.betas[n] - d.alphas[n]) * basis.basis_function(n, t);
    for (std::size_t n : d.neg_idx)
        minus += std::abs(d.betas[n] - d.alphas[n]) * basis.basis_function(n, t);
    return Interval(base) + gh_sub(Interval(0.0, plus), Interval(0.0, minus));
}

/// Integral of P_n(f) over [t0, t1] assembled from the decomposition:
/// coefficient sums against exact basis-function integrals, one gH subtraction.
inline Interval integrate_projection(const DyadicBasis1D& basis, const IvFun1D& f, double t0,
                                     double t1) {
    if (t0 > t1) throw std::invalid_argument("integrate_projection: need t0 <= t1");
    const GHDecomposition d = gh_decompose(basis, f);
    double base = 0.0, plus = 0.0, minus = 0.0;
    for (std::size_t n = 0; n < d.alphas.size(); ++n)
        base += d.alphas[n] * basis.basis_integral(n, t0, t1);
    for (std::size_t n : d.nonneg_idx)
        plus += (d.betas[n] - d.alphas[n]) * basis.basis_integral(n, t0, t1);
    for (std::size_t n : d.neg_idx)
        minus += std::abs(d.betas[n] - d.alphas[n]) * basis.basis_integral(n, t0, t1);
    return Interval(base) + gh_sub(Interval(0.0, plus), Interval(0.0, minus));
}

} // namespace ivc
