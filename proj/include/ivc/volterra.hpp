#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ivc/interval.hpp"
#include "ivc/ivfun.hpp"
#include "ivc/schauder.hpp"

namespace ivc {

/// Named, parameterized kernel K(t, s, u) from the built-in registry, with
/// its declared Lipschitz constant in the interval argument.
struct Kernel {
    std::string name;
    std::vector<double> params;
    double lipschitz = 0.0;
    std::function<Interval(double, double, const Interval&)> eval;

    Interval operator()(double t, double s, const Interval& u) const { return eval(t, s, u); }
};

/// Registry entries:
///   "affine-product"  K(t,s,u) = (c1*t + c2*s) * u,                  L = |c1| + |c2|
///   "cos-arctan"      K(t,s,u) = (c1*cos t + c2*cos s) * arctan(u),  L = |c1| + |c2|
/// where arctan(u) = [arctan u_lo, arctan u_hi]. The declared L values are
/// Lipschitz constants for domains contained in [-1, 1].
inline Kernel make_kernel(const std::string& name, std::span<const double> params) {
    if (params.size() != 2)
        throw std::invalid_argument("make_kernel: registry kernels take 2 parameters");
    const double c1 = params[0];
    const double c2 = params[1];
    if (!std::isfinite(c1) || !std::isfinite(c2))
        throw std::invalid_argument("make_kernel: parameters must be finite");
    Kernel k;
    k.name = name;
    k.params = {c1, c2};
    k.lipschitz = std::abs(c1) + std::abs(c2);
    if (name == "affine-product") {
        k.eval = [c1, c2](double t, double s, const Interval& u) {
            return (c1 * t + c2 * s) * u;
        };
    } else if (name == "cos-arctan") {
        k.eval = [c1, c2](double t, double s, const Interval& u) {
            const Interval atan_u(std::atan(u.lo()), std::atan(u.hi()));
            return (c1 * std::cos(t) + c2 * std::cos(s)) * atan_u;
        };
    } else {
        throw std::invalid_argument("make_kernel: unknown kernel '" + name + "'");
    }
    return k;
}

/// Volterra interval integral equation X(t) = G(t) + int_a^t K(t, s, X(s)) ds.
struct VolterraProblem {
    double a, b;
    IvFun1D forcing;
    Kernel kernel;

    VolterraProblem(double a_, double b_, IvFun1D g, Kernel k)
        : a(a_), b(b_), forcing(std::move(g)), kernel(std::move(k)) {
        if (!(a < b)) throw std::invalid_argument("VolterraProblem: need a < b");
        if (forcing.domain_lo() != a || forcing.domain_hi() != b)
            throw std::invalid_argument("VolterraProblem: forcing domain mismatch");
        if (!std::isfinite(kernel.lipschitz) || kernel.lipschitz < 0.0)
            throw std::invalid_argument("VolterraProblem: Lipschitz constant must be finite, >= 0");
    }
};

/// One application of the projected integral operator at dyadic level k:
/// samples Z(t,s) = K(t,s,X(s)) on the q x q grid, projects it (bilinear
/// endpoint interpolation), and returns the grid function
///   t_i -> G(t_i) + int_a^{t_i} P_n(Z)(t_i, s) ds
/// with the slice integrals computed exactly.
inline IvFun1D apply_phi(const VolterraProblem& problem, const IvFun1D& x, int level) {
    if (x.domain_lo() != problem.a || x.domain_hi() != problem.b)
        throw std::invalid_argument("apply_phi: iterate domain mismatch");
    const DyadicBasis2D basis2(level, problem.a, problem.b);
    const auto nodes = basis2.axis().ascending_nodes();
    const std::size_t q = nodes.size();

    std::vector<double> zlo(q * q), zhi(q * q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t l = 0; l < q; ++l) {
            const Interval xs = x(nodes[l]);
            Interval v;
            try {
                v = problem.kernel(nodes[i], nodes[l], xs);
            } catch (const validity_error& e) {
                throw validity_error("apply_phi: kernel returned an invalid interval at (t, s) = (" +
                                     std::to_string(nodes[i]) + ", " + std::to_string(nodes[l]) +
                                     "): " + e.what());
            }
            zlo[i * q + l] = v.lo();
            zhi[i * q + l] = v.hi();
        }
    }
    const IvFun2D projected =
        IvFun2D::grid(problem.a, problem.b, q, std::move(zlo), std::move(zhi));

    std::vector<double> out_lo(q), out_hi(q);
    for (std::size_t i = 0; i < q; ++i) {
        const Interval g = problem.forcing(nodes[i]);
        const Interval integral = slice_integrate(projected, nodes[i], problem.a, nodes[i]);
        const Interval v = g + integral;
        out_lo[i] = v.lo();
        out_hi[i] = v.hi();
    }
    return IvFun1D::grid(problem.a, problem.b, std::move(out_lo), std::move(out_hi));
}

/// Stopping rule for the Picard iteration: either a fixed number of operator
/// applications, or successive-distance tolerance eps within max_iter steps.
struct PicardOptions {
    double eps = 1e-12;
    int max_iter = 100;
    std::optional<int> fixed_iterations;
};

/// Picard iteration outcome. Non-convergence is reported, never thrown:
/// `converged` is false and `solution` still carries the last iterate.
struct ForwardResult {
    IvFun1D solution;
    int iterations = 0;
    std::vector<double> deltas;  // deltas[j-1] = H(X_j, X_{j-1})
    bool converged = false;

    double last_delta() const {
        return deltas.empty() ? std::numeric_limits<double>::quiet_NaN() : deltas.back();
    }
};

/// Iterates X_j = Phi(X_{j-1}) from X0 (default: the forcing term G).
/// Successive distances are computed at the dyadic nodes, where the sup over
/// the domain is attained for same-grid piecewise-linear iterates.
inline ForwardResult solve_forward(const VolterraProblem& problem, int level,
                                   const PicardOptions& opts = {},
                                   const std::optional<IvFun1D>& x0 = std::nullopt) {
    if (!opts.fixed_iterations && opts.eps <= 0.0)
        throw std::invalid_argument("solve_forward: eps must be positive");
    if (opts.fixed_iterations && *opts.fixed_iterations < 1)
        throw std::invalid_argument("solve_forward: fixed iteration count must be >= 1");
    const DyadicBasis1D basis(level, problem.a, problem.b);
    IvFun1D current = project_interval(basis, x0 ? *x0 : problem.forcing);
    const EvalGrid nodes(basis.ascending_nodes());

    ForwardResult result{current, 0, {}, false};
    const int limit = opts.fixed_iterations ? *opts.fixed_iterations : opts.max_iter;
    for (int j = 1; j <= limit; ++j) {
        IvFun1D next = apply_phi(problem, current, level);
        const double delta = metric_h(next, current, nodes);
        result.deltas.push_back(delta);
        current = std::move(next);
        result.iterations = j;
        if (!opts.fixed_iterations && delta < opts.eps) {
            result.converged = true;
            break;
        }
    }
    if (opts.fixed_iterations) result.converged = true;
    result.solution = std::move(current);
    return result;
}

/// Iterate-wise Lipschitz constants of the Volterra operator,
/// alpha_n = L^n (b-a)^n / n!, with alpha_0 = 1 prepended.
inline std::vector<double> caccioppoli_alphas(double lipschitz, double a, double b, int n_max) {
    if (lipschitz < 0.0 || !std::isfinite(lipschitz))
        throw std::invalid_argument("caccioppoli_alphas: need finite L >= 0");
    if (!(a < b)) throw std::invalid_argument("caccioppoli_alphas: need a < b");
    if (n_max < 1) throw std::invalid_argument("caccioppoli_alphas: need n_max >= 1");
    std::vector<double> alphas(static_cast<std::size_t>(n_max) + 1);
    alphas[0] = 1.0;
    const double factor = lipschitz * (b - a);
    for (int n = 1; n <= n_max; ++n)
        alphas[static_cast<std::size_t>(n)] =
            alphas[static_cast<std::size_t>(n) - 1] * factor / static_cast<double>(n);
    return alphas;
}

/// Distance-to-fixed-point bound
///   d(x, x*) <= (sum_{k=0}^{n-1} alpha_k) / (1 - alpha_n) * (d(x, y) + eps),
/// valid for any n with alpha_n < 1 (alphas[0] must be 1).
inline double perturbed_collage_bound(std::span<const double> alphas, int n, double dxy,
                                      double eps) {
    if (alphas.empty() || alphas[0] != 1.0)
        throw std::invalid_argument("perturbed_collage_bound: alphas[0] must be 1");
    if (n < 1 || static_cast<std::size_t>(n) >= alphas.size())
        throw std::invalid_argument("perturbed_collage_bound: n out of range");
    if (alphas[static_cast<std::size_t>(n)] >= 1.0)
        throw std::invalid_argument("perturbed_collage_bound: alpha_n must be < 1");
    if (dxy < 0.0 || eps < 0.0)
        throw std::invalid_argument("perturbed_collage_bound: need dxy, eps >= 0");
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += alphas[static_cast<std::size_t>(k)];
    return sum / (1.0 - alphas[static_cast<std::size_t>(n)]) * (dxy + eps);
}

/// Limit form of the bound for the Volterra alphas:
/// H(X, X*) <= e^{L(b-a)} (H(X, Y) + eps).
inline double collage_certificate(const VolterraProblem& problem, const IvFun1D& x,
                                  const IvFun1D& y, double eps, const EvalGrid& grid) {
    if (eps < 0.0) throw std::invalid_argument("collage_certificate: need eps >= 0");
    const double amplification = std::exp(problem.kernel.lipschitz * (problem.b - problem.a));
    return amplification * (metric_h(x, y, grid) + eps);
}

} // namespace ivc
