#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ivc/interval.hpp"
#include "ivc/ivfun.hpp"
#include "ivc/nelder_mead.hpp"
#include "ivc/schauder.hpp"
#include "ivc/volterra.hpp"

namespace ivc {

/// Parameterized family of Volterra problems over a compact box: the kernel
/// parameters are the optimization variables, the forcing term and domain are
/// shared. L_lambda = |c1| + |c2| for both registry kernels, so the uniform
/// Lipschitz bound over the box is finite and the collage approach is stable.
class ParamFamily {
public:
    ParamFamily(std::vector<Interval> box, std::string kernel_name, double a, double b,
                IvFun1D forcing)
        : box_(std::move(box)), kernel_name_(std::move(kernel_name)), a_(a), b_(b),
          forcing_(std::move(forcing)) {
        if (box_.empty()) throw std::invalid_argument("ParamFamily: empty parameter box");
        if (box_.size() > 4)
            throw std::invalid_argument("ParamFamily: at most 4 parameters supported");
        if (!(a_ < b_)) throw std::invalid_argument("ParamFamily: need a < b");
        make_kernel(kernel_name_, std::vector<double>(box_.size(), 0.0)); // validates the name
    }

    const std::vector<Interval>& box() const { return box_; }
    const std::string& kernel_name() const { return kernel_name_; }
    double domain_lo() const { return a_; }
    double domain_hi() const { return b_; }
    const IvFun1D& forcing() const { return forcing_; }

    bool contains(std::span<const double> lambda) const {
        if (lambda.size() != box_.size()) return false;
        for (std::size_t i = 0; i < box_.size(); ++i)
            if (lambda[i] < box_[i].lo() || lambda[i] > box_[i].hi()) return false;
        return true;
    }

    /// Instantiates the Volterra problem at a parameter vector.
    VolterraProblem build(std::span<const double> lambda) const {
        if (!contains(lambda))
            throw std::invalid_argument("ParamFamily: lambda outside the parameter box");
        return VolterraProblem(a_, b_, forcing_, make_kernel(kernel_name_, lambda));
    }

    double lipschitz_at(std::span<const double> lambda) const {
        double l = 0.0;
        for (double v : lambda) l += std::abs(v);
        return l;
    }

    /// sup of L_lambda over the box.
    double lipschitz_max() const {
        double l = 0.0;
        for (const Interval& side : box_) l += std::max(std::abs(side.lo()), std::abs(side.hi()));
        return l;
    }

private:
    std::vector<Interval> box_;
    std::string kernel_name_;
    double a_, b_;
    IvFun1D forcing_;
};

/// Y_{lambda,r}(t) = G_lambda(t) + int_a^t P_r(K_lambda(t, s, X~(s))) ds,
/// i.e. exactly one application of the projected operator to the target.
inline IvFun1D build_y(const ParamFamily& family, std::span<const double> lambda,
                       const IvFun1D& target, int level) {
    return apply_phi(family.build(lambda), target, level);
}

/// Collage objective H(X~, Y_{lambda,r}) evaluated on the grid.
inline double objective(const ParamFamily& family, std::span<const double> lambda,
                        const IvFun1D& target, int level, const EvalGrid& grid) {
    return metric_h(target, build_y(family, lambda, target, level), grid);
}

/// Instantiated stability constant: rho <= e^{L_max (b-a)}.
inline double stability_rho(const ParamFamily& family) {
    return std::exp(family.lipschitz_max() * (family.domain_hi() - family.domain_lo()));
}

struct MinimizeOptions {
    NelderMeadOptions nm;
};

struct InverseResult {
    std::vector<double> lambda_star;
    double objective = 0.0;
    int level = 0;              // projection level k (order r = q^2, q = 2^k + 1)
    long evals = 0;
    int starts = 0;
    bool no_descent = false;    // no start improved on the box-center objective
    double rho_bound = 0.0;     // e^{L_max (b-a)}
    double eps_proj = 0.0;      // H(Y_k, Y_{k+2}) at lambda*, projection residual estimate
    double certificate = 0.0;   // e^{L_{lambda*} (b-a)} (objective + eps_proj)
};

/// Deterministic multi-start Nelder-Mead minimization of the collage
/// objective over the box: starts at the box center and at every corner,
/// best result wins, ties broken by lexicographically smallest lambda.
inline InverseResult minimize(const ParamFamily& family, const IvFun1D& target, int level,
                              const EvalGrid& grid, const MinimizeOptions& opts = {}) {
    const std::size_t dim = family.box().size();
    std::vector<double> lo(dim), hi(dim), center(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        lo[i] = family.box()[i].lo();
        hi[i] = family.box()[i].hi();
        center[i] = 0.5 * (lo[i] + hi[i]);
    }

    long evals = 0;
    auto f = [&](std::span<const double> lambda) {
        ++evals;
        return objective(family, lambda, target, level, grid);
    };

    InverseResult result;
    NelderMeadResult best;
    const bool single_point = std::equal(lo.begin(), lo.end(), hi.begin());
    if (single_point) {
        best.x = center;
        best.f = f(center);
        result.starts = 1;
    } else {
        std::vector<std::vector<double>> starts;
        starts.push_back(center);
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
            std::vector<double> corner(dim);
            for (std::size_t i = 0; i < dim; ++i) corner[i] = (mask >> i) & 1 ? hi[i] : lo[i];
            if (corner != center) starts.push_back(std::move(corner));
        }
        const double f_center = f(center);
        bool have_best = false;
        for (const auto& start : starts) {
            NelderMeadResult r = nelder_mead(f, lo, hi, start, opts.nm);
            if (!have_best || r.f < best.f || (r.f == best.f && r.x < best.x)) {
                best = std::move(r);
                have_best = true;
            }
        }
        result.starts = static_cast<int>(starts.size());
        result.no_descent = !(best.f < f_center);
    }

    result.lambda_star = best.x;
    result.objective = best.f;
    result.level = level;
    result.evals = evals;
    result.rho_bound = stability_rho(family);
    const IvFun1D y_k = build_y(family, best.x, target, level);
    const IvFun1D y_fine = build_y(family, best.x, target, level + 2);
    result.eps_proj = metric_h(y_k, y_fine, grid);
    const double l_star = family.lipschitz_at(best.x);
    result.certificate = std::exp(l_star * (family.domain_hi() - family.domain_lo())) *
                         (result.objective + result.eps_proj);
    return result;
}

/// Builds the forcing term that makes `exact` the solution of the equation:
/// G(t) = exact(t) endpoint-minus int_a^t K(t, s, exact(s)) ds, represented on
/// the dyadic grid of level `level` + 3 with the node integrals computed by
/// adaptive quadrature. Requires width(exact) >= width(integral) pointwise.
inline IvFun1D manufacture_forcing(const IvFun1D& exact, const Kernel& kernel, int level) {
    const double a = exact.domain_lo();
    const double b = exact.domain_hi();
    const DyadicBasis1D fine(level + 3, a, b);
    const auto nodes = fine.ascending_nodes();
    std::vector<double> g_lo(nodes.size()), g_hi(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double t = nodes[j];
        Interval integral(0.0, 0.0);
        if (t > a) {
            const IvFun1D slice(
                a, b, [&kernel, &exact, t](double s) { return kernel(t, s, exact(s)).lo(); },
                [&kernel, &exact, t](double s) { return kernel(t, s, exact(s)).hi(); });
            integral = integrate(slice, a, t);
        }
        const Interval x = exact(t);
        g_lo[j] = x.lo() - integral.lo();
        g_hi[j] = x.hi() - integral.hi();
        if (g_lo[j] > g_hi[j])
            throw validity_error(
                "manufacture_forcing: width condition violated at t = " + std::to_string(t) +
                " (solution width " + std::to_string(x.width()) + " < integral width " +
                std::to_string(integral.width()) + ")");
    }
    return IvFun1D::grid(a, b, std::move(g_lo), std::move(g_hi));
}

} // namespace ivc
