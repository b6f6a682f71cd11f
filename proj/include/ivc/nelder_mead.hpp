#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ivc {

/// Deterministic Nelder-Mead for box-constrained minimization. Candidate
/// points are clamped into the box before evaluation and stored clamped, so
/// the simplex never leaves the box. Coordinates whose box side has zero
/// width are held fixed.
struct NelderMeadOptions {
    double f_tol = 1e-14;      // stop when f_worst - f_best falls below this
    double x_tol = 1e-10;      // stop when the simplex diameter falls below this
    int max_evals = 5000;
    double initial_step = 0.1; // fraction of the box width per coordinate
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int evals = 0;
};

inline NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                                    std::span<const double> lo, std::span<const double> hi,
                                    std::span<const double> start,
                                    const NelderMeadOptions& opts = {}) {
    const std::size_t dim = lo.size();
    if (hi.size() != dim || start.size() != dim)
        throw std::invalid_argument("nelder_mead: dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i)
        if (!(lo[i] <= hi[i])) throw std::invalid_argument("nelder_mead: invalid box");

    auto clamp = [&](std::vector<double> x) {
        for (std::size_t i = 0; i < dim; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
        return x;
    };

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return objective(x);
    };

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < dim; ++i)
        if (hi[i] > lo[i]) active.push_back(i);

    const std::vector<double> origin = clamp({start.begin(), start.end()});
    if (active.empty()) {
        // fully degenerate box: single admissible point
        const double f0 = eval(origin);
        return {origin, f0, evals};
    }

    // vertices: origin plus one step per active coordinate, stepping into the box
    std::vector<std::vector<double>> xs;
    xs.push_back(origin);
    for (std::size_t i : active) {
        std::vector<double> v = origin;
        double step = opts.initial_step * (hi[i] - lo[i]);
        if (v[i] + step > hi[i]) step = -step;
        v[i] += step;
        xs.push_back(clamp(std::move(v)));
    }
    const std::size_t m = xs.size(); // active.size() + 1
    std::vector<double> fs(m);
    for (std::size_t i = 0; i < m; ++i) fs[i] = eval(xs[i]);

    auto order = [&]() {
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (fs[a] != fs[b]) return fs[a] < fs[b];
            return xs[a] < xs[b]; // lexicographic tie-break keeps ordering deterministic
        });
        std::vector<std::vector<double>> xs2(m);
        std::vector<double> fs2(m);
        for (std::size_t i = 0; i < m; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    while (evals < opts.max_evals) {
        order();
        if (fs[m - 1] - fs[0] <= opts.f_tol) break;
        double diameter = 0.0;
        for (std::size_t i = 1; i < m; ++i)
            for (std::size_t c : active)
                diameter = std::max(diameter, std::abs(xs[i][c] - xs[0][c]));
        if (diameter <= opts.x_tol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t c = 0; c < dim; ++c) centroid[c] += xs[i][c];
        for (std::size_t c = 0; c < dim; ++c) centroid[c] /= static_cast<double>(m - 1);

        auto along = [&](double coef) {
            std::vector<double> p(dim);
            for (std::size_t c = 0; c < dim; ++c)
                p[c] = centroid[c] + coef * (centroid[c] - xs[m - 1][c]);
            return clamp(std::move(p));
        };

        const std::vector<double> reflected = along(kReflect);
        const double f_r = eval(reflected);
        if (f_r < fs[0]) {
            const std::vector<double> expanded = along(kReflect * kExpand);
            const double f_e = eval(expanded);
            if (f_e < f_r) {
                xs[m - 1] = expanded;
                fs[m - 1] = f_e;
            } else {
                xs[m - 1] = reflected;
                fs[m - 1] = f_r;
            }
        } else if (f_r < fs[m - 2]) {
            xs[m - 1] = reflected;
            fs[m - 1] = f_r;
        } else {
            const bool outside = f_r < fs[m - 1];
            const std::vector<double> contracted = along(outside ? kReflect * kContract : -kContract);
            const double f_c = eval(contracted);
            if (f_c < (outside ? f_r : fs[m - 1])) {
                xs[m - 1] = contracted;
                fs[m - 1] = f_c;
            } else {
                for (std::size_t i = 1; i < m; ++i) {
                    for (std::size_t c = 0; c < dim; ++c)
                        xs[i][c] = xs[0][c] + kShrink * (xs[i][c] - xs[0][c]);
                    xs[i] = clamp(std::move(xs[i]));
                    fs[i] = eval(xs[i]);
                }
            }
        }
    }
    order();
    return {xs[0], fs[0], evals};
}

} // namespace ivc
