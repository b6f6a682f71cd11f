#pragma once

#include <cmath>
#include <vector>

#include "ivc/interval.hpp"
#include "ivc/inverse.hpp"
#include "ivc/ivfun.hpp"
#include "ivc/volterra.hpp"

namespace ivc::examples {

/// Example 1 lives on [0, 1] with kernel (sqrt(2) t - s) u and the known
/// solution [cos t - t/2, cos t + t/2]; its forcing term is manufactured so
/// that this is exact. Example 2 uses the closed-form forcing
/// [2t + 1/8, 2t + 3/8] and kernel (2 cos t + cos s) arctan(u).

inline IvFun1D example1_exact_solution() {
    return IvFun1D(
        0.0, 1.0, [](double t) { return std::cos(t) - 0.5 * t; },
        [](double t) { return std::cos(t) + 0.5 * t; });
}

inline Kernel example1_kernel() {
    const std::vector<double> params{std::sqrt(2.0), -1.0};
    return make_kernel("affine-product", params);
}

/// Forcing manufactured on the dyadic grid of `level` + 3.
inline IvFun1D example1_forcing(int level) {
    return manufacture_forcing(example1_exact_solution(), example1_kernel(), level);
}

inline VolterraProblem example1_problem(int level) {
    return VolterraProblem(0.0, 1.0, example1_forcing(level), example1_kernel());
}

inline ParamFamily example1_family(int level) {
    return ParamFamily({Interval(1.0, 3.0), Interval(-1.5, -0.5)}, "affine-product", 0.0, 1.0,
                       example1_forcing(level));
}

inline IvFun1D example2_forcing() {
    return IvFun1D(
        0.0, 1.0, [](double t) { return 2.0 * t + 0.125; },
        [](double t) { return 2.0 * t + 0.375; });
}

inline VolterraProblem example2_problem() {
    const std::vector<double> params{2.0, 1.0};
    return VolterraProblem(0.0, 1.0, example2_forcing(), make_kernel("cos-arctan", params));
}

inline ParamFamily example2_family() {
    return ParamFamily({Interval(1.5, 2.5), Interval(0.5, 1.5)}, "cos-arctan", 0.0, 1.0,
                       example2_forcing());
}

} // namespace ivc::examples
