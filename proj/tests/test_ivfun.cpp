#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "ivc/interval.hpp"
#include "ivc/ivfun.hpp"
#include "oracles.hpp"

using Catch::Approx;
using ivc::EvalGrid;
using ivc::Interval;
using ivc::IvFun1D;
using ivc::IvFun2D;

namespace {
IvFun1D linear_pair() {
    return IvFun1D(
        0.0, 1.0, [](double t) { return t; }, [](double t) { return 2.0 * t; });
}
} // namespace

TEST_CASE("evaluation of interval-valued functions") {
    const IvFun1D f = linear_pair();
    REQUIRE(f(0.5) == Interval(0.5, 1.0));

    const IvFun1D x(
        0.0, 1.0, [](double t) { return std::cos(t) - 0.5 * t; },
        [](double t) { return std::cos(t) + 0.5 * t; });
    REQUIRE(x(0.0) == Interval(1.0, 1.0));
    REQUIRE(x(1.0).lo() == Approx(0.040302).margin(1e-6));
    REQUIRE(x(1.0).hi() == Approx(1.040302).margin(1e-6));

    REQUIRE_THROWS_AS(f(1.5), std::domain_error);
    REQUIRE_THROWS_AS(f(-0.1), std::domain_error);

    const IvFun1D crossing(
        0.0, 1.0, [](double t) { return t; }, [](double t) { return 1.0 - t; });
    REQUIRE_NOTHROW(crossing(0.2));
    REQUIRE_THROWS_AS(crossing(0.8), ivc::validity_error);
}

TEST_CASE("grid construction and node-exact evaluation") {
    REQUIRE_THROWS_AS(IvFun1D::grid(0, 1, {0, 0, 0, 0}, {1, 1, 1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(IvFun1D::grid(0, 1, {0, 2, 0}, {1, 1, 1}), ivc::validity_error);

    std::mt19937 gen(42);
    for (int trial = 0; trial < 50; ++trial) {
        const IvFun1D g = oracle::random_grid_fun(gen, 3);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Interval v = g(g.node(i));
            REQUIRE(v.lo() == g.lower_values()[i]);
            REQUIRE(v.hi() == g.upper_values()[i]);
        }
    }
}

TEST_CASE("metric H on evaluation grids") {
    const EvalGrid grid = EvalGrid::uniform(0.0, 1.0, 1025);
    const IvFun1D f = linear_pair();
    REQUIRE(ivc::metric_h(f, f, grid) == 0.0);

    const IvFun1D c0(
        0.0, 1.0, [](double) { return 0.0; }, [](double) { return 1.0; });
    const IvFun1D c1(
        0.0, 1.0, [](double) { return 0.0; }, [](double) { return 2.0; });
    REQUIRE(ivc::metric_h(c0, c1, grid) == 1.0);

    const double shift = 0.375;
    const IvFun1D base(
        0.0, 1.0, [](double t) { return t; }, [](double t) { return t; });
    const IvFun1D moved(
        0.0, 1.0, [=](double t) { return t + shift; }, [=](double t) { return t + shift; });
    REQUIRE(ivc::metric_h(base, moved, grid) == shift);

    const IvFun1D other_domain(
        0.0, 2.0, [](double t) { return t; }, [](double t) { return t; });
    REQUIRE_THROWS_AS(ivc::metric_h(base, other_domain, grid), std::invalid_argument);
}

TEST_CASE("endpoint-wise integration") {
    const IvFun1D f = linear_pair();
    const Interval whole = ivc::integrate(f, 0.0, 1.0);
    REQUIRE(whole.lo() == Approx(0.5).margin(1e-12));
    REQUIRE(whole.hi() == Approx(1.0).margin(1e-12));

    REQUIRE(ivc::integrate(f, 0.3, 0.3) == Interval(0, 0));
    REQUIRE_THROWS_AS(ivc::integrate(f, 0.7, 0.3), std::invalid_argument);

    const IvFun1D c(
        0.0, 1.0, [](double) { return 2.5; }, [](double) { return 2.5; });
    const Interval ic = ivc::integrate(c, 0.0, 1.0);
    REQUIRE(ic.lo() == Approx(2.5).margin(1e-12));
    REQUIRE(ic.hi() == Approx(2.5).margin(1e-12));

    // analytic adaptive quadrature against an independent composite rule
    const IvFun1D smooth(
        0.0, 1.0, [](double t) { return std::sin(3.0 * t); },
        [](double t) { return std::sin(3.0 * t) + std::exp(t); });
    const Interval is = ivc::integrate(smooth, 0.1, 0.9);
    REQUIRE(is.lo() ==
            Approx(oracle::simpson([](double t) { return std::sin(3.0 * t); }, 0.1, 0.9))
                .margin(1e-10));
    REQUIRE(is.hi() == Approx(oracle::simpson(
                           [](double t) { return std::sin(3.0 * t) + std::exp(t); }, 0.1, 0.9))
                           .margin(1e-10));

    // grid quadrature with partial end segments is exact for hat data
    const IvFun1D hat = IvFun1D::grid(0.0, 1.0, {0, 0, 0}, {0, 1, 0});
    const Interval part = ivc::integrate(hat, 0.25, 0.75);
    REQUIRE(part.lo() == 0.0);
    // area under the tent between 0.25 and 0.75: 2 * (1/8 * (0.5 + 1))
    REQUIRE(part.hi() == Approx(0.375).margin(1e-15));
}

TEST_CASE("slices of bivariate functions integrate in s") {
    const IvFun2D z(
        0.0, 1.0, [](double, double) { return 0.0; }, [](double t, double s) { return t * s; });
    const Interval v = ivc::slice_integrate(z, 1.0, 0.0, 1.0);
    REQUIRE(v.lo() == Approx(0.0).margin(1e-12));
    REQUIRE(v.hi() == Approx(0.5).margin(1e-12));
    REQUIRE(ivc::slice_integrate(z, 0.4, 0.7, 0.7) == Interval(0, 0));

    const IvFun2D c(
        0.0, 1.0, [](double, double) { return 1.0; }, [](double, double) { return 2.0; });
    const Interval vc = ivc::slice_integrate(c, 0.3, 0.0, 0.5);
    REQUIRE(vc.lo() == Approx(0.5).margin(1e-12));
    REQUIRE(vc.hi() == Approx(1.0).margin(1e-12));

    // bilinear grid: slice at any fixed t is piecewise linear in s, integrated exactly
    std::vector<double> lows(9, 0.0), highs(9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t l = 0; l < 3; ++l) highs[i * 3 + l] = (1.0 + i) * (0.5 + l);
    const IvFun2D zg = IvFun2D::grid(0.0, 1.0, 3, lows, highs);
    // at t = 0.25 the row is the average of rows 0 and 1 scaled by 0.5/0.5
    const Interval vs = ivc::slice_integrate(zg, 0.25, 0.0, 1.0);
    const double r0 = 0.5 * (0.5 + 1.5) * 0.5 + 0.5 * (1.5 + 2.5) * 0.5;
    const double r1 = 0.5 * (1.0 + 3.0) * 0.5 + 0.5 * (3.0 + 5.0) * 0.5;
    REQUIRE(vs.hi() == Approx(0.5 * (r0 + r1)).margin(1e-14));
}

TEST_CASE("pointwise gH difference of functions") {
    const EvalGrid grid = EvalGrid::uniform(0.0, 1.0, 257);
    const IvFun1D f = linear_pair();
    const IvFun1D zero_fun = ivc::gh_sub_fun(f, f);
    for (double t : grid.points()) REQUIRE(zero_fun(t) == Interval(0, 0));

    // [0, t] gh- [0, 2t] = [-t, 0]
    const IvFun1D narrow(
        0.0, 1.0, [](double) { return 0.0; }, [](double t) { return t; });
    const IvFun1D wide(
        0.0, 1.0, [](double) { return 0.0; }, [](double t) { return 2.0 * t; });
    const IvFun1D diff = ivc::gh_sub_fun(narrow, wide);
    for (double t : grid.points()) {
        REQUIRE(diff(t).lo() == Approx(-t).margin(1e-15));
        REQUIRE(diff(t).hi() == 0.0);
    }

    // with upper(wide) >= upper(narrow), integration commutes with gh-
    const Interval lhs = ivc::integrate(ivc::gh_sub_fun(wide, narrow), 0.0, 1.0);
    const Interval rhs =
        ivc::gh_sub(ivc::integrate(wide, 0.0, 1.0), ivc::integrate(narrow, 0.0, 1.0));
    REQUIRE(lhs.lo() == Approx(rhs.lo()).margin(1e-12));
    REQUIRE(lhs.hi() == Approx(rhs.hi()).margin(1e-12));
    REQUIRE(rhs.lo() == Approx(0.0).margin(1e-12));
    REQUIRE(rhs.hi() == Approx(0.5).margin(1e-12));
}

TEST_CASE("integral difference bound and additivity on random grid pairs") {
    std::mt19937 gen(31415);
    const EvalGrid nodes = EvalGrid::uniform(0.0, 1.0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const IvFun1D f = oracle::random_grid_fun(gen, 3);
        const IvFun1D h = oracle::random_grid_fun(gen, 3);

        // D(int f, int h) <= (b - a) H(f, h)
        const double lhs = ivc::dist(ivc::integrate(f, 0, 1), ivc::integrate(h, 0, 1));
        REQUIRE(lhs <= 1.0 * ivc::metric_h(f, h, nodes));

        // additivity of the integral under pointwise sum
        std::vector<double> lo(f.size()), hi(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            lo[i] = f.lower_values()[i] + h.lower_values()[i];
            hi[i] = f.upper_values()[i] + h.upper_values()[i];
        }
        const IvFun1D sum = IvFun1D::grid(0, 1, std::move(lo), std::move(hi));
        const Interval direct = ivc::integrate(sum, 0, 1);
        const Interval split = ivc::integrate(f, 0, 1) + ivc::integrate(h, 0, 1);
        REQUIRE(ivc::dist(direct, split) <= 1e-12);
    }
}

TEST_CASE("metric H satisfies the metric axioms on the grid") {
    std::mt19937 gen(2024);
    const EvalGrid grid = EvalGrid::uniform(0.0, 1.0, 129);
    // dyadic node values keep every distance exact, so the axioms hold with
    // zero tolerance
    auto dyadic_grid_fun = [&gen]() {
        std::vector<double> lo(9), hi(9);
        for (std::size_t i = 0; i < 9; ++i) {
            const double x = oracle::dyadic_value(gen);
            const double y = oracle::dyadic_value(gen);
            lo[i] = std::min(x, y);
            hi[i] = std::max(x, y);
        }
        return IvFun1D::grid(0.0, 1.0, std::move(lo), std::move(hi));
    };
    for (int trial = 0; trial < 50; ++trial) {
        const IvFun1D f = dyadic_grid_fun();
        const IvFun1D g = dyadic_grid_fun();
        const IvFun1D h = dyadic_grid_fun();
        REQUIRE(ivc::metric_h(f, g, grid) == ivc::metric_h(g, f, grid));
        REQUIRE(ivc::metric_h(f, f, grid) == 0.0);
        REQUIRE(ivc::metric_h(f, h, grid) <=
                ivc::metric_h(f, g, grid) + ivc::metric_h(g, h, grid));
    }
}

TEST_CASE("evaluation grids validate their points") {
    REQUIRE_THROWS_AS(EvalGrid({0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(EvalGrid({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(EvalGrid({0.0, 0.7, 0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(EvalGrid::uniform(1.0, 1.0, 8), std::invalid_argument);
    const EvalGrid g = EvalGrid::uniform(0.25, 0.75, 11);
    REQUIRE(g.front() == 0.25);
    REQUIRE(g.back() == 0.75);
    REQUIRE(g.size() == 11);
}

TEST_CASE("2D grid validity and evaluation") {
    REQUIRE_THROWS_AS(IvFun2D::grid(0, 1, 3, std::vector<double>(9, 2.0),
                                    std::vector<double>(9, 1.0)),
                      ivc::validity_error);
    const IvFun2D z(
        0.0, 1.0, [](double t, double s) { return t + s; },
        [](double t, double s) { return t + s + 1.0; });
    REQUIRE(z(0.25, 0.5) == Interval(0.75, 1.75));
    REQUIRE_THROWS_AS(z(1.5, 0.5), std::domain_error);
}
