#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ivc/examples.hpp"
#include "ivc/inverse.hpp"
#include "ivc/ivfun.hpp"
#include "oracles.hpp"

using Catch::Approx;
using ivc::EvalGrid;
using ivc::Interval;
using ivc::IvFun1D;
using ivc::ParamFamily;

namespace {
const EvalGrid& fine_grid() {
    static const EvalGrid grid = EvalGrid::uniform(0.0, 1.0, 1025);
    return grid;
}
} // namespace

TEST_CASE("family construction and instantiation") {
    const ParamFamily family = ivc::examples::example1_family(3);
    REQUIRE(family.box().size() == 2);
    const std::vector<double> inside{1.5, -1.0};
    REQUIRE(family.contains(inside));
    const std::vector<double> outside{0.5, -1.0};
    REQUIRE_FALSE(family.contains(outside));
    REQUIRE_THROWS_AS(family.build(outside), std::invalid_argument);
    REQUIRE(family.build(inside).kernel.lipschitz == 2.5);
    REQUIRE(family.lipschitz_max() == 4.5);

    REQUIRE_THROWS_AS(ParamFamily({}, "affine-product", 0.0, 1.0,
                                  ivc::examples::example2_forcing()),
                      std::invalid_argument);
}

TEST_CASE("build_y matches one operator application, node for node") {
    const ParamFamily family = ivc::examples::example1_family(3);
    const std::vector<double> lambda{1.7, -0.8};
    const IvFun1D target = ivc::examples::example1_exact_solution();
    const IvFun1D via_family = ivc::build_y(family, lambda, target, 3);
    const IvFun1D via_operator = ivc::apply_phi(family.build(lambda), target, 3);
    for (std::size_t i = 0; i < via_family.size(); ++i) {
        REQUIRE(via_family.lower_values()[i] == via_operator.lower_values()[i]);
        REQUIRE(via_family.upper_values()[i] == via_operator.upper_values()[i]);
    }
}

TEST_CASE("the collage residual at the generating parameters is tiny") {
    // converged targets leave almost no residual at lambda_0
    const ParamFamily fam1 = ivc::examples::example1_family(3);
    const ivc::ForwardResult run1 =
        ivc::solve_forward(ivc::examples::example1_problem(3), 3, {.eps = 1e-12, .max_iter = 60});
    REQUIRE(run1.converged);
    const std::vector<double> lambda1{std::sqrt(2.0), -1.0};
    REQUIRE(ivc::objective(fam1, lambda1, run1.solution, 3, fine_grid()) <= 1e-6);

    const ParamFamily fam2 = ivc::examples::example2_family();
    const ivc::ForwardResult run2 =
        ivc::solve_forward(ivc::examples::example2_problem(), 3, {.eps = 1e-12, .max_iter = 60});
    REQUIRE(run2.converged);
    const std::vector<double> lambda2{2.0, 1.0};
    REQUIRE(ivc::objective(fam2, lambda2, run2.solution, 3, fine_grid()) <= 1e-6);

    // a box corner far from lambda_0 fits strictly worse
    const std::vector<double> corner{3.0, -1.5};
    REQUIRE(ivc::objective(fam1, corner, run1.solution, 3, fine_grid()) >
            ivc::objective(fam1, lambda1, run1.solution, 3, fine_grid()));
}

TEST_CASE("zero-kernel family reduces to the forcing term") {
    const ParamFamily family({Interval(0.0, 0.0), Interval(0.0, 0.0)}, "affine-product", 0.0, 1.0,
                             ivc::examples::example2_forcing());
    const IvFun1D target = ivc::examples::example1_exact_solution();
    const std::vector<double> lambda{0.0, 0.0};
    const IvFun1D y = ivc::build_y(family, lambda, target, 3);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const Interval g = ivc::examples::example2_forcing()(y.node(i));
        REQUIRE(y.lower_values()[i] == g.lo());
        REQUIRE(y.upper_values()[i] == g.hi());
    }

    // a family whose single member has the target as its exact fixed point
    const IvFun1D fixed_point =
        ivc::project_interval(ivc::DyadicBasis1D(3), ivc::examples::example2_forcing());
    REQUIRE(ivc::objective(family, lambda, fixed_point, 3, fine_grid()) == 0.0);
    const ivc::InverseResult r = ivc::minimize(family, fixed_point, 3, fine_grid());
    REQUIRE(r.objective == 0.0);
    REQUIRE(r.evals == 1);
}

TEST_CASE("self-recovery of the generating parameters") {
    ivc::PicardOptions m7;
    m7.fixed_iterations = 7;

    const ParamFamily fam1 = ivc::examples::example1_family(3);
    const IvFun1D target1 = ivc::solve_forward(ivc::examples::example1_problem(3), 3, m7).solution;
    const ivc::InverseResult r1 = ivc::minimize(fam1, target1, 3, fine_grid());
    REQUIRE(std::abs(r1.lambda_star[0] - std::sqrt(2.0)) <= 1e-2);
    REQUIRE(std::abs(r1.lambda_star[1] + 1.0) <= 1e-2);
    REQUIRE_FALSE(r1.no_descent);
    REQUIRE(r1.evals > 0);
    REQUIRE(r1.starts == 5);

    const ParamFamily fam2 = ivc::examples::example2_family();
    const IvFun1D target2 = ivc::solve_forward(ivc::examples::example2_problem(), 3, m7).solution;
    const ivc::InverseResult r2 = ivc::minimize(fam2, target2, 3, fine_grid());
    REQUIRE(std::abs(r2.lambda_star[0] - 2.0) <= 1e-2);
    REQUIRE(std::abs(r2.lambda_star[1] - 1.0) <= 1e-2);
}

TEST_CASE("flat objective reports no descent") {
    // an all-zero target makes the affine-product integrand vanish for every
    // lambda, so the objective is constant over the box
    const ParamFamily family({Interval(1.0, 3.0), Interval(-1.5, -0.5)}, "affine-product", 0.0,
                             1.0, ivc::examples::example2_forcing());
    const IvFun1D target = IvFun1D::grid(0.0, 1.0, std::vector<double>(9, 0.0),
                                         std::vector<double>(9, 0.0));
    const ivc::InverseResult r = ivc::minimize(family, target, 3, fine_grid());
    REQUIRE(r.no_descent);
    REQUIRE(r.objective ==
            ivc::objective(family, r.lambda_star, target, 3, fine_grid()));
}

TEST_CASE("single-point box evaluates once") {
    const ParamFamily family({Interval(2.0, 2.0), Interval(1.0, 1.0)}, "cos-arctan", 0.0, 1.0,
                             ivc::examples::example2_forcing());
    ivc::PicardOptions m7;
    m7.fixed_iterations = 7;
    const IvFun1D target = ivc::solve_forward(ivc::examples::example2_problem(), 3, m7).solution;
    const ivc::InverseResult r = ivc::minimize(family, target, 3, fine_grid());
    REQUIRE(r.lambda_star == std::vector<double>{2.0, 1.0});
    REQUIRE(r.evals == 1);
    REQUIRE(r.starts == 1);
}

TEST_CASE("stability constant of the example families") {
    REQUIRE(ivc::stability_rho(ivc::examples::example1_family(1)) ==
            Approx(std::exp(4.5)).margin(1e-10));
    REQUIRE(ivc::stability_rho(ivc::examples::example2_family()) ==
            Approx(std::exp(4.0)).margin(1e-10));
    const ParamFamily degenerate({Interval(0.0, 0.0), Interval(0.0, 0.0)}, "affine-product", 0.0,
                                 1.0, ivc::examples::example2_forcing());
    REQUIRE(ivc::stability_rho(degenerate) == 1.0);
}

TEST_CASE("manufactured forcing") {
    const std::vector<double> zero_params{0.0, 0.0};
    const ivc::Kernel zero_kernel = ivc::make_kernel("affine-product", zero_params);
    const IvFun1D exact = ivc::examples::example1_exact_solution();

    // zero kernel: the forcing is the solution itself
    const IvFun1D g0 = ivc::manufacture_forcing(exact, zero_kernel, 2);
    for (std::size_t i = 0; i < g0.size(); ++i) {
        const Interval x = exact(g0.node(i));
        REQUIRE(g0.lower_values()[i] == Approx(x.lo()).margin(1e-15));
        REQUIRE(g0.upper_values()[i] == Approx(x.hi()).margin(1e-15));
    }

    // example 1: width of G at t is t - t^3 (sqrt(2)/2 - 1/3)
    const IvFun1D g1 = ivc::manufacture_forcing(exact, ivc::examples::example1_kernel(), 3);
    REQUIRE(g1(0.0) == Interval(1.0, 1.0));
    const Interval at_one = g1(1.0);
    REQUIRE(at_one.width() ==
            Approx(4.0 / 3.0 - std::sqrt(2.0) / 2.0).margin(1e-9));
    const Interval at_half = g1(0.5);
    REQUIRE(at_half.width() ==
            Approx(0.5 - 0.125 * (std::sqrt(2.0) / 2.0 - 1.0 / 3.0)).margin(1e-9));

    // width condition violation names the offending node
    const std::vector<double> strong{10.0, 0.0};
    const IvFun1D thin(
        0.0, 1.0, [](double t) { return std::cos(t) - 0.01 * t; },
        [](double t) { return std::cos(t) + 0.01 * t; });
    REQUIRE_THROWS_AS(
        ivc::manufacture_forcing(thin, ivc::make_kernel("affine-product", strong), 3),
        ivc::validity_error);
}

TEST_CASE("longer target generation sharpens the recovery") {
    ivc::PicardOptions m3, m7;
    m3.fixed_iterations = 3;
    m7.fixed_iterations = 7;
    const ParamFamily family = ivc::examples::example1_family(3);
    const ivc::VolterraProblem problem(0.0, 1.0, family.forcing(),
                                       ivc::examples::example1_kernel());
    const IvFun1D t3 = ivc::solve_forward(problem, 3, m3).solution;
    const IvFun1D t7 = ivc::solve_forward(problem, 3, m7).solution;
    const ivc::InverseResult r3 = ivc::minimize(family, t3, 3, fine_grid());
    const ivc::InverseResult r7 = ivc::minimize(family, t7, 3, fine_grid());
    const double e3 = std::abs(r3.lambda_star[0] - std::sqrt(2.0));
    const double e7 = std::abs(r7.lambda_star[0] - std::sqrt(2.0));
    REQUIRE(e3 >= 100.0 * e7);
    REQUIRE(r7.objective <= 10.0 * r3.objective);
}

TEST_CASE("the certificate bounds the distance to the known solution") {
    // for example 1 the recovered certificate must cover the measured error
    // against the closed-form solution
    ivc::PicardOptions m7;
    m7.fixed_iterations = 7;
    const ParamFamily family = ivc::examples::example1_family(3);
    const ivc::VolterraProblem problem(0.0, 1.0, family.forcing(),
                                       ivc::examples::example1_kernel());
    const IvFun1D target = ivc::solve_forward(problem, 3, m7).solution;
    const ivc::InverseResult r = ivc::minimize(family, target, 3, fine_grid());
    const double true_err =
        ivc::metric_h(target, ivc::examples::example1_exact_solution(), fine_grid());
    REQUIRE(true_err <= r.certificate);
    REQUIRE(r.eps_proj > 0.0);
    REQUIRE(r.rho_bound >= r.certificate / (r.objective + r.eps_proj));
}

TEST_CASE("minimization is deterministic") {
    ivc::PicardOptions m3;
    m3.fixed_iterations = 3;
    const ParamFamily family = ivc::examples::example2_family();
    const IvFun1D target = ivc::solve_forward(ivc::examples::example2_problem(), 3, m3).solution;
    const ivc::InverseResult first = ivc::minimize(family, target, 3, fine_grid());
    const ivc::InverseResult second = ivc::minimize(family, target, 3, fine_grid());
    REQUIRE(first.lambda_star == second.lambda_star);
    REQUIRE(first.objective == second.objective);
    REQUIRE(first.evals == second.evals);
}
