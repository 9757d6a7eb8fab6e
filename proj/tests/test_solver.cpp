#include <catch2/catch_amalgamated.hpp>

#include "heis/analytic.hpp"
#include "heis/grid.hpp"
#include "heis/solver.hpp"

using namespace heis;

TEST_CASE("grid indexing round-trips and flags the boundary") {
    const Grid g(GridBox{}, 8);
    CHECK(g.size() == 512);
    CHECK(g.interior_size() == 216);
    CHECK(g.cell_volume() == Catch::Approx(4.0 * g.hx() * g.hy() * g.ht()));
    std::size_t interior_seen = 0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            for (std::size_t k = 0; k < 8; ++k) {
                CHECK(g.index(i, j, k) < g.size());
                const bool boundary = i == 0 || i == 7 || j == 0 || j == 7 || k == 0 || k == 7;
                CHECK(g.on_boundary(i, j, k) == boundary);
                interior_seen += boundary ? 0 : 1;
            }
    CHECK(interior_seen == g.interior_size());
    const HeisPoint p = g.point(0, 0, 0);
    CHECK(p.x() == Catch::Approx(-2.0));
    CHECK(p.t == Catch::Approx(-4.0));
}

TEST_CASE("discrete sampling reproduces the field") {
    const Grid g(GridBox{}, 10);
    const ScalarField f = koranyi_norm_field();
    const DiscreteField d = DiscreteField::sample(g, f);
    CHECK(d.at(3, 4, 5) == Catch::Approx(f(g.point(3, 4, 5))));
    CHECK(d.max_abs() > 0.0);
}

TEST_CASE("discrete operator is consistent with the continuous one") {
    const ScalarField u = scale_values(bubble_kernel(), 2.0);
    const double e1 = operator_consistency_sup(Grid(GridBox{}, 17), u);
    const double e2 = operator_consistency_sup(Grid(GridBox{}, 33), u);
    CHECK(e1 < 0.5);
    CHECK(std::log2(e1 / e2) >= 1.8);
}

TEST_CASE("linear solve recovers dirichlet data of an annihilated field") {
    const ScalarField gamma = fundamental_solution_field();
    const ScalarField shifted = compose_translate(gamma, HeisPoint(4.0, 4.0, 0.0));
    auto fn = [&shifted](const HeisPoint& p) { return shifted(p); };
    auto solve_at = [&fn](std::size_t n) {
        const Grid g(GridBox{}, n);
        const GridOperator op(g);
        LinearSolveReport rep;
        const DiscreteField u =
            solve_linear(op, [](const HeisPoint&) { return 0.0; }, fn, rep);
        REQUIRE(rep.converged);
        return u.interior_sup_rel_error(fn);
    };
    const double coarse = solve_at(16);
    CHECK(coarse <= 5e-3);
    CHECK(solve_at(24) < coarse);
}

TEST_CASE("newton solve recovers the extremal from boundary data") {
    const Grid g(GridBox{}, 20);
    const ScalarField oracle = scale_values(bubble_kernel(), 2.0);
    auto fn = [&oracle](const HeisPoint& p) { return oracle(p); };
    NewtonReport rep;
    const DiscreteField u = solve_critical_power(g, fn, rep);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 10);
    CHECK(u.interior_sup_rel_error(fn) <= 3e-2);
}

TEST_CASE("half height radius shrinks under concentration") {
    const Grid g(GridBox{}, 20);
    const DiscreteField wide = DiscreteField::sample(g, bubble_field(1.0, 1.0, HeisPoint()));
    const DiscreteField tall = DiscreteField::sample(g, bubble_field(1.0, 2.0, HeisPoint()));
    Eigen::VectorXd wide_v(g.size()), tall_v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        wide_v[static_cast<Eigen::Index>(i)] = wide.values[i];
        tall_v[static_cast<Eigen::Index>(i)] = tall.values[i];
    }
    CHECK(half_height_radius(g, tall_v) < half_height_radius(g, wide_v));
}

TEST_CASE("constrained minimization keeps lowering the quotient") {
    const Grid g(GridBox{}, 12);
    const ConcentrationRow early = minimize_quotient(g, 2.5, 30);
    const ConcentrationRow late = minimize_quotient(g, 2.5, 90);
    CHECK(late.energy <= early.energy + 1e-12);
    DiscreteField minimizer(g);
    const ConcentrationRow row = minimize_quotient(g, 2.5, 30, &minimizer);
    CHECK(row.max_value == Catch::Approx(minimizer.max_abs()).epsilon(1e-12));
    CHECK(row.half_height_radius > 0.0);
}
