#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "heis/analytic.hpp"
#include "heis/quadrature.hpp"

using namespace heis;

TEST_CASE("gauss-legendre integrates polynomials to degree 2n-1") {
    const Quad1D q = gauss_legendre(8, -1.0, 3.0);
    for (int k = 0; k <= 15; ++k) {
        double got = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            got += q.weights[i] * std::pow(q.nodes[i], k);
        const double want = (std::pow(3.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1.0);
        CHECK(got == Catch::Approx(want).epsilon(1e-13).margin(1e-13));
    }
}

TEST_CASE("periodic trapezoid is exact on low trigonometric modes") {
    const Quad1D q = periodic_trapezoid(24);
    double total = 0.0, mode = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        total += q.weights[i];
        mode += q.weights[i] * std::sin(5.0 * q.nodes[i] + 0.4);
    }
    CHECK(total == Catch::Approx(2.0 * M_PI));
    CHECK(mode == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("gauge sphere chart lands on the sphere") {
    for (double r : {0.5, 1.0, 2.0}) {
        const HeisPoint p = gauge_sphere_point(r, 0.7, 2.1);
        CHECK(koranyi_norm(p) == Catch::Approx(r).epsilon(1e-12));
        CHECK(gauge_sphere_density(r, 0.7) > 0.0);
    }
}

TEST_CASE("unit ball volume matches the closed form") {
    const BallRule ball = make_ball_rule(1.0, 24, 16, 32);
    CHECK(ball.volume() == Catch::Approx(2.0 * M_PI * M_PI).epsilon(1e-10));
}

TEST_CASE("ball volume scales with the fourth power of the radius") {
    const double v1 = make_ball_rule(1.0, 20, 12, 24).volume();
    const double v3 = make_ball_rule(3.0, 20, 12, 24).volume();
    CHECK(v3 == Catch::Approx(81.0 * v1).epsilon(1e-10));
}

TEST_CASE("shells partition the ball") {
    const double inner = make_ball_rule(0.6, 20, 12, 24).volume();
    const double shell = make_shell_rule(0.6, 1.4, 20, 12, 24).volume();
    const double full = make_ball_rule(1.4, 20, 12, 24).volume();
    CHECK(inner + shell == Catch::Approx(full).epsilon(1e-10));
}

TEST_CASE("sphere rule integrates homogeneous integrands consistently") {
    const SphereRule s1 = make_sphere_rule(1.0, 32, 64);
    const SphereRule s2 = make_sphere_rule(1.0, 48, 96);
    const auto f = [](const HeisPoint& p) { return p.x() * p.x() + p.t; };
    CHECK(s1.integrate(f) == Catch::Approx(s2.integrate(f)).epsilon(1e-10).margin(1e-10));
    CHECK(s1.area() == Catch::Approx(s2.area()).epsilon(1e-10));
}

TEST_CASE("horizontal flux of the gauge kernel power is the mass constant") {
    const ScalarField gamma = fundamental_solution_field();
    CHECK(hgrad_flux(gamma, make_sphere_rule(1.0, 48, 96)) ==
          Catch::Approx(-8.0).epsilon(1e-10));
    CHECK(hgrad_flux(gamma, make_sphere_rule(2.0, 48, 96)) ==
          Catch::Approx(-8.0).epsilon(1e-10));
}

TEST_CASE("green identity balances volume and boundary integrals") {
    const ScalarField f = standard_battery().back().second;
    const BallRule ball = make_ball_rule(1.5, 20, 16, 32);
    const double vol = ball.integrate([&f](const HeisPoint& p) { return sublaplacian(f, p); });
    const double flux = hgrad_flux(f, make_sphere_rule(1.5, 32, 64));
    CHECK(vol == Catch::Approx(flux).epsilon(1e-6));
}

TEST_CASE("csv writers emit one row per node") {
    const SphereRule sphere = make_sphere_rule(1.0, 4, 8);
    std::ostringstream surf;
    write_surface_csv(surf, sphere);
    std::size_t lines = 0;
    for (char c : surf.str()) lines += c == '\n';
    CHECK(lines == sphere.nodes.size() + 1);

    const BallRule ball = make_ball_rule(1.0, 3, 4, 8);
    std::ostringstream volcsv;
    write_volume_csv(volcsv, ball);
    lines = 0;
    for (char c : volcsv.str()) lines += c == '\n';
    CHECK(lines == ball.nodes.size() + 1);
}
