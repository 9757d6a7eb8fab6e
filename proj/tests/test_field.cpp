#include <catch2/catch_amalgamated.hpp>

#include "heis/analytic.hpp"
#include "heis/field.hpp"

using namespace heis;

// f = x²y + 3tx − 2 has Xf = 8xy + 3t, Yf = −5x², Tf = 3x, so
// XXf = 14y, YYf = 0, XYf = −10x, YXf = 2x, TTf = 0, XTf = 3, YTf = 0.
TEST_CASE("finite-difference frame jets match polynomial derivatives") {
    const ScalarField f = ScalarField::from_eval([](const HeisPoint& p) {
        return p.x() * p.x() * p.y() + 3.0 * p.t * p.x() - 2.0;
    });
    const HeisPoint p(0.8, -1.2, 0.6);
    CHECK(f(p) == Catch::Approx(0.8 * 0.8 * (-1.2) + 3.0 * 0.6 * 0.8 - 2.0));
    const Jet1 j = f.jet1(p);
    CHECK(j.X == Catch::Approx(8.0 * 0.8 * (-1.2) + 3.0 * 0.6).epsilon(1e-8));
    CHECK(j.Y == Catch::Approx(-5.0 * 0.64).epsilon(1e-8));
    CHECK(j.T == Catch::Approx(2.4).epsilon(1e-8));
    const Jet2 h = f.jet2(p);
    CHECK(h.XX == Catch::Approx(14.0 * (-1.2)).epsilon(1e-6));
    CHECK(h.YY == Catch::Approx(0.0).margin(1e-6));
    CHECK(h.XY == Catch::Approx(-10.0 * 0.8).epsilon(1e-6));
    CHECK(h.YX == Catch::Approx(2.0 * 0.8).epsilon(1e-6));
    CHECK(h.TT == Catch::Approx(0.0).margin(1e-6));
    CHECK(h.XT == Catch::Approx(3.0).epsilon(1e-6));
    CHECK(h.YT == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("dilation composition evaluates the field at the dilated point") {
    const ScalarField f = koranyi_norm_field();
    const ScalarField g = compose_dilate(f, 2.5);
    const HeisPoint p(0.4, -0.3, 0.7);
    CHECK(g(p) == Catch::Approx(f(dilate(p, 2.5))));
    CHECK(g(p) == Catch::Approx(2.5 * f(p)).epsilon(1e-12));
}

TEST_CASE("translation composition evaluates at the left translate") {
    const ScalarField f = koranyi_norm_field();
    const HeisPoint x0(0.5, 0.5, -0.2), p(1.0, -1.0, 0.3);
    CHECK(compose_translate(f, x0)(p) == Catch::Approx(f(left_translate(x0, p))));
}

TEST_CASE("field algebra") {
    const ScalarField x = coordinate_x(), y = coordinate_y();
    const HeisPoint p(1.5, -2.0, 0.1);
    CHECK(lin_comb(2.0, x, -3.0, y)(p) == Catch::Approx(2.0 * 1.5 + 6.0));
    CHECK((x + y)(p) == Catch::Approx(-0.5));
    CHECK(add_const(x, 4.0)(p) == Catch::Approx(5.5));
    CHECK(scale_values(x, -2.0)(p) == Catch::Approx(-3.0));
    CHECK((x * y)(p) == Catch::Approx(-3.0));
    CHECK(constant_field(3.25)(p) == 3.25);
    CHECK(constant_field(3.25).jet1(p).X == 0.0);
}

TEST_CASE("product rule holds for frame derivatives") {
    const ScalarField f = coordinate_x() * coordinate_t();
    const ScalarField x = coordinate_x(), t = coordinate_t();
    const HeisPoint p(0.9, 0.4, -0.6);
    const Jet1 jf = f.jet1(p), jx = x.jet1(p), jt = t.jet1(p);
    CHECK(jf.X == Catch::Approx(jx.X * t(p) + x(p) * jt.X).epsilon(1e-10));
    CHECK(jf.Y == Catch::Approx(jx.Y * t(p) + x(p) * jt.Y).epsilon(1e-10));
    CHECK(jf.T == Catch::Approx(jx.T * t(p) + x(p) * jt.T).epsilon(1e-10));
}

TEST_CASE("smooth composition applies the chain rule") {
    const ScalarField g = gauge_kernel(1.0);
    const ScalarField f = apply_smooth(
        g, [](double v) { return std::exp(v); }, [](double v) { return std::exp(v); },
        [](double v) { return std::exp(v); });
    const HeisPoint p(0.3, 0.2, -0.4);
    CHECK(f(p) == Catch::Approx(std::exp(g(p))));
    const Jet1 jf = f.jet1(p), jg = g.jet1(p);
    CHECK(jf.X == Catch::Approx(std::exp(g(p)) * jg.X).epsilon(1e-9));
    CHECK(jf.T == Catch::Approx(std::exp(g(p)) * jg.T).epsilon(1e-9));
}

TEST_CASE("power fields differentiate like powers") {
    const ScalarField f = pow_field(gauge_kernel(1.0), -0.5);
    const ScalarField g = gauge_kernel(1.0);
    const HeisPoint p(0.6, -0.1, 0.2);
    CHECK(f(p) == Catch::Approx(std::pow(g(p), -0.5)));
    CHECK(f.jet1(p).Y ==
          Catch::Approx(-0.5 * std::pow(g(p), -1.5) * g.jet1(p).Y).epsilon(1e-9));
}

TEST_CASE("bubble kernel jets certify against finite differences") {
    const ScalarField u = bubble_kernel();
    const ScalarField u_fd = ScalarField::from_eval([&u](const HeisPoint& p) { return u(p); });
    PointSampler s(202, 1.5);
    for (int i = 0; i < 60; ++i) {
        const HeisPoint p = s.next();
        const Jet1 ja = u.jet1(p), jn = u_fd.jet1(p);
        CHECK(ja.X == Catch::Approx(jn.X).margin(1e-6).epsilon(1e-6));
        CHECK(ja.Y == Catch::Approx(jn.Y).margin(1e-6).epsilon(1e-6));
        CHECK(ja.T == Catch::Approx(jn.T).margin(1e-6).epsilon(1e-6));
    }
}

TEST_CASE("standard battery exposes five named smooth fields") {
    const auto battery = standard_battery();
    REQUIRE(battery.size() == 5);
    for (const auto& [name, f] : battery) {
        CHECK_FALSE(name.empty());
        CHECK(std::isfinite(f(HeisPoint(0.3, -0.2, 0.5))));
    }
}
