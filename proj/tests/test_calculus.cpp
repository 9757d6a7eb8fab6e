#include <catch2/catch_amalgamated.hpp>

#include "heis/analytic.hpp"
#include "heis/calculus.hpp"

using namespace heis;

TEST_CASE("frame derivatives at a point match the coordinate formulas") {
    // f = t x with Xf = t + 2xy, Yf = −2x², Tf = x.
    const ScalarField f = coordinate_t() * coordinate_x();
    const HeisPoint p(1.2, -0.8, 0.5);
    CHECK(frame_apply(FrameOp::X, f, p) ==
          Catch::Approx(0.5 + 2.0 * 1.2 * (-0.8)).epsilon(1e-9));
    CHECK(frame_apply(FrameOp::Y, f, p) == Catch::Approx(-2.0 * 1.44).epsilon(1e-9));
    CHECK(frame_apply(FrameOp::T, f, p) == Catch::Approx(1.2).epsilon(1e-9));
    CHECK(frame_apply(FrameOp::Xi, f, p) ==
          Catch::Approx(xi_apply(f, p)).epsilon(1e-12));
}

TEST_CASE("horizontal frame brackets close on the vertical direction") {
    PointSampler s(303, 1.5);
    for (const auto& [name, f] : standard_battery()) {
        const ScalarField xf = frame_derivative_field(FrameOp::X, f);
        const ScalarField yf = frame_derivative_field(FrameOp::Y, f);
        for (int i = 0; i < 20; ++i) {
            const HeisPoint p = s.next();
            const double bracket =
                frame_apply(FrameOp::X, yf, p) - frame_apply(FrameOp::Y, xf, p);
            CHECK(bracket == Catch::Approx(-4.0 * frame_apply(FrameOp::T, f, p))
                                 .margin(1e-6)
                                 .epsilon(1e-6));
        }
    }
}

TEST_CASE("generator field and its divergence") {
    const HeisPoint p(0.7, -0.4, 1.3);
    const FrameVector xi = xi_vector(p);
    const FrameVector expected = to_frame(p, 0.7, -0.4, 2.6);
    CHECK(xi.a == Catch::Approx(expected.a));
    CHECK(xi.b == Catch::Approx(expected.b));
    CHECK(xi.c == Catch::Approx(expected.c));
    auto components = [](const HeisPoint& q, double& vx, double& vy, double& vt) {
        vx = q.x();
        vy = q.y();
        vt = 2.0 * q.t;
    };
    CHECK(coordinate_divergence(components, p) == Catch::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("euler identity for gauge powers") {
    for (double alpha : {1.0, -2.0, 2.0}) {
        const ScalarField f = koranyi_power(alpha);
        PointSampler s(304);
        for (int i = 0; i < 50; ++i) {
            const HeisPoint p = s.next_in_shell(0.5, 2.0);
            CHECK(xi_apply(f, p) == Catch::Approx(alpha * f(p)).epsilon(1e-8));
        }
    }
}

TEST_CASE("metric makes the scaled horizontal frame and T orthonormal") {
    const FrameVector xh{0.5, 0.0, 0.0}, yh{0.0, 0.5, 0.0}, tv{0.0, 0.0, 1.0};
    CHECK(metric(xh, xh) == 1.0);
    CHECK(metric(yh, yh) == 1.0);
    CHECK(metric(tv, tv) == 1.0);
    CHECK(metric(xh, yh) == 0.0);
    CHECK(metric(xh, tv) == 0.0);
    CHECK(metric_norm(FrameVector{0.5, 0.5, 1.0}) == Catch::Approx(std::sqrt(3.0)));
}

TEST_CASE("horizontal gradient pairs with the metric against frame jets") {
    const ScalarField f = gauge_kernel(1.0);
    const HeisPoint p(0.4, 0.9, -0.3);
    const Jet1 j = f.jet1(p);
    const FrameVector grad = hgrad(f, p);
    CHECK(metric(grad, FrameVector{1.0, 0.0, 0.0}) == Catch::Approx(j.X).epsilon(1e-9));
    CHECK(metric(grad, FrameVector{0.0, 1.0, 0.0}) == Catch::Approx(j.Y).epsilon(1e-9));
    CHECK(hgrad_norm_sq(f, p) ==
          Catch::Approx(0.25 * (j.X * j.X + j.Y * j.Y)).epsilon(1e-9));
}

TEST_CASE("riemannian gradient reproduces directional derivatives") {
    const ScalarField f = gauge_kernel(1.0);
    const HeisPoint p(-0.2, 0.6, 0.8);
    const Jet1 j = f.jet1(p);
    const FrameVector grad = riemannian_grad(f, p);
    CHECK(metric(grad, FrameVector{1.0, 0.0, 0.0}) == Catch::Approx(j.X).epsilon(1e-9));
    CHECK(metric(grad, FrameVector{0.0, 0.0, 1.0}) == Catch::Approx(j.T).epsilon(1e-9));
}

TEST_CASE("sublaplacian is one quarter of the horizontal trace") {
    const ScalarField f = standard_battery()[1].second;
    const HeisPoint p(0.5, -0.5, 0.25);
    const Jet2 h = f.jet2(p);
    CHECK(sublaplacian(f, p) == Catch::Approx(0.25 * (h.XX + h.YY)).epsilon(1e-9));
}

TEST_CASE("dilation covariance report is clean for a smooth field") {
    const ScalarField f = standard_battery().back().second;
    PointSampler s(305);
    std::vector<HeisPoint> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(s.next());
    const CovarianceReport rep = covariance_check(f, 1.7, HeisPoint(0.3, -0.1, 0.2), pts);
    CHECK(rep.samples == 40);
    CHECK(rep.max_rel_residual <= 1e-8);
}
