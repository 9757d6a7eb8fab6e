#include <catch2/catch_amalgamated.hpp>

#include "heis/point.hpp"

using namespace heis;

namespace {

double gap(const HeisPoint& a, const HeisPoint& b) {
    double m = std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.z.size(); ++i) m = std::max(m, std::abs(a.z[i] - b.z[i]));
    return m;
}

}  // namespace

TEST_CASE("group law matches the twisted product formula") {
    const HeisPoint a(1.0, 2.0, 3.0), b(-0.5, 0.25, 1.0);
    const HeisPoint c = group_mul(a, b);
    CHECK(c.x() == Catch::Approx(0.5));
    CHECK(c.y() == Catch::Approx(2.25));
    // t + s + 2 Im(z w̄) with z = 1+2i, w = −0.5+0.25i
    CHECK(c.t == Catch::Approx(3.0 + 1.0 + 2.0 * (2.0 * (-0.5) - 1.0 * 0.25)));
}

TEST_CASE("identity and inverses") {
    const HeisPoint e;
    const HeisPoint a(0.7, -1.3, 0.4);
    CHECK(gap(group_mul(a, e), a) == 0.0);
    CHECK(gap(group_mul(e, a), a) == 0.0);
    CHECK(gap(group_mul(a, group_inv(a)), e) <= 1e-15);
    CHECK(gap(group_mul(group_inv(a), a), e) <= 1e-15);
}

TEST_CASE("associativity on random triples") {
    PointSampler s(99);
    for (int i = 0; i < 200; ++i) {
        const HeisPoint a = s.next(), b = s.next(), c = s.next();
        CHECK(gap(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))) <= 1e-12);
    }
}

TEST_CASE("dilation acts with weight two on the center") {
    const HeisPoint a(1.5, -0.5, 2.0);
    const HeisPoint d = dilate(a, 3.0);
    CHECK(d.x() == Catch::Approx(4.5));
    CHECK(d.y() == Catch::Approx(-1.5));
    CHECK(d.t == Catch::Approx(18.0));
}

TEST_CASE("dilation is a group homomorphism") {
    PointSampler s(100);
    for (int i = 0; i < 200; ++i) {
        const HeisPoint a = s.next(), b = s.next();
        const double lam = s.uniform(0.1, 4.0);
        CHECK(gap(dilate(group_mul(a, b), lam), group_mul(dilate(a, lam), dilate(b, lam))) <=
              1e-12);
    }
}

TEST_CASE("gauge norm is homogeneous and vanishes only at the origin") {
    const HeisPoint a(0.3, 0.4, -0.9);
    CHECK(koranyi_norm(dilate(a, 2.0)) == Catch::Approx(2.0 * koranyi_norm(a)));
    CHECK(koranyi_norm(HeisPoint()) == 0.0);
    CHECK(koranyi_norm(HeisPoint(0.0, 0.0, 1.0)) == Catch::Approx(1.0));
    CHECK(koranyi_norm(HeisPoint(1.0, 0.0, 0.0)) == Catch::Approx(1.0));
}

TEST_CASE("gauge distance is symmetric and left invariant") {
    PointSampler s(101);
    for (int i = 0; i < 100; ++i) {
        const HeisPoint a = s.next(), b = s.next(), c = s.next();
        const double d = koranyi_dist(a, b);
        CHECK(koranyi_dist(b, a) == Catch::Approx(d).margin(1e-14));
        CHECK(koranyi_dist(group_mul(c, a), group_mul(c, b)) ==
              Catch::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("left translation composes group elements") {
    const HeisPoint x0(0.2, -0.7, 1.1), p(1.0, 1.0, -0.5);
    CHECK(gap(left_translate(x0, p), group_mul(group_inv(x0), p)) == 0.0);
}

TEST_CASE("sampler is deterministic and shell sampling lands in the shell") {
    PointSampler s1(7), s2(7);
    for (int i = 0; i < 50; ++i) CHECK(gap(s1.next(), s2.next()) == 0.0);
    PointSampler s3(8);
    for (int i = 0; i < 200; ++i) {
        const double r = koranyi_norm(s3.next_in_shell(0.5, 2.0));
        CHECK(r >= 0.5);
        CHECK(r <= 2.0);
    }
}
