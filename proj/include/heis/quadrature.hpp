#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "analytic.hpp"
#include "calculus.hpp"
#include "field.hpp"
#include "point.hpp"

namespace heis {

struct Quad1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b] via Newton iteration on P_n.
inline Quad1D gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
    Quad1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                                   (static_cast<double>(k) - 1.0) * p0) /
                                  static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.nodes[i] = mid - half * x;
        q.nodes[n - 1 - i] = mid + half * x;
        q.weights[i] = half * w;
        q.weights[n - 1 - i] = half * w;
    }
    return q;
}

/// Equal-weight rule for 2π-periodic integrands.
inline Quad1D periodic_trapezoid(std::size_t n) {
    if (n == 0) throw std::invalid_argument("periodic_trapezoid: need at least one node");
    Quad1D q;
    q.nodes.resize(n);
    q.weights.assign(n, 2.0 * std::numbers::pi / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        q.nodes[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return q;
}

/// Chart of the gauge sphere {|x| = r}: (θ, φ) ↦ (r√(cosθ)·e^{iφ}, r²·sinθ),
/// θ ∈ (−π/2, π/2), φ ∈ [0, 2π).
inline HeisPoint gauge_sphere_point(double r, double theta, double phi) {
    const double w = std::sqrt(std::cos(theta));
    return HeisPoint(r * w * std::cos(phi), r * w * std::sin(phi), r * r * std::sin(theta));
}

/// Surface measure density of that chart: dσ = 2r²√(sin²θ + r²cosθ) dθ dφ.
inline double gauge_sphere_density(double r, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    return 2.0 * r * r * std::sqrt(s * s + r * r * c);
}

struct SurfaceNode {
    HeisPoint p;
    double weight;      ///< includes the surface density
    FrameVector normal; ///< outward unit normal in frame coefficients
};

struct SphereRule {
    double radius = 1.0;
    std::vector<SurfaceNode> nodes;

    double area() const {
        double a = 0.0;
        for (const auto& nd : nodes) a += nd.weight;
        return a;
    }

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (const auto& nd : nodes) acc += nd.weight * f(nd.p);
        return acc;
    }

    template <typename F>
    double integrate_with_normal(F&& f) const {
        double acc = 0.0;
        for (const auto& nd : nodes) acc += nd.weight * f(nd.p, nd.normal);
        return acc;
    }
};

/// Unit normal of the gauge sphere at p: ∇_g N / |∇_g N| for the gauge norm N.
inline FrameVector gauge_sphere_normal(const ScalarField& norm_field, const HeisPoint& p) {
    const Jet1 j = norm_field.jet1(p);
    FrameVector grad{0.25 * j.X, 0.25 * j.Y, j.T};
    const double len = metric_norm(grad);
    if (!(len > 0.0)) throw std::domain_error("gauge sphere normal undefined at this point");
    return FrameVector{grad.a / len, grad.b / len, grad.c / len};
}

/// Product rule on the gauge sphere of radius r: Gauss-Legendre in θ, trapezoid in φ.
inline SphereRule make_sphere_rule(double r, std::size_t n_theta, std::size_t n_phi) {
    if (!(r > 0.0)) throw std::invalid_argument("make_sphere_rule: radius must be positive");
    const Quad1D qt = gauss_legendre(n_theta, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    const Quad1D qp = periodic_trapezoid(n_phi);
    const ScalarField norm_field = koranyi_norm_field();
    SphereRule rule;
    rule.radius = r;
    rule.nodes.reserve(n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double dens = gauge_sphere_density(r, qt.nodes[i]);
        for (std::size_t k = 0; k < n_phi; ++k) {
            SurfaceNode nd;
            nd.p = gauge_sphere_point(r, qt.nodes[i], qp.nodes[k]);
            nd.weight = dens * qt.weights[i] * qp.weights[k];
            nd.normal = gauge_sphere_normal(norm_field, nd.p);
            rule.nodes.push_back(nd);
        }
    }
    return rule;
}

struct VolumeNode {
    HeisPoint p;
    double weight; ///< includes the volume density dV = 4 dx dy dt
};

struct BallRule {
    double radius = 1.0;
    std::vector<VolumeNode> nodes;

    double volume() const {
        double v = 0.0;
        for (const auto& nd : nodes) v += nd.weight;
        return v;
    }

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (const auto& nd : nodes) acc += nd.weight * f(nd.p);
        return acc;
    }
};

/// Polar rule on the gauge ball {|x| ≤ R}: the polar map (ρ, θ, φ) ↦ δ_ρ(chart(θ, φ))
/// has coordinate Jacobian ρ³, so dV pulls back to 4ρ³ dρ dθ dφ.
inline BallRule make_ball_rule(double R, std::size_t n_rho, std::size_t n_theta,
                               std::size_t n_phi) {
    if (!(R > 0.0)) throw std::invalid_argument("make_ball_rule: radius must be positive");
    const Quad1D qr = gauss_legendre(n_rho, 0.0, R);
    const Quad1D qt = gauss_legendre(n_theta, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    const Quad1D qp = periodic_trapezoid(n_phi);
    BallRule rule;
    rule.radius = R;
    rule.nodes.reserve(n_rho * n_theta * n_phi);
    for (std::size_t a = 0; a < n_rho; ++a) {
        const double rho = qr.nodes[a];
        const double wr = 4.0 * rho * rho * rho * qr.weights[a];
        for (std::size_t i = 0; i < n_theta; ++i) {
            for (std::size_t k = 0; k < n_phi; ++k) {
                VolumeNode nd;
                nd.p = gauge_sphere_point(rho, qt.nodes[i], qp.nodes[k]);
                nd.weight = wr * qt.weights[i] * qp.weights[k];
                rule.nodes.push_back(nd);
            }
        }
    }
    return rule;
}

/// Shell rule on {r0 ≤ |x| ≤ r1}; same polar density, radial interval [r0, r1].
inline BallRule make_shell_rule(double r0, double r1, std::size_t n_rho, std::size_t n_theta,
                                std::size_t n_phi) {
    if (!(0.0 <= r0 && r0 < r1)) throw std::invalid_argument("make_shell_rule: need 0 <= r0 < r1");
    BallRule rule;
    const Quad1D qr = gauss_legendre(n_rho, r0, r1);
    const Quad1D qt = gauss_legendre(n_theta, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    const Quad1D qp = periodic_trapezoid(n_phi);
    rule.radius = r1;
    rule.nodes.reserve(n_rho * n_theta * n_phi);
    for (std::size_t a = 0; a < n_rho; ++a) {
        const double rho = qr.nodes[a];
        const double wr = 4.0 * rho * rho * rho * qr.weights[a];
        for (std::size_t i = 0; i < n_theta; ++i)
            for (std::size_t k = 0; k < n_phi; ++k)
                rule.nodes.push_back(VolumeNode{
                    gauge_sphere_point(rho, qt.nodes[i], qp.nodes[k]),
                    wr * qt.weights[i] * qp.weights[k]});
    }
    return rule;
}

/// Flux of the horizontal gradient through the sphere: ∫ g(∇^H u, ν) dσ,
/// where g(∇^H u, ν) = ν_a·Xu + ν_b·Yu for frame-coefficient normals.
inline double hgrad_flux(const ScalarField& u, const SphereRule& rule) {
    return rule.integrate_with_normal([&u](const HeisPoint& p, const FrameVector& nu) {
        const Jet1 j = u.jet1(p);
        return nu.a * j.X + nu.b * j.Y;
    });
}

inline void write_surface_csv(std::ostream& os, const SphereRule& rule) {
    os << "x,y,t,weight,normal_a,normal_b,normal_c\n";
    char buf[256];
    for (const auto& nd : rule.nodes) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      nd.p.x(), nd.p.y(), nd.p.t, nd.weight, nd.normal.a, nd.normal.b,
                      nd.normal.c);
        os << buf;
    }
}

inline void write_volume_csv(std::ostream& os, const BallRule& rule) {
    os << "x,y,t,weight\n";
    char buf[160];
    for (const auto& nd : rule.nodes) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", nd.p.x(), nd.p.y(), nd.p.t,
                      nd.weight);
        os << buf;
    }
}

}  // namespace heis
