#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "field.hpp"
#include "point.hpp"

namespace heis {

/// Tangent vector in frame coordinates: v = a·X + b·Y + c·T.
/// The Webster metric makes {X/2, Y/2, T} orthonormal: g(X,X) = g(Y,Y) = 4, g(T,T) = 1.
struct FrameVector {
    double a = 0.0, b = 0.0, c = 0.0;
};

inline double metric(const FrameVector& u, const FrameVector& v) {
    return 4.0 * (u.a * v.a + u.b * v.b) + u.c * v.c;
}

inline double metric_norm(const FrameVector& u) { return std::sqrt(metric(u, u)); }

/// Coordinate tangent (vx, vy, vt) rewritten in the frame: the T-coefficient is
/// the contact pairing θ(v) = vt − 2y·vx + 2x·vy.
inline FrameVector to_frame(const HeisPoint& p, double vx, double vy, double vt) {
    return FrameVector{vx, vy, vt - 2.0 * p.y() * vx + 2.0 * p.x() * vy};
}

/// Generator of dilations Ξ = x∂x + y∂y + 2t∂t = x·X + y·Y + 2t·T.
inline FrameVector xi_vector(const HeisPoint& p) {
    return FrameVector{p.x(), p.y(), 2.0 * p.t};
}

enum class FrameOp { X, Y, T, Xi };

inline double frame_apply(FrameOp op, const ScalarField& f, const HeisPoint& p) {
    const Jet1 j = f.jet1(p);
    switch (op) {
        case FrameOp::X: return j.X;
        case FrameOp::Y: return j.Y;
        case FrameOp::T: return j.T;
        case FrameOp::Xi: return p.x() * j.X + p.y() * j.Y + 2.0 * p.t * j.T;
    }
    return 0.0;
}

/// Horizontal gradient ∇^H f = ¼(Xf·X + Yf·Y); returned as frame coefficients.
inline FrameVector hgrad(const ScalarField& f, const HeisPoint& p) {
    const Jet1 j = f.jet1(p);
    return FrameVector{0.25 * j.X, 0.25 * j.Y, 0.0};
}

/// |∇^H f|² = ¼((Xf)² + (Yf)²).
inline double hgrad_norm_sq(const ScalarField& f, const HeisPoint& p) {
    const Jet1 j = f.jet1(p);
    return 0.25 * (j.X * j.X + j.Y * j.Y);
}

/// Δ_b f = ¼(X²f + Y²f).
inline double sublaplacian(const ScalarField& f, const HeisPoint& p) {
    const Jet2 j = f.jet2(p);
    return 0.25 * (j.XX + j.YY);
}

inline double xi_apply(const ScalarField& f, const HeisPoint& p) {
    return frame_apply(FrameOp::Xi, f, p);
}

/// Full Riemannian gradient ∇_g f = ¼(Xf·X + Yf·Y) + Tf·T.
inline FrameVector riemannian_grad(const ScalarField& f, const HeisPoint& p) {
    const Jet1 j = f.jet1(p);
    return FrameVector{0.25 * j.X, 0.25 * j.Y, j.T};
}

/// Derived field x ↦ (op f)(x); downstream derivatives fall back to FD.
inline ScalarField frame_derivative_field(FrameOp op, const ScalarField& f) {
    auto pf = std::make_shared<ScalarField>(f);
    return ScalarField::from_eval(
        [pf, op](const HeisPoint& p) { return frame_apply(op, *pf, p); }, f.fd_config());
}

/// Coordinate divergence of a vector field given by coordinate components
/// (with respect to the constant volume density, div V = ∂x V^x + ∂y V^y + ∂t V^t).
inline double coordinate_divergence(const std::function<void(const HeisPoint&, double&, double&, double&)>& components,
                                    const HeisPoint& p, const FDConfig& cfg = {}) {
    using namespace detail;
    auto comp = [&components](const HeisPoint& q, int k) {
        double vx, vy, vt;
        components(q, vx, vy, vt);
        return k == 0 ? vx : (k == 1 ? vy : vt);
    };
    double div = 0.0;
    div += partial1([&comp](const HeisPoint& q) { return comp(q, 0); }, p, Axis::X, cfg);
    div += partial1([&comp](const HeisPoint& q) { return comp(q, 1); }, p, Axis::Y, cfg);
    div += partial1([&comp](const HeisPoint& q) { return comp(q, 2); }, p, Axis::T, cfg);
    return div;
}

struct CovarianceReport {
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    std::size_t samples = 0;
};

/// Checks Δ_b(f ∘ δ_λ ∘ L_{x0}) = λ² (Δ_b f) ∘ δ_λ ∘ L_{x0} on sample points.
inline CovarianceReport covariance_check(const ScalarField& f, double lambda, const HeisPoint& x0,
                                         const std::vector<HeisPoint>& samples) {
    const ScalarField g = compose_translate(compose_dilate(f, lambda), x0);
    CovarianceReport rep;
    rep.samples = samples.size();
    for (const HeisPoint& p : samples) {
        const HeisPoint q = dilate(left_translate(x0, p), lambda);
        const double lhs = sublaplacian(g, p);
        const double rhs = lambda * lambda * sublaplacian(f, q);
        const double res = std::abs(lhs - rhs);
        rep.max_abs_residual = std::max(rep.max_abs_residual, res);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        rep.max_rel_residual = std::max(rep.max_rel_residual, res / scale);
    }
    return rep;
}

}  // namespace heis
