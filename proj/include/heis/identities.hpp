#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "analytic.hpp"
#include "calculus.hpp"
#include "quadrature.hpp"

namespace heis {

inline double homogeneous_q() { return static_cast<double>(homogeneous_dimension(HeisPoint())); }

/// Calibration of c1 in u = c1 λ (kernel ∘ δ_λ ∘ L_{x0}): for u = c·kernel,
/// −Δ_b u = u³ forces c = sqrt(−Δ_b kernel / kernel³), which must be constant.
struct BubbleCalibration {
    double c1 = 0.0;
    double max_spread = 0.0;  ///< max point-to-point deviation of the ratio
    std::size_t samples = 0;
};

inline BubbleCalibration calibrate_bubble_constant(std::size_t n_samples = 64,
                                                   std::uint64_t seed = 1234) {
    const ScalarField u0 = bubble_kernel();
    PointSampler sampler(seed);
    std::vector<double> ratios;
    ratios.reserve(n_samples);
    double mean = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const HeisPoint p = sampler.next();
        const double v = u0(p);
        const double ratio = -sublaplacian(u0, p) / (v * v * v);
        ratios.push_back(ratio);
        mean += ratio;
    }
    mean /= static_cast<double>(n_samples);
    BubbleCalibration cal;
    cal.samples = n_samples;
    cal.c1 = std::sqrt(mean);
    for (double r : ratios) cal.max_spread = std::max(cal.max_spread, std::abs(r - mean));
    return cal;
}

struct HarmonicityReport {
    double max_abs = 0.0;
    std::size_t samples = 0;
};

/// Max |Δ_b u| over random points of the given gauge spheres.
inline HarmonicityReport harmonicity_on_shells(const ScalarField& u,
                                               const std::vector<double>& shells,
                                               std::size_t per_shell, std::uint64_t seed) {
    PointSampler sampler(seed);
    HarmonicityReport rep;
    for (double r : shells) {
        for (std::size_t i = 0; i < per_shell; ++i) {
            const HeisPoint p = sampler.next_in_shell(r, r);
            rep.max_abs = std::max(rep.max_abs, std::abs(sublaplacian(u, p)));
            ++rep.samples;
        }
    }
    return rep;
}

/// Flux of the fundamental solution through gauge spheres. The flux is
/// r-independent; its value κ fixes the boundary-limit constant
/// c = −(Q−2)/2 · κ.
struct FluxReport {
    std::vector<double> radii;
    std::vector<double> fluxes;
    double kappa = 0.0;
    double max_rel_spread = 0.0;
    double cn = 0.0;
};

inline FluxReport fundamental_flux_report(std::vector<double> radii = {0.5, 1.0, 2.0},
                                          std::size_t n_theta = 48, std::size_t n_phi = 96) {
    const ScalarField phi = fundamental_solution_field();
    FluxReport rep;
    rep.radii = std::move(radii);
    for (double r : rep.radii) {
        const SphereRule rule = make_sphere_rule(r, n_theta, n_phi);
        rep.fluxes.push_back(hgrad_flux(phi, rule));
        rep.kappa += rep.fluxes.back();
    }
    rep.kappa /= static_cast<double>(rep.fluxes.size());
    for (double f : rep.fluxes)
        rep.max_rel_spread = std::max(rep.max_rel_spread,
                                      std::abs(f - rep.kappa) / std::abs(rep.kappa));
    rep.cn = -0.5 * (homogeneous_q() - 2.0) * rep.kappa;
    return rep;
}

// ---------------------------------------------------------------------------
// Pohozaev balance for −Δ_b u = f(x, u) on a gauge ball:
//   ∫_Ω (Q F − (Q−2)/2 · u f + Ξ_x F) dV
//     = ∫_∂Ω (F − ½|∇^H u|²) g(Ξ,ν) + (Ξu + (Q−2)/2 · u) g(∇^H u, ν) dσ,
// with F the u-antiderivative of f and Ξ_x the dilation generator applied to
// the x-slot only.
// ---------------------------------------------------------------------------

struct PohozaevData {
    ScalarField u;
    std::function<double(const HeisPoint&)> f;     ///< f(x, u(x))
    std::function<double(const HeisPoint&)> F;     ///< F(x, u(x))
    std::function<double(const HeisPoint&)> xi_F;  ///< (Ξ_x F)(x, u(x))
};

struct PohozaevResolution {
    std::size_t n_rho = 12;
    std::size_t n_theta = 16;
    std::size_t n_phi = 32;

    PohozaevResolution scaled(std::size_t factor) const {
        return PohozaevResolution{n_rho * factor, n_theta * factor, n_phi * factor};
    }
};

struct PohozaevReport {
    double volume_side = 0.0;
    double boundary_side = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double boundary_scale = 0.0;  ///< ∫ of term-wise absolute values, for relative checks
    double pde_residual = 0.0;    ///< max |Δ_b u + f| on sampled interior nodes
};

inline PohozaevReport pohozaev_check(const PohozaevData& data, double R,
                                     const PohozaevResolution& res = {}) {
    const double Q = homogeneous_q();
    const BallRule ball = make_ball_rule(R, res.n_rho, res.n_theta, res.n_phi);
    const SphereRule sphere = make_sphere_rule(R, res.n_theta, res.n_phi);
    PohozaevReport rep;

    for (std::size_t i = 0; i < ball.nodes.size(); ++i) {
        const auto& nd = ball.nodes[i];
        const double uv = data.u(nd.p);
        const double fv = data.f(nd.p);
        rep.volume_side +=
            nd.weight * (Q * data.F(nd.p) - 0.5 * (Q - 2.0) * uv * fv + data.xi_F(nd.p));
        if (i % 17 == 0)
            rep.pde_residual =
                std::max(rep.pde_residual, std::abs(sublaplacian(data.u, nd.p) + fv));
    }

    for (const auto& nd : sphere.nodes) {
        const Jet1 j = data.u.jet1(nd.p);
        const double uv = data.u(nd.p);
        const double grad_nu = nd.normal.a * j.X + nd.normal.b * j.Y;
        const double xi_u = nd.p.x() * j.X + nd.p.y() * j.Y + 2.0 * nd.p.t * j.T;
        const double ngrad2 = 0.25 * (j.X * j.X + j.Y * j.Y);
        const double xi_nu = metric(xi_vector(nd.p), nd.normal);
        const double Fv = data.F(nd.p);
        rep.boundary_side += nd.weight * ((Fv - 0.5 * ngrad2) * xi_nu +
                                          (xi_u + 0.5 * (Q - 2.0) * uv) * grad_nu);
        rep.boundary_scale += nd.weight * (std::abs(Fv * xi_nu) + std::abs(0.5 * ngrad2 * xi_nu) +
                                           std::abs(xi_u * grad_nu) +
                                           std::abs(0.5 * (Q - 2.0) * uv * grad_nu));
    }

    rep.abs_residual = std::abs(rep.volume_side - rep.boundary_side);
    const double denom = std::max(std::abs(rep.volume_side), std::abs(rep.boundary_side));
    rep.rel_residual = denom > 0.0 ? rep.abs_residual / denom : rep.abs_residual;
    return rep;
}

/// Manufactured data: given smooth positive u, set V = −Δ_b u / u³ so that u
/// solves −Δ_b u = V u³ with F = V u⁴/4 and Ξ_x F = (ΞV) u⁴/4.
inline PohozaevData make_manufactured_pohozaev(const ScalarField& u, FDConfig potential_fd = {}) {
    auto pu = std::make_shared<ScalarField>(u);
    auto potential = std::make_shared<ScalarField>(ScalarField::from_eval(
        [pu](const HeisPoint& p) {
            const double v = (*pu)(p);
            return -sublaplacian(*pu, p) / (v * v * v);
        },
        potential_fd));
    PohozaevData data;
    data.u = u;
    data.f = [pu](const HeisPoint& p) { return -sublaplacian(*pu, p); };
    data.F = [pu, potential](const HeisPoint& p) {
        const double v = (*pu)(p);
        return 0.25 * (*potential)(p)*v * v * v * v;
    };
    data.xi_F = [pu, potential](const HeisPoint& p) {
        const double v = (*pu)(p);
        return 0.25 * xi_apply(*potential, p) * v * v * v * v;
    };
    return data;
}

/// Critical-power data f = u³, F = u⁴/4 (no explicit x-dependence, Ξ_x F = 0).
/// At the critical exponent the volume side vanishes identically, so the
/// boundary side must too.
inline PohozaevData make_critical_power_pohozaev(const ScalarField& u) {
    auto pu = std::make_shared<ScalarField>(u);
    PohozaevData data;
    data.u = u;
    data.f = [pu](const HeisPoint& p) {
        const double v = (*pu)(p);
        return v * v * v;
    };
    data.F = [pu](const HeisPoint& p) {
        const double v = (*pu)(p);
        return 0.25 * v * v * v * v;
    };
    data.xi_F = [](const HeisPoint&) { return 0.0; };
    return data;
}

/// Smooth positive non-solution used by the manufactured balance: the bubble
/// kernel modulated by an off-center bump.
inline ScalarField manufactured_positive_field() {
    ScalarField x = coordinate_x(), y = coordinate_y(), t = coordinate_t();
    ScalarField q = lin_comb(1.0, x * x, 1.0, y * y) + scale_values(t * t, 0.25);
    ScalarField shifted = compose_translate(q, HeisPoint(-0.25, 0.15, -0.3));
    ScalarField bump = apply_smooth(
        shifted, [](double s) { return 1.0 + 0.3 * std::exp(-s); },
        [](double s) { return -0.3 * std::exp(-s); },
        [](double s) { return 0.3 * std::exp(-s); });
    return bubble_kernel() * bump;
}

// ---------------------------------------------------------------------------
// Boundary term of the Pohozaev balance and its blow-down limit.
// ---------------------------------------------------------------------------

/// B(u, ∂B_r) = ∫ (Ξu + (Q−2)/2 · u) g(∇^H u, ν) − ½|∇^H u|² g(Ξ,ν) dσ.
inline double pohozaev_boundary_term(const ScalarField& u, const SphereRule& rule) {
    const double Q = homogeneous_q();
    return rule.integrate_with_normal([&u, Q](const HeisPoint& p, const FrameVector& nu) {
        const Jet1 j = u.jet1(p);
        const double grad_nu = nu.a * j.X + nu.b * j.Y;
        const double xi_u = p.x() * j.X + p.y() * j.Y + 2.0 * p.t * j.T;
        const double ngrad2 = 0.25 * (j.X * j.X + j.Y * j.Y);
        const double xi_nu = metric(xi_vector(p), nu);
        return (xi_u + 0.5 * (Q - 2.0) * u(p)) * grad_nu - 0.5 * ngrad2 * xi_nu;
    });
}

/// Solve the 3×3 normal equations of a least-squares fit v ≈ c0 + c1 σ + c2 σ².
inline std::array<double, 3> quadratic_fit(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("quadratic_fit: need at least three samples");
    double m[3][4] = {};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double b[3] = {1.0, xs[i], xs[i] * xs[i]};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += b[r] * b[c];
            m[r][3] += b[r] * ys[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[piv][c]);
        if (m[col][col] == 0.0) throw std::runtime_error("quadratic_fit: singular system");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double w = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= w * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

/// Polynomial extrapolation to x = 0 through all (x, y) samples (Neville).
inline double extrapolate_to_zero(const std::vector<double>& xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("extrapolate_to_zero: need matching nonempty samples");
    for (std::size_t level = 1; level < xs.size(); ++level)
        for (std::size_t i = 0; i + level < xs.size(); ++i)
            ys[i] = (xs[i + level] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + level] - xs[i]);
    return ys[0];
}

struct BoundaryLimitSeries {
    std::vector<double> sigmas;
    std::vector<double> values;  ///< σ^{Q−2} B(u∘δ_σ, ∂B_1)
    double limit = 0.0;          ///< polynomial extrapolation to σ = 0
    double slope = 0.0;          ///< σ-coefficient of the quadratic model fit
    double curvature = 0.0;
    double fit_rms = 0.0;        ///< residual of the quadratic model (diagnostic)
    double limit_error_estimate = 0.0;  ///< change when the largest σ is dropped
};

/// Scaled boundary term along a σ-sequence with a limit + slope·σ + curvature·σ²
/// extrapolation. For u = γ_1|x|^{2−Q} + A + O(|x|²) the limit is −c·A.
inline BoundaryLimitSeries boundary_term_limit(const ScalarField& u,
                                               std::vector<double> sigmas = {0.32, 0.16, 0.08,
                                                                             0.04, 0.02, 0.01},
                                               std::size_t n_theta = 48,
                                               std::size_t n_phi = 96) {
    const SphereRule rule = make_sphere_rule(1.0, n_theta, n_phi);
    const double Q = homogeneous_q();
    BoundaryLimitSeries series;
    series.sigmas = std::move(sigmas);
    for (double sigma : series.sigmas) {
        const ScalarField v = compose_dilate(u, sigma);
        series.values.push_back(std::pow(sigma, Q - 2.0) * pohozaev_boundary_term(v, rule));
    }
    series.limit = extrapolate_to_zero(series.sigmas, series.values);
    if (series.sigmas.size() > 1) {
        std::vector<double> xs(series.sigmas.begin() + 1, series.sigmas.end());
        std::vector<double> ys(series.values.begin() + 1, series.values.end());
        series.limit_error_estimate = std::abs(series.limit - extrapolate_to_zero(xs, ys));
    }
    if (series.sigmas.size() >= 3) {
        const auto coef = quadratic_fit(series.sigmas, series.values);
        series.slope = coef[1];
        series.curvature = coef[2];
        double ss = 0.0;
        for (std::size_t i = 0; i < series.sigmas.size(); ++i) {
            const double s = series.sigmas[i];
            const double pred = coef[0] + coef[1] * s + coef[2] * s * s;
            ss += (series.values[i] - pred) * (series.values[i] - pred);
        }
        series.fit_rms = std::sqrt(ss / static_cast<double>(series.sigmas.size()));
    }
    return series;
}

/// Model field γ_1 |x|^{2−Q} + A, optionally plus an O(|x|²) correction
/// |x|² / (1 + x² + y² + t²).
inline ScalarField singular_expansion_field(double A, bool with_correction = false) {
    ScalarField u = add_const(fundamental_solution_field(), A);
    if (with_correction) {
        ScalarField x = coordinate_x(), y = coordinate_y(), t = coordinate_t();
        ScalarField q = lin_comb(1.0, x * x, 1.0, y * y) + t * t;
        ScalarField rational = apply_smooth(
            q, [](double s) { return 1.0 / (1.0 + s); },
            [](double s) { return -1.0 / ((1.0 + s) * (1.0 + s)); },
            [](double s) { return 2.0 / ((1.0 + s) * (1.0 + s) * (1.0 + s)); });
        u = u + koranyi_power(2.0) * rational;
    }
    return u;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_line: need at least two samples");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    LineFit fit;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += d * d;
    }
    const double ss_tot = syy - sy * sy / n;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace heis
