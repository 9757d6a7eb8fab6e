#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "heis/analytic.hpp"
#include "heis/blowup.hpp"
#include "heis/calculus.hpp"
#include "heis/grid.hpp"
#include "heis/identities.hpp"
#include "heis/ordercalc.hpp"
#include "heis/point.hpp"
#include "heis/quadrature.hpp"
#include "heis/report.hpp"
#include "heis/solver.hpp"

namespace heis {

struct SuiteOptions {
    std::uint64_t seed = 7;
    double resolution_scale = 1.0;
    std::map<std::string, double> tolerances;

    double tol(const std::string& check, double fallback) const {
        const auto it = tolerances.find(check);
        return it == tolerances.end() ? fallback : it->second;
    }

    std::size_t scaled(std::size_t n, std::size_t floor_n = 8) const {
        const auto s = static_cast<std::size_t>(std::lround(resolution_scale * double(n)));
        return std::max(floor_n, s);
    }
};

namespace detail {

inline double point_gap(const HeisPoint& a, const HeisPoint& b) {
    double m = std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.z.size(); ++i)
        m = std::max(m, std::abs(a.z[i] - b.z[i]));
    return m;
}

inline CheckRecord make_check(std::string suite, std::string name, std::string ref,
                              double residual, double tolerance) {
    CheckRecord c;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.ref = std::move(ref);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// core: group structure, dilations, gauge.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_core_suite(const SuiteOptions& opts) {
    using detail::make_check;
    using detail::point_gap;
    std::vector<CheckRecord> out;
    const std::size_t n = 2000;

    {
        PointSampler s(opts.seed);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const HeisPoint a = s.next(), b = s.next(), c = s.next();
            r = std::max(r, point_gap(group_mul(group_mul(a, b), c),
                                      group_mul(a, group_mul(b, c))));
        }
        out.push_back(make_check("core", "associativity", "group-structure", r,
                                 opts.tol("associativity", 1e-12)));
    }
    {
        PointSampler s(opts.seed + 1);
        double r = 0.0;
        const HeisPoint e(0.0, 0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const HeisPoint a = s.next();
            r = std::max(r, point_gap(group_mul(a, group_inv(a)), e));
            r = std::max(r, point_gap(group_mul(group_inv(a), a), e));
        }
        out.push_back(make_check("core", "inverse_identity", "group-structure", r,
                                 opts.tol("inverse_identity", 1e-12)));
    }
    {
        PointSampler s(opts.seed + 2);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const HeisPoint a = s.next(), b = s.next();
            const double lam = s.uniform(0.2, 5.0);
            r = std::max(r, point_gap(dilate(group_mul(a, b), lam),
                                      group_mul(dilate(a, lam), dilate(b, lam))));
        }
        out.push_back(make_check("core", "dilation_homomorphism", "dilation-scaling", r,
                                 opts.tol("dilation_homomorphism", 1e-12)));
    }
    {
        PointSampler s(opts.seed + 3);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const HeisPoint a = s.next();
            const double lam = s.uniform(0.2, 5.0);
            const double expected = lam * koranyi_norm(a);
            if (expected < 1e-9) continue;
            r = std::max(r, std::abs(koranyi_norm(dilate(a, lam)) - expected) / expected);
        }
        out.push_back(make_check("core", "gauge_dilation_homogeneity", "gauge-homogeneity",
                                 r, opts.tol("gauge_dilation_homogeneity", 1e-12)));
    }
    {
        PointSampler s(opts.seed + 4);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const HeisPoint a = s.next(), b = s.next(), c = s.next();
            const double d0 = koranyi_dist(a, b);
            if (d0 < 1e-9) continue;
            const double d1 = koranyi_dist(group_mul(c, a), group_mul(c, b));
            r = std::max(r, std::abs(d1 - d0) / d0);
        }
        out.push_back(make_check("core", "left_invariant_distance", "gauge-invariance", r,
                                 opts.tol("left_invariant_distance", 1e-12)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// calculus: dilation generator, frames, metric.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_calculus_suite(const SuiteOptions& opts) {
    using detail::make_check;
    std::vector<CheckRecord> out;

    {
        PointSampler s(opts.seed + 10);
        auto xi_components = [](const HeisPoint& p, double& vx, double& vy, double& vt) {
            vx = p.x();
            vy = p.y();
            vt = 2.0 * p.t;
        };
        double r = 0.0;
        for (std::size_t i = 0; i < 1000; ++i)
            r = std::max(r, std::abs(coordinate_divergence(xi_components, s.next()) - 4.0));
        out.push_back(make_check("calculus", "xi_divergence", "xi-divergence", r,
                                 opts.tol("xi_divergence", 1e-8)));
    }

    const auto battery = standard_battery();
    auto commutator_residual = [&battery, &opts](FrameOp horizontal, std::uint64_t seed) {
        PointSampler s(seed, 1.5);
        double r = 0.0;
        for (const auto& [name, f] : battery) {
            const ScalarField xi_f = frame_derivative_field(FrameOp::Xi, f);
            const ScalarField df = frame_derivative_field(horizontal, f);
            for (std::size_t i = 0; i < 40; ++i) {
                const HeisPoint p = s.next();
                const double want = frame_apply(horizontal, f, p);
                const double got = frame_apply(horizontal, xi_f, p) - xi_apply(df, p);
                r = std::max(r, std::abs(got - want) / (1.0 + std::abs(want)));
            }
        }
        (void)opts;
        return r;
    };
    out.push_back(make_check("calculus", "xi_commutator_x", "xi-commutators",
                             commutator_residual(FrameOp::X, opts.seed + 11),
                             opts.tol("xi_commutator_x", 1e-6)));
    out.push_back(make_check("calculus", "xi_commutator_y", "xi-commutators",
                             commutator_residual(FrameOp::Y, opts.seed + 12),
                             opts.tol("xi_commutator_y", 1e-6)));

    {
        PointSampler s(opts.seed + 13, 1.5);
        double r = 0.0;
        for (const auto& [name, f] : battery) {
            const ScalarField xf = frame_derivative_field(FrameOp::X, f);
            const ScalarField yf = frame_derivative_field(FrameOp::Y, f);
            for (std::size_t i = 0; i < 40; ++i) {
                const HeisPoint p = s.next();
                const double bracket =
                    frame_apply(FrameOp::X, yf, p) - frame_apply(FrameOp::Y, xf, p);
                const double want = -4.0 * frame_apply(FrameOp::T, f, p);
                r = std::max(r, std::abs(bracket - want) / (1.0 + std::abs(want)));
            }
        }
        out.push_back(make_check("calculus", "frame_bracket", "frame-bracket", r,
                                 opts.tol("frame_bracket", 1e-6)));
    }

    {
        double r = 0.0;
        CheckRecord c;
        for (double alpha : {1.0, -2.0, 2.0}) {
            const ScalarField f = koranyi_power(alpha);
            PointSampler s(opts.seed + 14);
            for (std::size_t i = 0; i < 300; ++i) {
                const HeisPoint p = s.next_in_shell(0.5, 2.0);
                const double want = alpha * f(p);
                r = std::max(r, std::abs(xi_apply(f, p) - want) / std::abs(want));
            }
        }
        c = make_check("calculus", "euler_homogeneity", "euler-identity", r,
                       opts.tol("euler_homogeneity", 1e-8));
        out.push_back(c);
    }

    {
        const FrameVector xh{0.5, 0.0, 0.0}, yh{0.0, 0.5, 0.0}, tv{0.0, 0.0, 1.0};
        double r = 0.0;
        r = std::max(r, std::abs(metric(xh, xh) - 1.0));
        r = std::max(r, std::abs(metric(yh, yh) - 1.0));
        r = std::max(r, std::abs(metric(tv, tv) - 1.0));
        r = std::max(r, std::abs(metric(xh, yh)));
        r = std::max(r, std::abs(metric(xh, tv)));
        r = std::max(r, std::abs(metric(yh, tv)));
        out.push_back(make_check("calculus", "frame_orthonormality", "adapted-metric", r,
                                 opts.tol("frame_orthonormality", 0.0)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// quadrature: rules, volumes, divergence theorem.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_quadrature_suite(const SuiteOptions& opts) {
    using detail::make_check;
    std::vector<CheckRecord> out;

    {
        const Quad1D q = gauss_legendre(12, 0.0, 2.0);
        double r = 0.0;
        for (int k = 0; k <= 23; ++k) {
            double got = 0.0;
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                got += q.weights[i] * std::pow(q.nodes[i], k);
            const double want = std::pow(2.0, k + 1) / (k + 1.0);
            r = std::max(r, std::abs(got - want) / want);
        }
        out.push_back(make_check("quadrature", "gauss_legendre_polynomials", "plumbing", r,
                                 opts.tol("gauss_legendre_polynomials", 1e-12)));
    }
    {
        const Quad1D q = periodic_trapezoid(16);
        double r = 0.0;
        for (int k = 1; k <= 6; ++k) {
            double moment = 0.0, square = 0.0;
            for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                moment += q.weights[i] * std::cos(k * q.nodes[i]);
                square += q.weights[i] * std::cos(k * q.nodes[i]) * std::cos(k * q.nodes[i]);
            }
            r = std::max(r, std::abs(moment));
            r = std::max(r, std::abs(square - M_PI));
        }
        out.push_back(make_check("quadrature", "trapezoid_trigonometric", "plumbing", r,
                                 opts.tol("trapezoid_trigonometric", 1e-12)));
    }
    {
        const double v1 = make_ball_rule(1.0, 24, 16, 32).volume();
        const double want = 2.0 * M_PI * M_PI;
        CheckRecord c = make_check("quadrature", "ball_volume", "gauge-ball-volume",
                                   std::abs(v1 - want) / want, opts.tol("ball_volume", 1e-10));
        c.values = {{"volume", v1}, {"expected", want}};
        out.push_back(c);
    }
    {
        const double v1 = make_ball_rule(1.0, 24, 16, 32).volume();
        const double v2 = make_ball_rule(2.0, 24, 16, 32).volume();
        out.push_back(make_check("quadrature", "volume_dilation_scaling", "dilation-scaling",
                                 std::abs(v2 / v1 - 16.0) / 16.0,
                                 opts.tol("volume_dilation_scaling", 1e-10)));
    }
    {
        const double inner = make_ball_rule(0.5, 20, 16, 32).volume();
        const double shell = make_shell_rule(0.5, 1.0, 20, 16, 32).volume();
        const double full = make_ball_rule(1.0, 20, 16, 32).volume();
        out.push_back(make_check("quadrature", "shell_additivity", "plumbing",
                                 std::abs(inner + shell - full) / full,
                                 opts.tol("shell_additivity", 1e-10)));
    }
    {
        const ScalarField f = standard_battery().back().second;  // gaussian
        const double R = 1.5;
        const BallRule ball = make_ball_rule(R, 20, 16, 32);
        const SphereRule sphere = make_sphere_rule(R, 32, 64);
        const double vol = ball.integrate([&f](const HeisPoint& p) { return sublaplacian(f, p); });
        const double flux = hgrad_flux(f, sphere);
        CheckRecord c = make_check("quadrature", "green_identity", "green-identity",
                                   std::abs(vol - flux) / std::abs(flux),
                                   opts.tol("green_identity", 1e-6));
        c.values = {{"volume_integral", vol}, {"flux", flux}};
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// identities: fundamental solution, bubble, boundary-term limit, balance law.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_identities_suite(const SuiteOptions& opts) {
    using detail::make_check;
    std::vector<CheckRecord> out;

    {
        const HarmonicityReport rep = harmonicity_on_shells(
            fundamental_solution_field(), {0.25, 1.0, 4.0}, 100, opts.seed + 20);
        CheckRecord c = make_check("identities", "fundamental_solution_harmonic",
                                   "fundamental-solution", rep.max_abs,
                                   opts.tol("fundamental_solution_harmonic", 1e-8));
        c.values = {{"samples", double(rep.samples)}};
        out.push_back(c);
    }

    const FluxReport flux = fundamental_flux_report();
    {
        CheckRecord c = make_check("identities", "fundamental_flux_constant",
                                   "flux-constancy", flux.max_rel_spread,
                                   opts.tol("fundamental_flux_constant", 1e-5));
        c.values = {{"kappa", flux.kappa}};
        for (std::size_t i = 0; i < flux.radii.size(); ++i)
            c.values.emplace_back("flux_r" + format_double(flux.radii[i]), flux.fluxes[i]);
        out.push_back(c);
    }
    {
        CheckRecord c = make_check("identities", "flux_sign", "mass-constant-sign",
                                   flux.kappa < 0.0 ? 0.0 : 1.0, 0.5);
        c.values = {{"kappa", flux.kappa}, {"cn", flux.cn}};
        out.push_back(c);
    }
    {
        const FluxReport coarse = fundamental_flux_report({0.5, 1.0, 2.0}, 32, 64);
        const FluxReport fine = fundamental_flux_report({0.5, 1.0, 2.0}, 64, 128);
        const double rel = std::abs(fine.cn - coarse.cn) / std::abs(fine.cn);
        CheckRecord c = make_check("identities", "mass_constant_stability",
                                   "mass-constant-limit", rel,
                                   opts.tol("mass_constant_stability", 1e-5));
        c.pass = c.pass && fine.cn > 0.0;
        c.values = {{"cn_coarse", coarse.cn}, {"cn_fine", fine.cn}};
        out.push_back(c);
    }
    {
        const double q = homogeneous_q();
        const double rel = std::abs(flux.cn + 0.5 * (q - 2.0) * flux.kappa);
        CheckRecord c = make_check("identities", "mass_constant_relation",
                                   "mass-constant-limit", rel,
                                   opts.tol("mass_constant_relation", 1e-6));
        c.values = {{"cn", flux.cn}, {"kappa", flux.kappa}, {"q", q}};
        out.push_back(c);
    }

    const BubbleCalibration cal = calibrate_bubble_constant(64, opts.seed + 21);
    {
        CheckRecord c = make_check("identities", "bubble_normalization",
                                   "bubble-normalization",
                                   std::max(std::abs(cal.c1 - 1.0), cal.max_spread),
                                   opts.tol("bubble_normalization", 1e-10));
        c.values = {{"c1", cal.c1}, {"spread", cal.max_spread}};
        out.push_back(c);
    }
    {
        PointSampler s(opts.seed + 22);
        double r = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const double lam = s.uniform(0.5, 2.5);
            const HeisPoint x0 = s.next();
            const ScalarField u = bubble_field(cal.c1, lam, x0);
            for (std::size_t i = 0; i < 2000; ++i) {
                const HeisPoint p = s.next();
                const double cube = std::pow(u(p), 3);
                r = std::max(r, std::abs(-sublaplacian(u, p) - cube) / std::abs(cube));
            }
        }
        out.push_back(make_check("identities", "bubble_equation", "bubble-equation", r,
                                 opts.tol("bubble_equation", 1e-6)));
    }

    std::vector<double> a_values = {-2.0, 0.0, 1.0};
    std::vector<double> limits;
    for (double A : a_values) {
        const ScalarField u = singular_expansion_field(A, true);
        const BoundaryLimitSeries series = boundary_term_limit(u);
        limits.push_back(series.limit);
        const double want = -flux.cn * A;
        const double tol_scale = std::max(1.0, std::abs(A));
        CheckRecord c = make_check(
            "identities", "boundary_limit_a" + format_double(A), "boundary-term-limit",
            std::abs(series.limit - want), opts.tol("boundary_limit", 1e-3) * tol_scale);
        c.values = {{"limit", series.limit},
                    {"expected", want},
                    {"error_estimate", series.limit_error_estimate},
                    {"fit_rms", series.fit_rms}};
        out.push_back(c);
    }
    {
        const LineFit fit = fit_line(a_values, limits);
        CheckRecord c = make_check("identities", "boundary_limit_linearity",
                                   "boundary-term-limit", 1.0 - fit.r_squared,
                                   opts.tol("boundary_limit_linearity", 1e-6));
        c.values = {{"slope", fit.slope}, {"intercept", fit.intercept},
                    {"r_squared", fit.r_squared}};
        out.push_back(c);
        CheckRecord s = make_check(
            "identities", "boundary_limit_slope", "boundary-term-limit",
            std::max(std::abs(fit.slope + flux.cn), std::abs(fit.intercept)),
            opts.tol("boundary_limit_slope", 1e-4));
        s.values = {{"slope", fit.slope}, {"expected_slope", -flux.cn},
                    {"intercept", fit.intercept}};
        out.push_back(s);
    }

    {
        const ScalarField u = manufactured_positive_field();
        const PohozaevData data = make_manufactured_pohozaev(u);
        const PohozaevResolution res;
        const PohozaevReport base = pohozaev_check(data, 1.0, res);
        const PohozaevReport fine = pohozaev_check(data, 1.0, res.scaled(2));
        {
            CheckRecord c = make_check("identities", "pohozaev_manufactured",
                                       "pohozaev-balance", base.rel_residual,
                                       opts.tol("pohozaev_manufactured", 1e-4));
            c.values = {{"volume_side", base.volume_side},
                        {"boundary_side", base.boundary_side},
                        {"pde_residual", base.pde_residual}};
            out.push_back(c);
        }
        {
            const double order = std::log2(base.rel_residual / fine.rel_residual);
            CheckRecord c = make_check("identities", "pohozaev_resolution_order",
                                       "pohozaev-balance", std::max(0.0, 2.0 - order),
                                       opts.tol("pohozaev_resolution_order", 0.0));
            c.values = {{"order", order},
                        {"rel_residual_base", base.rel_residual},
                        {"rel_residual_fine", fine.rel_residual}};
            out.push_back(c);
        }
    }
    {
        const PohozaevData data = make_critical_power_pohozaev(bubble_kernel());
        const PohozaevReport rep = pohozaev_check(data, 1.0, PohozaevResolution{});
        CheckRecord c = make_check("identities", "pohozaev_critical_boundary",
                                   "critical-cancellation", std::abs(rep.boundary_side),
                                   opts.tol("pohozaev_critical_boundary", 1e-5) *
                                       rep.boundary_scale);
        c.values = {{"boundary_side", rep.boundary_side},
                    {"volume_side", rep.volume_side},
                    {"scale", rep.boundary_scale}};
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// blowup: rescaling covariance, profiles.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_blowup_suite(const SuiteOptions& opts) {
    using detail::make_check;
    using detail::point_gap;
    std::vector<CheckRecord> out;

    {
        PointSampler s(opts.seed + 30);
        double r = 0.0;
        for (std::size_t i = 0; i < 2000; ++i) {
            const HeisPoint a = s.next();
            const double lam = s.uniform(0.2, 5.0), mu = s.uniform(0.2, 5.0);
            r = std::max(r, point_gap(dilate(dilate(a, mu), lam), dilate(a, lam * mu)));
        }
        out.push_back(make_check("blowup", "dilation_semigroup", "dilation-scaling", r,
                                 opts.tol("dilation_semigroup", 1e-12)));
    }
    {
        PointSampler s(opts.seed + 31);
        const auto battery = standard_battery();
        const ScalarField& gaussian = battery.back().second;
        double r = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const double lam = s.uniform(0.4, 3.0);
            const HeisPoint x0 = s.next();
            std::vector<HeisPoint> pts;
            for (int i = 0; i < 50; ++i) pts.push_back(s.next());
            const CovarianceReport rep = covariance_check(gaussian, lam, x0, pts);
            r = std::max(r, rep.max_rel_residual);
        }
        out.push_back(make_check("blowup", "operator_dilation_covariance",
                                 "rescaling-covariance", r,
                                 opts.tol("operator_dilation_covariance", 1e-6)));
    }
    {
        PointSampler s(opts.seed + 32);
        double r = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const double lam = s.uniform(0.4, 3.0);
            const HeisPoint x0 = s.next();
            const ScalarField v = blowup_rescale(bubble_kernel(), lam, x0, 3.0);
            for (int i = 0; i < 200; ++i) {
                const HeisPoint p = s.next();
                const double cube = std::pow(v(p), 3);
                r = std::max(r, std::abs(-sublaplacian(v, p) - cube) / std::abs(cube));
            }
        }
        out.push_back(make_check("blowup", "equation_form_preservation",
                                 "rescaling-covariance", r,
                                 opts.tol("equation_form_preservation", 1e-6)));
    }

    const std::vector<double> lambdas = {1.0, 5.0, 25.0};
    std::vector<double> argmax_radii;
    std::size_t critical_count = 0;
    bool peak_is_max = true;
    for (double lam : lambdas) {
        const ScalarField u = bubble_field(1.0, lam, HeisPoint(0.0, 0.0, 0.0));
        const RadialProfile prof = radial_profile(u);
        const auto crits = critical_points(prof);
        if (lam == 1.0) {
            critical_count = crits.size();
            for (const auto& c : crits) peak_is_max = peak_is_max && c.is_max;
        }
        argmax_radii.push_back(prof.radii[argmax_index(prof.wbar)]);
    }
    {
        CheckRecord c = make_check("blowup", "profile_single_peak", "isolated-simple-profile",
                                   std::abs(double(critical_count) - 1.0), 0.0);
        c.pass = c.pass && peak_is_max;
        c.values = {{"critical_points", double(critical_count)}};
        out.push_back(c);
    }
    {
        const double step = std::log(std::pow(1e2 / 1e-2, 1.0 / 199.0));
        double r = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            r = std::max(r, std::abs(std::log(argmax_radii[i] * lambdas[i] / argmax_radii[0])));
        CheckRecord c = make_check("blowup", "argmax_inverse_scaling",
                                   "isolated-simple-profile", r,
                                   opts.tol("argmax_inverse_scaling", 1.5 * step));
        c.values = {{"r_lambda1", argmax_radii[0]},
                    {"r_lambda5", argmax_radii[1]},
                    {"r_lambda25", argmax_radii[2]},
                    {"grid_log_step", step}};
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// solver: discrete operator, Dirichlet oracle, concentration sweep.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_solver_suite(const SuiteOptions& opts) {
    using detail::make_check;
    std::vector<CheckRecord> out;
    const GridBox box;
    const ScalarField oracle = scale_values(bubble_kernel(), 2.0);
    auto oracle_fn = [&oracle](const HeisPoint& p) { return oracle(p); };

    {
        const double e1 = operator_consistency_sup(Grid(box, 17), oracle);
        const double e2 = operator_consistency_sup(Grid(box, 33), oracle);
        const double order = std::log2(e1 / e2);
        CheckRecord c = make_check("solver", "operator_consistency_order", "plumbing",
                                   std::max(0.0, 1.8 - order),
                                   opts.tol("operator_consistency_order", 0.0));
        c.values = {{"order", order}, {"error_coarse", e1}, {"error_fine", e2}};
        out.push_back(c);
    }

    double err32 = 0.0;
    {
        const Grid g(box, opts.scaled(32));
        NewtonReport rep;
        const DiscreteField u = solve_critical_power(g, oracle_fn, rep);
        err32 = u.interior_sup_rel_error(oracle_fn);
        CheckRecord c = make_check("solver", "critical_power_dirichlet", "bubble-equation",
                                   err32, opts.tol("critical_power_dirichlet", 5e-2));
        c.pass = c.pass && rep.converged;
        c.values = {{"rel_sup_error", err32},
                    {"newton_iterations", double(rep.iterations)},
                    {"newton_residual", rep.final_residual},
                    {"n", double(g.n())}};
        out.push_back(c);
    }
    {
        const Grid g(box, opts.scaled(48));
        NewtonReport rep;
        const DiscreteField u = solve_critical_power(g, oracle_fn, rep);
        const double err48 = u.interior_sup_rel_error(oracle_fn);
        CheckRecord c = make_check("solver", "critical_power_refinement", "bubble-equation",
                                   std::max(0.0, err48 - err32),
                                   opts.tol("critical_power_refinement", 0.0));
        c.pass = c.pass && rep.converged && err48 <= 5e-2;
        c.values = {{"rel_sup_error_coarse", err32},
                    {"rel_sup_error_fine", err48},
                    {"n", double(g.n())}};
        out.push_back(c);
    }
    {
        const Grid g(box, opts.scaled(24));
        const auto rows = concentration_sweep(g, {2.2, 2.5, 2.8}, 200);
        int violations = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (!(rows[i].max_value > rows[i - 1].max_value)) ++violations;
            if (!(rows[i].half_height_radius < rows[i - 1].half_height_radius)) ++violations;
        }
        CheckRecord c = make_check("solver", "concentration_sweep_monotone",
                                   "subcritical-concentration", double(violations),
                                   opts.tol("concentration_sweep_monotone", 0.0));
        for (const auto& row : rows) {
            c.values.emplace_back("max_p" + format_double(row.p), row.max_value);
            c.values.emplace_back("rhalf_p" + format_double(row.p), row.half_height_radius);
        }
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ordercalc: symbolic order tables.
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> run_ordercalc_suite(const SuiteOptions& opts) {
    using detail::make_check;
    std::vector<CheckRecord> out;

    {
        std::vector<OrderScalar> scalars = {OrderScalar::zero(), OrderScalar::one()};
        for (int k = 0; k <= 4; ++k) {
            scalars.push_back(OrderScalar::big_o(k));
            scalars.push_back(OrderScalar::unit_plus(k));
        }
        int violations = 0;
        for (const auto& a : scalars)
            for (const auto& b : scalars) {
                if (!(o_add(a, b) == o_add(b, a))) ++violations;
                if (!(o_mul(a, b) == o_mul(b, a))) ++violations;
                for (const auto& c : scalars) {
                    if (!(o_add(o_add(a, b), c) == o_add(a, o_add(b, c)))) ++violations;
                    if (!(o_mul(o_mul(a, b), c) == o_mul(a, o_mul(b, c)))) ++violations;
                    if (!(o_mul(a, o_add(b, c)) == o_add(o_mul(a, b), o_mul(a, c))))
                        ++violations;
                }
            }
        out.push_back(make_check("ordercalc", "order_arithmetic_laws", "plumbing",
                                 double(violations), 0.0));
    }
    {
        const FrameExpansion fwd = derive_forward_first_order();
        const FrameExpansion inv = derive_inverse_first_order();
        int violations = 0;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) {
                OrderScalar acc = OrderScalar::zero();
                for (std::size_t j = 0; j < 3; ++j)
                    acc = o_add(acc, o_mul(inv[r][j], fwd[j][c]));
                if (r == c && !acc.unit) ++violations;
                if (r != c && !acc.is_zero() && acc.order < 1) ++violations;
            }
        out.push_back(make_check("ordercalc", "frame_inverse_consistency", "frame-expansion",
                                 double(violations), 0.0));
    }

    auto table_check = [&out](const std::string& name, const std::string& ref,
                              const std::string& table,
                              const std::vector<SlotComparison>& all, bool allow_known) {
        int mismatches = 0, unexplained = 0;
        std::string note;
        for (const auto& c : all) {
            if (c.table != table || c.kind == MatchKind::equal) continue;
            ++mismatches;
            if (!allow_known || !is_known_open_mismatch(c)) ++unexplained;
            if (!note.empty()) note += "; ";
            note += c.row + "/" + c.slot + ": claimed " + to_string(c.claimed) + ", derived " +
                    to_string(c.derived);
        }
        CheckRecord rec = make_check("ordercalc", name, ref, double(unexplained), 0.0);
        rec.values = {{"mismatches", double(mismatches)},
                      {"unexplained", double(unexplained)}};
        rec.note = note;
        out.push_back(rec);
    };

    const auto all = compare_order_tables();
    table_check("forward_first_order_table", "frame-expansion", "forward_first_order", all,
                false);
    table_check("inverse_first_order_table", "frame-expansion", "inverse_first_order", all,
                false);
    table_check("neumann_square_table", "frame-expansion", "neumann_square", all, false);
    table_check("second_order_table", "second-order-expansion", "inverse_second_order", all,
                true);
    table_check("covariant_bound_table", "derivative-bounds", "covariant_bounds", all, true);
    table_check("sublaplacian_table", "sublaplacian-expansion", "sublaplacian_expansion",
                all, false);
    table_check("sublaplacian_bound_table", "sublaplacian-expansion", "sublaplacian_bound",
                all, false);

    {
        const auto strict = compare_order_tables(strict_homogeneous_rule());
        int equal = 0, weaker = 0, stronger = 0, structural = 0;
        for (const auto& c : strict) {
            switch (c.kind) {
                case MatchKind::equal: ++equal; break;
                case MatchKind::derived_weaker: ++weaker; break;
                case MatchKind::derived_stronger: ++stronger; break;
                case MatchKind::structural_mismatch: ++structural; break;
            }
        }
        CheckRecord c = make_check("ordercalc", "strict_rule_comparison", "plumbing",
                                   double(structural), 0.0);
        c.values = {{"equal", double(equal)},
                    {"derived_weaker", double(weaker)},
                    {"derived_stronger", double(stronger)},
                    {"structural_mismatch", double(structural)}};
        c.note = "informational census under the strict homogeneous derivative rule";
        out.push_back(c);
    }
    (void)opts;
    return out;
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "core", "calculus", "quadrature", "identities", "blowup", "solver", "ordercalc"};
    return names;
}

inline std::vector<CheckRecord> run_suite(const std::string& name, const SuiteOptions& opts) {
    if (name == "core") return run_core_suite(opts);
    if (name == "calculus") return run_calculus_suite(opts);
    if (name == "quadrature") return run_quadrature_suite(opts);
    if (name == "identities") return run_identities_suite(opts);
    if (name == "blowup") return run_blowup_suite(opts);
    if (name == "solver") return run_solver_suite(opts);
    if (name == "ordercalc") return run_ordercalc_suite(opts);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace heis
