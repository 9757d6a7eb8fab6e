#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace heis {

/// Gauge kernel polynomial P_a = (a + |z|^2)^2 + t^2 with exact frame jets.
/// a = 0 gives the fourth power of the gauge norm; a = 1 the bubble kernel.
inline ScalarField gauge_kernel(double a) {
    auto eval = [a](const HeisPoint& p) {
        const double r2 = p.x() * p.x() + p.y() * p.y();
        return (a + r2) * (a + r2) + p.t * p.t;
    };
    auto j1 = [a](const HeisPoint& p) {
        const double x = p.x(), y = p.y(), t = p.t;
        const double r2 = x * x + y * y;
        return Jet1{4.0 * x * (a + r2) + 4.0 * y * t, 4.0 * y * (a + r2) - 4.0 * x * t, 2.0 * t};
    };
    auto j2 = [a](const HeisPoint& p) {
        const double x = p.x(), y = p.y(), t = p.t;
        const double r2 = x * x + y * y;
        Jet2 j;
        j.XX = 4.0 * (a + r2) + 8.0 * r2;
        j.YY = j.XX;
        j.XY = -4.0 * t;
        j.YX = 4.0 * t;
        j.TT = 2.0;
        j.XT = 4.0 * y;
        j.YT = -4.0 * x;
        return j;
    };
    return ScalarField::from_jets(eval, j1, j2);
}

/// |x|^alpha = P_0^{alpha/4}. Jets are singular at the origin.
inline ScalarField koranyi_power(double alpha) {
    ScalarField f = pow_field(gauge_kernel(0.0), alpha / 4.0);
    f.with_exclusion(HeisPoint(0.0, 0.0, 0.0), 0.0);
    return f;
}

inline ScalarField koranyi_norm_field() { return koranyi_power(1.0); }

/// gamma_1 = 1/pi: the constant making -Delta_b (gamma_1 |x|^{-2}) the unit mass at 0.
inline double gamma_1() { return 1.0 / M_PI; }

/// Fundamental-solution field gamma_1 |x|^{2-Q} = gamma_1 |x|^{-2} (away from 0).
inline ScalarField fundamental_solution_field() {
    return scale_values(koranyi_power(-2.0), gamma_1());
}

/// Unit bubble kernel (t^2 + (1+|z|^2)^2)^{-1/2}, smooth and positive on all of H^1.
inline ScalarField bubble_kernel() { return pow_field(gauge_kernel(1.0), -0.5); }

/// Bubble c1 * lambda * (kernel ∘ δ_lambda ∘ L_{x0}).
inline ScalarField bubble_field(double c1, double lambda, const HeisPoint& x0) {
    ScalarField u = compose_translate(compose_dilate(bubble_kernel(), lambda), x0);
    return scale_values(u, c1 * lambda);
}

/// Named smooth fields with exact jets, used by finite-difference certification
/// and commutator batteries.
inline std::vector<std::pair<std::string, ScalarField>> standard_battery() {
    std::vector<std::pair<std::string, ScalarField>> out;
    ScalarField x = coordinate_x(), y = coordinate_y(), t = coordinate_t();
    out.emplace_back("affine", add_const(lin_comb(2.0, x, -1.0, lin_comb(1.0, y, -0.5, t)), 1.0));
    out.emplace_back("x_squared", x * x);
    out.emplace_back("quadratic_mix", lin_comb(1.0, x * y, 0.5, t * x) + y * y);
    out.emplace_back("bubble", bubble_kernel());
    ScalarField q = lin_comb(1.0, x * x, 1.0, y * y) + scale_values(t * t, 0.25);
    out.emplace_back("gaussian", apply_smooth(
                                     q, [](double s) { return std::exp(-s); },
                                     [](double s) { return -std::exp(-s); },
                                     [](double s) { return std::exp(-s); }));
    return out;
}

}  // namespace heis
