#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "point.hpp"

namespace heis {

/// Central-difference configuration. Steps scale anisotropically with the
/// evaluation point: h_xy = base_step * s and h_t = base_step * s^2 where
/// s = max(1, |x|), matching the scaling of the coordinates themselves.
struct FDConfig {
    double base_step = 1e-3;
    int richardson_depth = 2;  // 1..4: number of step halvings combined

    void validate() const {
        if (!(base_step > 0.0)) throw std::invalid_argument("FDConfig: base_step must be positive");
        if (richardson_depth < 1 || richardson_depth > 4)
            throw std::invalid_argument("FDConfig: richardson_depth must be in [1,4]");
    }
};

namespace detail {

using Eval = std::function<double(const HeisPoint&)>;

enum class Axis { X, Y, T };

inline HeisPoint shift(const HeisPoint& p, Axis a, double h) {
    HeisPoint q = p;
    switch (a) {
        case Axis::X: q.z[0] += std::complex<double>(h, 0.0); break;
        case Axis::Y: q.z[0] += std::complex<double>(0.0, h); break;
        case Axis::T: q.t += h; break;
    }
    return q;
}

inline double step_underflow_guard(const HeisPoint& p, Axis a, double h) {
    double base = (a == Axis::T) ? std::abs(p.t) : std::hypot(p.x(), p.y());
    if (base + h == base) throw std::runtime_error("finite-difference step underflow");
    return h;
}

/// Richardson triangle over step halvings; rows eliminate even error powers.
template <typename Stencil>
inline double richardson(Stencil&& stencil, double h, int depth) {
    double table[4][4];
    for (int k = 0; k < depth; ++k) {
        table[k][0] = stencil(h / double(1 << k));
        for (int j = 1; j <= k; ++j) {
            const double w = std::pow(4.0, j);
            table[k][j] = (w * table[k][j - 1] - table[k - 1][j - 1]) / (w - 1.0);
        }
    }
    return table[depth - 1][depth - 1];
}

inline double axis_step(const HeisPoint& p, Axis a, const FDConfig& cfg) {
    const double s = std::max(1.0, koranyi_norm(p));
    return (a == Axis::T) ? cfg.base_step * s * s : cfg.base_step * s;
}

inline double partial1(const Eval& f, const HeisPoint& p, Axis a, const FDConfig& cfg) {
    const double h0 = axis_step(p, a, cfg);
    step_underflow_guard(p, a, h0 / double(1 << (cfg.richardson_depth - 1)));
    return richardson(
        [&](double h) { return (f(shift(p, a, h)) - f(shift(p, a, -h))) / (2.0 * h); }, h0,
        cfg.richardson_depth);
}

inline double partial2(const Eval& f, const HeisPoint& p, Axis a, const FDConfig& cfg) {
    const double h0 = axis_step(p, a, cfg);
    step_underflow_guard(p, a, h0 / double(1 << (cfg.richardson_depth - 1)));
    const double f0 = f(p);
    return richardson(
        [&](double h) { return (f(shift(p, a, h)) - 2.0 * f0 + f(shift(p, a, -h))) / (h * h); },
        h0, cfg.richardson_depth);
}

inline double partial_mixed(const Eval& f, const HeisPoint& p, Axis a, Axis b,
                            const FDConfig& cfg) {
    const double ha0 = axis_step(p, a, cfg);
    const double hb0 = axis_step(p, b, cfg);
    step_underflow_guard(p, a, ha0 / double(1 << (cfg.richardson_depth - 1)));
    step_underflow_guard(p, b, hb0 / double(1 << (cfg.richardson_depth - 1)));
    const double ratio = hb0 / ha0;
    return richardson(
        [&](double h) {
            const double hb = h * ratio;
            return (f(shift(shift(p, a, h), b, hb)) - f(shift(shift(p, a, h), b, -hb)) -
                    f(shift(shift(p, a, -h), b, hb)) + f(shift(shift(p, a, -h), b, -hb))) /
                   (4.0 * h * hb);
        },
        ha0, cfg.richardson_depth);
}

}  // namespace detail

}  // namespace heis
