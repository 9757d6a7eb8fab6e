#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "quadrature.hpp"

namespace heis {

/// Blow-up rescaling λ^{2/(p−1)} · u ∘ δ_λ ∘ L_{x0}. At the critical exponent
/// p = 3 the prefactor is λ, and the family maps solutions of −Δ_b u = u^p to
/// solutions.
inline ScalarField blowup_rescale(const ScalarField& u, double lambda, const HeisPoint& x0,
                                  double p_exp = 3.0) {
    if (!(p_exp > 1.0)) throw std::invalid_argument("blowup_rescale: need p > 1");
    const double pref = std::pow(lambda, 2.0 / (p_exp - 1.0));
    return scale_values(compose_translate(compose_dilate(u, lambda), x0), pref);
}

/// Sphere integral of the dilated field: ubar(r) = ∫_{∂B_1} u ∘ δ_r dσ.
inline double spherical_average(const ScalarField& u, double r, const SphereRule& unit_rule) {
    return unit_rule.integrate([&u, r](const HeisPoint& p) { return u(dilate(p, r)); });
}

struct RadialProfile {
    double exponent_p = 3.0;
    std::vector<double> radii;
    std::vector<double> ubar;
    std::vector<double> wbar;  ///< r^{2/(p−1)} ubar(r)
};

/// Profile on a logarithmic radius grid.
inline RadialProfile radial_profile(const ScalarField& u, double p_exp = 3.0, double r_lo = 1e-2,
                                    double r_hi = 1e2, std::size_t n_radii = 200,
                                    std::size_t n_theta = 24, std::size_t n_phi = 48) {
    if (!(0.0 < r_lo && r_lo < r_hi)) throw std::invalid_argument("radial_profile: bad radius range");
    if (n_radii < 2) throw std::invalid_argument("radial_profile: need at least two radii");
    const SphereRule rule = make_sphere_rule(1.0, n_theta, n_phi);
    RadialProfile prof;
    prof.exponent_p = p_exp;
    prof.radii.reserve(n_radii);
    const double lg_lo = std::log10(r_lo), lg_hi = std::log10(r_hi);
    for (std::size_t i = 0; i < n_radii; ++i) {
        const double lg = lg_lo + (lg_hi - lg_lo) * static_cast<double>(i) /
                                      static_cast<double>(n_radii - 1);
        const double r = std::pow(10.0, lg);
        prof.radii.push_back(r);
        prof.ubar.push_back(spherical_average(u, r, rule));
        prof.wbar.push_back(std::pow(r, 2.0 / (p_exp - 1.0)) * prof.ubar.back());
    }
    return prof;
}

struct CriticalPoint {
    std::size_t index = 0;
    double radius = 0.0;
    double value = 0.0;
    bool is_max = false;
};

/// Interior extrema of wbar. Steps smaller than flat_tol relative to the local
/// value count as flat; a flat run between opposite slopes collapses to its
/// midpoint.
inline std::vector<CriticalPoint> critical_points(const RadialProfile& prof,
                                                  double flat_tol = 1e-12) {
    const auto& w = prof.wbar;
    std::vector<CriticalPoint> out;
    if (w.size() < 3) return out;
    int last_sign = 0;
    std::size_t last_pos = 0;  // index of the step where last_sign was seen
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double d = w[i + 1] - w[i];
        const double scale = std::max(std::abs(w[i]), std::abs(w[i + 1]));
        int s = 0;
        if (std::abs(d) > flat_tol * std::max(scale, 1e-300)) s = d > 0.0 ? 1 : -1;
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) {
            const std::size_t m = (last_pos + 1 + i) / 2;
            out.push_back(CriticalPoint{m, prof.radii[m], w[m], last_sign > 0});
        }
        last_sign = s;
        last_pos = i;
    }
    return out;
}

inline std::size_t argmax_index(const std::vector<double>& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[k]) k = i;
    return k;
}

}  // namespace heis
