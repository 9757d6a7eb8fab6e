#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace heis {

/// Point of the Heisenberg group H^n = C^n x R with coordinates (z, t).
/// The library fixes n = 1 downstream; the group operations are generic.
struct HeisPoint {
    std::vector<std::complex<double>> z;
    double t = 0.0;

    HeisPoint() : z(1, {0.0, 0.0}) {}
    HeisPoint(std::complex<double> z1, double t_) : z(1, z1), t(t_) {}
    HeisPoint(double x, double y, double t_) : z(1, {x, y}), t(t_) {}
    explicit HeisPoint(std::vector<std::complex<double>> z_, double t_)
        : z(std::move(z_)), t(t_) {}

    std::size_t n() const { return z.size(); }
    double x() const { return z[0].real(); }
    double y() const { return z[0].imag(); }

    bool finite() const {
        if (!std::isfinite(t)) return false;
        for (const auto& zk : z)
            if (!std::isfinite(zk.real()) || !std::isfinite(zk.imag())) return false;
        return true;
    }
};

inline void require_same_n(const HeisPoint& a, const HeisPoint& b) {
    if (a.n() != b.n()) throw std::invalid_argument("HeisPoint dimension mismatch");
}

/// Homogeneous dimension Q = 2n + 2.
inline int homogeneous_dimension(const HeisPoint& p) {
    return static_cast<int>(2 * p.n() + 2);
}

/// Group law: (z,t)·(w,s) = (z + w, t + s + 2 Im <z, w-bar>).
inline HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b) {
    require_same_n(a, b);
    HeisPoint out = a;
    double twist = 0.0;
    for (std::size_t k = 0; k < a.n(); ++k) {
        twist += std::imag(a.z[k] * std::conj(b.z[k]));
        out.z[k] = a.z[k] + b.z[k];
    }
    out.t = a.t + b.t + 2.0 * twist;
    return out;
}

inline HeisPoint group_inv(const HeisPoint& a) {
    HeisPoint out = a;
    for (auto& zk : out.z) zk = -zk;
    out.t = -a.t;
    return out;
}

/// Anisotropic dilation: (z,t) -> (lambda z, lambda^2 t), lambda > 0.
inline HeisPoint dilate(const HeisPoint& a, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    HeisPoint out = a;
    for (auto& zk : out.z) zk *= lambda;
    out.t = a.t * lambda * lambda;
    return out;
}

/// Left translation L_{x0}(x) = x0^{-1} · x.
inline HeisPoint left_translate(const HeisPoint& x0, const HeisPoint& x) {
    return group_mul(group_inv(x0), x);
}

/// Gauge norm |(z,t)| = (|z|^4 + t^2)^{1/4}.
inline double koranyi_norm(const HeisPoint& a) {
    double z2 = 0.0;
    for (const auto& zk : a.z) z2 += std::norm(zk);
    return std::pow(z2 * z2 + a.t * a.t, 0.25);
}

/// Gauge distance d(a,b) = |a^{-1}·b|. Left invariant; not exactly symmetric.
inline double koranyi_dist(const HeisPoint& a, const HeisPoint& b) {
    return koranyi_norm(group_mul(group_inv(a), b));
}

/// Deterministic sampler for randomized property checks.
class PointSampler {
  public:
    explicit PointSampler(std::uint64_t seed, double scale = 2.0)
        : rng_(seed), dist_(-scale, scale) {}

    HeisPoint next() {
        return HeisPoint(dist_(rng_), dist_(rng_), dist_(rng_));
    }

    /// Point with gauge norm in [lo, hi] (lo = hi samples the sphere of that radius).
    HeisPoint next_in_shell(double lo, double hi) {
        if (!(0.0 < lo && lo <= hi)) throw std::invalid_argument("next_in_shell: need 0 < lo <= hi");
        for (;;) {
            HeisPoint p = next();
            const double r = koranyi_norm(p);
            if (r > 1e-6) return dilate(p, uniform(lo, hi) / r);
        }
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * unit_(rng_);
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace heis
