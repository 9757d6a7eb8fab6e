#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "calculus.hpp"
#include "field.hpp"
#include "point.hpp"

namespace heis {

struct GridBox {
    double x0 = -2.0, x1 = 2.0;
    double y0 = -2.0, y1 = 2.0;
    double t0 = -4.0, t1 = 4.0;

    void validate() const {
        if (!(x0 < x1 && y0 < y1 && t0 < t1))
            throw std::invalid_argument("GridBox: empty extent");
    }
};

/// Uniform tensor grid with n nodes per axis on a coordinate box.
class Grid {
  public:
    Grid(GridBox box, std::size_t n) : box_(box), n_(n) {
        box_.validate();
        if (n_ < 4) throw std::invalid_argument("Grid: need at least 4 nodes per axis");
    }

    const GridBox& box() const { return box_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return n_ * n_ * n_; }
    std::size_t interior_size() const { return (n_ - 2) * (n_ - 2) * (n_ - 2); }

    double hx() const { return (box_.x1 - box_.x0) / static_cast<double>(n_ - 1); }
    double hy() const { return (box_.y1 - box_.y0) / static_cast<double>(n_ - 1); }
    double ht() const { return (box_.t1 - box_.t0) / static_cast<double>(n_ - 1); }

    /// Cell volume under dV = 4 dx dy dt.
    double cell_volume() const { return 4.0 * hx() * hy() * ht(); }

    HeisPoint point(std::size_t i, std::size_t j, std::size_t k) const {
        return HeisPoint(box_.x0 + hx() * static_cast<double>(i),
                         box_.y0 + hy() * static_cast<double>(j),
                         box_.t0 + ht() * static_cast<double>(k));
    }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (k * n_ + j) * n_ + i;
    }

    bool on_boundary(std::size_t i, std::size_t j, std::size_t k) const {
        return i == 0 || j == 0 || k == 0 || i == n_ - 1 || j == n_ - 1 || k == n_ - 1;
    }

    std::size_t interior_index(std::size_t i, std::size_t j, std::size_t k) const {
        const std::size_t m = n_ - 2;
        return ((k - 1) * m + (j - 1)) * m + (i - 1);
    }

  private:
    GridBox box_;
    std::size_t n_;
};

/// Node values on a Grid (full storage including boundary).
struct DiscreteField {
    Grid grid;
    std::vector<double> values;

    explicit DiscreteField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return values[grid.index(i, j, k)];
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return values[grid.index(i, j, k)];
    }

    static DiscreteField sample(const Grid& g, const std::function<double(const HeisPoint&)>& f) {
        DiscreteField out(g);
        for (std::size_t k = 0; k < g.n(); ++k)
            for (std::size_t j = 0; j < g.n(); ++j)
                for (std::size_t i = 0; i < g.n(); ++i)
                    out.at(i, j, k) = f(g.point(i, j, k));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    /// sup |self − ref| over interior nodes, divided by sup |ref|.
    double interior_sup_rel_error(const std::function<double(const HeisPoint&)>& ref) const {
        double err = 0.0, scale = 0.0;
        for (std::size_t k = 1; k + 1 < grid.n(); ++k)
            for (std::size_t j = 1; j + 1 < grid.n(); ++j)
                for (std::size_t i = 1; i + 1 < grid.n(); ++i) {
                    const double r = ref(grid.point(i, j, k));
                    err = std::max(err, std::abs(at(i, j, k) - r));
                    scale = std::max(scale, std::abs(r));
                }
        return scale > 0.0 ? err / scale : err;
    }
};

/// Centered-difference discretization of L = −(X² + Y²) + R on interior nodes,
/// with X² + Y² = ∂xx + ∂yy + 4y ∂xt − 4x ∂yt + 4(x² + y²) ∂tt.
class GridOperator {
  public:
    GridOperator(const Grid& g, std::function<double(const HeisPoint&)> potential = nullptr)
        : grid_(g), potential_(std::move(potential)) {}

    const Grid& grid() const { return grid_; }

    /// Emits (linear_node_index, weight) pairs of the stencil row at an
    /// interior node.
    template <typename Emit>
    void row(std::size_t i, std::size_t j, std::size_t k, Emit&& emit) const {
        const HeisPoint p = grid_.point(i, j, k);
        const double hx = grid_.hx(), hy = grid_.hy(), ht = grid_.ht();
        const double ct = 4.0 * (p.x() * p.x() + p.y() * p.y());
        const double cxt = 4.0 * p.y();
        const double cyt = -4.0 * p.x();

        double diag = 2.0 / (hx * hx) + 2.0 / (hy * hy) + 2.0 * ct / (ht * ht);
        if (potential_) diag += potential_(p);
        emit(grid_.index(i, j, k), diag);

        emit(grid_.index(i - 1, j, k), -1.0 / (hx * hx));
        emit(grid_.index(i + 1, j, k), -1.0 / (hx * hx));
        emit(grid_.index(i, j - 1, k), -1.0 / (hy * hy));
        emit(grid_.index(i, j + 1, k), -1.0 / (hy * hy));
        emit(grid_.index(i, j, k - 1), -ct / (ht * ht));
        emit(grid_.index(i, j, k + 1), -ct / (ht * ht));

        const double wxt = cxt / (4.0 * hx * ht);
        emit(grid_.index(i + 1, j, k + 1), -wxt);
        emit(grid_.index(i - 1, j, k - 1), -wxt);
        emit(grid_.index(i + 1, j, k - 1), wxt);
        emit(grid_.index(i - 1, j, k + 1), wxt);

        const double wyt = cyt / (4.0 * hy * ht);
        emit(grid_.index(i, j + 1, k + 1), -wyt);
        emit(grid_.index(i, j - 1, k - 1), -wyt);
        emit(grid_.index(i, j + 1, k - 1), wyt);
        emit(grid_.index(i, j - 1, k + 1), wyt);
    }

    double apply_at(const std::vector<double>& u, std::size_t i, std::size_t j,
                    std::size_t k) const {
        double acc = 0.0;
        row(i, j, k, [&](std::size_t col, double w) { acc += w * u[col]; });
        return acc;
    }

  private:
    Grid grid_;
    std::function<double(const HeisPoint&)> potential_;
};

/// Continuous counterpart of GridOperator rows: −4 Δ_b u + R u.
inline double continuous_operator(const ScalarField& u,
                                  const std::function<double(const HeisPoint&)>& potential,
                                  const HeisPoint& p) {
    double v = -4.0 * sublaplacian(u, p);
    if (potential) v += potential(p) * u(p);
    return v;
}

/// Max discretization error |L_h u − L u| over interior nodes for a smooth field.
inline double operator_consistency_sup(const Grid& g, const ScalarField& u,
                                       const std::function<double(const HeisPoint&)>& potential =
                                           nullptr) {
    const GridOperator op(g, potential);
    DiscreteField uh = DiscreteField::sample(g, [&u](const HeisPoint& p) { return u(p); });
    double err = 0.0;
    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i) {
                const double lh = op.apply_at(uh.values, i, j, k);
                const double lc = continuous_operator(u, potential, g.point(i, j, k));
                err = std::max(err, std::abs(lh - lc));
            }
    return err;
}

}  // namespace heis
