#pragma once

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace heis {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Interior system L_h u = rhs with Dirichlet data folded into the load vector:
/// matrix over interior unknowns, load = rhs − (stencil ⋅ boundary values).
struct InteriorSystem {
    Grid grid;
    SparseMatrix matrix;
    Vector boundary_load;  ///< contribution of Dirichlet values, to subtract
};

inline InteriorSystem assemble_interior(const GridOperator& op,
                                        const DiscreteField& dirichlet) {
    const Grid& g = op.grid();
    InteriorSystem sys{g, SparseMatrix(static_cast<Eigen::Index>(g.interior_size()),
                                       static_cast<Eigen::Index>(g.interior_size())),
                       Vector::Zero(static_cast<Eigen::Index>(g.interior_size()))};
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(15 * g.interior_size());

    std::vector<int> interior_of(g.size(), -1);
    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i)
                interior_of[g.index(i, j, k)] = static_cast<int>(g.interior_index(i, j, k));

    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i) {
                const int r = interior_of[g.index(i, j, k)];
                op.row(i, j, k, [&](std::size_t col, double w) {
                    const int c = interior_of[col];
                    if (c >= 0)
                        trips.emplace_back(r, c, w);
                    else
                        sys.boundary_load[r] += w * dirichlet.values[col];
                });
            }
    sys.matrix.setFromTriplets(trips.begin(), trips.end());
    sys.matrix.makeCompressed();
    return sys;
}

struct LinearSolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
};

inline Vector solve_sparse(const SparseMatrix& A, const Vector& b, LinearSolveReport& rep,
                           double tol = 1e-10, int max_iter = 4000) {
    Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<double>> solver;
    solver.preconditioner().setDroptol(1e-5);
    solver.preconditioner().setFillfactor(12);
    solver.setTolerance(tol);
    solver.setMaxIterations(max_iter);
    solver.compute(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("sparse solver: preconditioner setup failed");
    Vector x = solver.solve(b);
    rep.converged = solver.info() == Eigen::Success;
    rep.iterations = static_cast<int>(solver.iterations());
    rep.residual = solver.error();
    return x;
}

inline void scatter_interior(const Grid& g, const Vector& x, DiscreteField& field) {
    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i)
                field.at(i, j, k) = x[static_cast<Eigen::Index>(g.interior_index(i, j, k))];
}

/// Solves L u = rhs with Dirichlet boundary data.
inline DiscreteField solve_linear(const GridOperator& op,
                                  const std::function<double(const HeisPoint&)>& rhs,
                                  const std::function<double(const HeisPoint&)>& dirichlet,
                                  LinearSolveReport& rep) {
    const Grid& g = op.grid();
    DiscreteField bc = DiscreteField::sample(g, dirichlet);
    InteriorSystem sys = assemble_interior(op, bc);
    Vector b = Vector::Zero(static_cast<Eigen::Index>(g.interior_size()));
    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i)
                b[static_cast<Eigen::Index>(g.interior_index(i, j, k))] = rhs(g.point(i, j, k));
    b -= sys.boundary_load;
    const Vector x = solve_sparse(sys.matrix, b, rep);
    DiscreteField out = bc;
    scatter_interior(g, x, out);
    return out;
}

struct NewtonOptions {
    int max_iterations = 25;
    int max_halvings = 20;
    double residual_tol = 1e-9;
    double positivity_floor = 1e-12;
    double linear_tol = 1e-10;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
};

/// Damped Newton iteration for −(X² + Y²) u = u³ with Dirichlet data. The
/// boundary field doubles as the initial guess; iterates stay positive.
inline DiscreteField solve_critical_power(const Grid& g,
                                          const std::function<double(const HeisPoint&)>& dirichlet,
                                          NewtonReport& rep, NewtonOptions opt = {}) {
    const GridOperator op(g);
    DiscreteField full = DiscreteField::sample(g, dirichlet);
    InteriorSystem sys = assemble_interior(op, full);
    const Eigen::Index m = static_cast<Eigen::Index>(g.interior_size());

    Vector u(m);
    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i)
                u[static_cast<Eigen::Index>(g.interior_index(i, j, k))] = full.at(i, j, k);

    auto residual = [&](const Vector& v) -> Vector {
        return sys.matrix * v + sys.boundary_load - v.array().cube().matrix();
    };

    Vector F = residual(u);
    double fnorm = F.lpNorm<Eigen::Infinity>();
    rep.residual_history.push_back(fnorm);

    for (int it = 0; it < opt.max_iterations && fnorm > opt.residual_tol; ++it) {
        SparseMatrix J = sys.matrix;
        for (Eigen::Index r = 0; r < m; ++r) J.coeffRef(r, r) -= 3.0 * u[r] * u[r];
        LinearSolveReport lin;
        Vector delta = solve_sparse(J, Vector(-F), lin, opt.linear_tol);
        if (!lin.converged) break;

        double step = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opt.max_halvings; ++h, step *= 0.5) {
            Vector trial = u + step * delta;
            if (trial.minCoeff() <= opt.positivity_floor) continue;
            Vector Ft = residual(trial);
            const double fn = Ft.lpNorm<Eigen::Infinity>();
            if (fn < fnorm) {
                u = std::move(trial);
                F = std::move(Ft);
                fnorm = fn;
                accepted = true;
                break;
            }
        }
        ++rep.iterations;
        rep.residual_history.push_back(fnorm);
        if (!accepted) break;
    }
    rep.final_residual = fnorm;
    rep.converged = fnorm <= opt.residual_tol;
    scatter_interior(g, u, full);
    return full;
}

// ---------------------------------------------------------------------------
// Constrained energy minimization: E(u) = Σ u (L u) ΔV over zero-boundary
// fields with Σ u^p ΔV = 1, by projected gradient descent. As p grows toward
// the critical exponent the minimizer concentrates.
// ---------------------------------------------------------------------------

struct ConcentrationRow {
    double p = 0.0;
    double energy = 0.0;
    double max_value = 0.0;
    double half_height_radius = 0.0;
    int iterations = 0;
};

inline double half_height_radius(const Grid& g, const Vector& u) {
    const double peak = u.maxCoeff();
    std::size_t count = 0;
    for (Eigen::Index r = 0; r < u.size(); ++r)
        if (u[r] >= 0.5 * peak) ++count;
    const double vol = static_cast<double>(count) * g.cell_volume();
    return std::pow(vol / (2.0 * M_PI * M_PI), 0.25);
}

inline ConcentrationRow minimize_quotient(const Grid& g, double p, std::size_t iterations = 300,
                                          DiscreteField* minimizer = nullptr) {
    if (!(p > 1.0)) throw std::invalid_argument("minimize_quotient: need p > 1");
    const GridOperator op(g);
    DiscreteField zero(g);
    InteriorSystem sys = assemble_interior(op, zero);
    const double dv = g.cell_volume();
    const Eigen::Index m = static_cast<Eigen::Index>(g.interior_size());

    // gaussian-bump start, normalized to the constraint manifold
    Vector u(m);
    for (std::size_t k = 1; k + 1 < g.n(); ++k)
        for (std::size_t j = 1; j + 1 < g.n(); ++j)
            for (std::size_t i = 1; i + 1 < g.n(); ++i) {
                const HeisPoint q = g.point(i, j, k);
                const double s = q.x() * q.x() + q.y() * q.y() + 0.25 * q.t * q.t;
                u[static_cast<Eigen::Index>(g.interior_index(i, j, k))] = std::exp(-2.0 * s);
            }
    auto renorm = [&](Vector& v) {
        const double c = (v.array().abs().pow(p) * dv).sum();
        v /= std::pow(c, 1.0 / p);
    };
    renorm(u);

    auto energy = [&](const Vector& v) { return dv * v.dot(sys.matrix * v); };
    double e = energy(u);
    int used = 0;
    for (std::size_t it = 0; it < iterations; ++it, ++used) {
        Vector grad = dv * (sys.matrix * u + sys.matrix.transpose() * u);
        Vector cgrad =
            (p * dv) * u.array().sign().cwiseProduct(u.array().abs().pow(p - 1.0)).matrix();
        const double c2 = cgrad.squaredNorm();
        if (c2 > 0.0) grad -= (grad.dot(cgrad) / c2) * cgrad;

        const double gnorm = grad.norm();
        if (gnorm == 0.0) break;
        double step = 0.1 * u.norm() / gnorm;
        bool accepted = false;
        for (int h = 0; h < 12; ++h, step *= 0.5) {
            Vector trial = u - step * grad;
            trial = trial.cwiseMax(0.0);
            renorm(trial);
            const double et = energy(trial);
            if (et < e) {
                u = std::move(trial);
                e = et;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }

    ConcentrationRow row;
    row.p = p;
    row.energy = e;
    row.max_value = u.maxCoeff();
    row.half_height_radius = half_height_radius(g, u);
    row.iterations = used;
    if (minimizer) {
        *minimizer = DiscreteField(g);
        scatter_interior(g, u, *minimizer);
    }
    return row;
}

inline std::vector<ConcentrationRow> concentration_sweep(const Grid& g,
                                                         const std::vector<double>& ps,
                                                         std::size_t iterations = 300) {
    std::vector<ConcentrationRow> rows;
    rows.reserve(ps.size());
    for (double p : ps) rows.push_back(minimize_quotient(g, p, iterations));
    return rows;
}

}  // namespace heis
