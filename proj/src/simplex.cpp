#include "softkm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "softkm/error.hpp"

namespace softkm {

Vector project_simplex(const Vector& v) {
    const Eigen::Index k = v.size();
    std::vector<double> sorted(v.data(), v.data() + k);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        cumsum += sorted[j];
        const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) {
            theta = candidate;
        }
    }
    Vector g = (v.array() - theta).max(0.0);
    // Remove the O(eps) drift of the sum so the output sums to one to round-off.
    const double total = g.sum();
    if (total > 0.0) g /= total;
    return g;
}

namespace {

// Quadratic model of ||x - F g||^2 = g^T Q g - 2 c^T g + x^T x.
struct SimplexProblem {
    Matrix q;
    Vector c;
    double xx = 0.0;
    double lipschitz = 0.0;  // largest eigenvalue of Q

    SimplexProblem(const Matrix& f, const Vector& x)
        : q(f.transpose() * f), c(f.transpose() * x), xx(x.squaredNorm()) {
        if (q.size() > 0) {
            lipschitz = Eigen::SelfAdjointEigenSolver<Matrix>(q, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .maxCoeff();
        }
    }

    double value(const Vector& g) const { return g.dot(q * g) - 2.0 * c.dot(g) + xx; }
    Vector half_gradient(const Vector& g) const { return q * g - c; }
    Vector step(const Vector& g) const { return project_simplex(g - half_gradient(g) / lipschitz); }
    double residual(const Vector& g) const { return (g - step(g)).norm(); }
};

void check_shapes(const Matrix& f, const Vector& x) {
    if (f.rows() != x.size() || f.cols() < 1) {
        throw InvalidInput("simplex least squares: F is " + std::to_string(f.rows()) + "x" +
                           std::to_string(f.cols()) + " but x has length " +
                           std::to_string(x.size()));
    }
}

Vector run_pgd(const SimplexProblem& p, Vector g, const SimplexSolveOptions& opts) {
    if (opts.max_iters < 1 || !(opts.kkt_tol > 0.0)) {
        throw InvalidInput("simplex options need max_iters >= 1 and kkt_tol > 0");
    }
    if (!(p.lipschitz > 0.0)) {
        return g;  // F = 0: every feasible point is optimal
    }
    double fg = p.value(g);
    Vector g_prev = g;
    double t = 1.0;
    for (int it = 0; it < opts.max_iters; ++it) {
        Vector next;
        if (opts.use_acceleration) {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const Vector y = g + ((t - 1.0) / t_next) * (g - g_prev);
            next = p.step(y);
            t = t_next;
            if (p.value(next) > fg) {
                // Restart: plain projected step from g is a guaranteed descent.
                t = 1.0;
                next = p.step(g);
            }
        } else {
            next = p.step(g);
        }
        if (!next.allFinite()) {
            throw NumericalFailure("simplex least squares produced a non-finite iterate");
        }
        g_prev = std::move(g);
        g = std::move(next);
        fg = p.value(g);
        if (p.residual(g) <= opts.kkt_tol) break;
    }
    return g;
}

}  // namespace

double kkt_residual(const Matrix& f, const Vector& x, const Vector& g) {
    check_shapes(f, x);
    SimplexProblem p(f, x);
    if (!(p.lipschitz > 0.0)) return 0.0;
    return p.residual(g);
}

Vector solve_simplex_ls(const Matrix& f, const Vector& x, const SimplexSolveOptions& opts) {
    return solve_simplex_ls(f, x, Vector::Constant(f.cols(), 1.0 / f.cols()), opts);
}

Vector solve_simplex_ls(const Matrix& f, const Vector& x, const Vector& start,
                        const SimplexSolveOptions& opts) {
    check_shapes(f, x);
    if (start.size() != f.cols()) {
        throw InvalidInput("warm start has the wrong length");
    }
    if (!f.allFinite() || !x.allFinite()) {
        throw NumericalFailure("simplex least squares received non-finite input");
    }
    const SimplexProblem p(f, x);
    const Vector g0 = project_simplex(start);
    Vector g = run_pgd(p, g0, opts);
    if (p.value(g) > p.value(g0)) g = g0;
    return g;
}

Matrix solve_membership(const Matrix& f, const Matrix& x, const SimplexSolveOptions& opts) {
    return solve_membership(f, x, Matrix::Constant(x.cols(), f.cols(), 1.0 / f.cols()), opts);
}

Matrix solve_membership(const Matrix& f, const Matrix& x, const Matrix& start,
                        const SimplexSolveOptions& opts) {
    if (f.rows() != x.rows()) {
        throw InvalidInput("membership solve: F has " + std::to_string(f.rows()) +
                           " rows but data has " + std::to_string(x.rows()));
    }
    if (start.rows() != x.cols() || start.cols() != f.cols()) {
        throw InvalidInput("membership warm start must be n x k");
    }
    if (!f.allFinite()) {
        throw NumericalFailure("membership solve: prototypes are non-finite");
    }
    const SimplexProblem shared(f, Vector::Zero(f.rows()));
    Matrix g(x.cols(), f.cols());
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
        SimplexProblem p = shared;
        p.c = f.transpose() * x.col(i);
        p.xx = x.col(i).squaredNorm();
        const Vector g0 = project_simplex(start.row(i).transpose());
        Vector gi;
        try {
            gi = run_pgd(p, g0, opts);
        } catch (const NumericalFailure& e) {
            throw NumericalFailure(std::string(e.what()) + " (row " + std::to_string(i) + ")");
        }
        if (p.value(gi) > p.value(g0)) gi = g0;
        g.row(i) = gi.transpose();
    }
    return g;
}

}  // namespace softkm
