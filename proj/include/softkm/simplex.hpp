#pragma once

#include "softkm/core.hpp"

namespace softkm {

struct SimplexSolveOptions {
    int max_iters = 500;
    double kkt_tol = 1e-9;
    bool use_acceleration = true;
};

/// Euclidean projection onto {g : g >= 0, sum(g) = 1}.
Vector project_simplex(const Vector& v);

/// Projected-gradient residual ||g - P(g - grad/L)|| of min ||x - F g||^2
/// at g, with L the squared spectral norm of F.
double kkt_residual(const Matrix& f, const Vector& x, const Vector& g);

/// argmin over the probability simplex of ||x - F g||_2^2 by projected
/// gradient with step 1/sigma_max(F)^2, optionally with momentum and restart.
/// The result is always exactly feasible.
Vector solve_simplex_ls(const Matrix& f, const Vector& x, const SimplexSolveOptions& opts = {});

/// Same, warm-started from `start` (projected first). The returned point is
/// never worse than the projected start.
Vector solve_simplex_ls(const Matrix& f, const Vector& x, const Vector& start,
                        const SimplexSolveOptions& opts = {});

/// Row i of the result solves solve_simplex_ls(F, x_i). Rows are independent.
Matrix solve_membership(const Matrix& f, const Matrix& x, const SimplexSolveOptions& opts = {});

/// Warm-started variant; row i starts from row i of `start` (n x k).
Matrix solve_membership(const Matrix& f, const Matrix& x, const Matrix& start,
                        const SimplexSolveOptions& opts = {});

}  // namespace softkm
