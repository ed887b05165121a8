#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "softkm/core.hpp"
#include "softkm/simplex.hpp"

namespace softkm {

struct MvskmOptions {
    double lambda = 0.0;
    double epsilon = 1e-8;
    int max_outer_iters = 300;
    double rel_obj_tol = 1e-8;
    std::uint64_t seed = 0;
    /// Initial prototypes in centered coordinates (d x k). When empty, k
    /// distinct centered samples are drawn with `seed`.
    std::optional<Matrix> initial_prototypes;
    SimplexSolveOptions inner;
};

/// Iterate bundle after the last completed outer step.
struct MvskmState {
    Matrix prototypes;  // centered coordinates
    Matrix membership;
    Matrix reweight;    // k x k, built from the prototypes before the last F-step
    Vector sigma;       // all k singular values of the prototypes
    std::vector<double> objective_trace;
    int iterations = 0;
};

struct MvskmResult {
    Solution solution;  // prototypes with the data mean restored
    MvskmState state;
};

/// sum_i log(sigma_i(F)^2 + eps) over all k singular values (zeros included).
double volume_regularizer(const Matrix& f, double epsilon);

/// log(sqrt(k)) + sum_{i<k} log sigma_i(F) for centered F (F 1 = 0) of rank k-1.
/// Throws PreconditionViolated if F is not centered and DegenerateSimplex if
/// sigma_{k-1} is below `tau` relative to sigma_1.
double log_simplex_volume(const Matrix& f, double tau = 1e-10);

/// (F^T F + eps I)^-1, i.e. V diag(1/(sigma_i^2 + eps)) V^T over the k right
/// singular directions of F.
Matrix reweight_matrix(const Matrix& f, double epsilon);

/// ||Xc - F G^T||^2 + (lambda/2) volume_regularizer(F, eps).
double mvskm_objective(const Matrix& centered, const Matrix& f, const Matrix& g, double lambda,
                       double epsilon);

/// Minimal-volume soft k-means by iterative reweighting on the centered data.
MvskmResult solve_mvskm(const DataMatrix& x, int k, const MvskmOptions& opts);

}  // namespace softkm
