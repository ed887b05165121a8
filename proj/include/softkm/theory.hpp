#pragma once

#include <utility>

#include "softkm/core.hpp"

namespace softkm {

/// Symmetric n x n similarity matrix.
class KernelMatrix {
public:
    /// Throws InvalidInput if the matrix is not square or ||K - K^T||_F > 1e-10 ||K||_F.
    explicit KernelMatrix(Matrix k);

    const Matrix& matrix() const { return k_; }
    Eigen::Index size() const { return k_.rows(); }

private:
    Matrix k_;
};

/// Gram matrix X^T X of the raw samples.
KernelMatrix gram(const DataMatrix& x);

/// Exact zero-residual factorization exists iff rank(X H_n) <= k-1.
bool is_skmable(const DataMatrix& x, int k, double tau = 1e-10);

/// K - row means - column means + grand mean, i.e. H K H without forming H.
Matrix double_center(const Matrix& k);

/// Translation-invariant left-stochastic decomposability: rank(H K H) <= k-1.
bool is_ti_lsdable(const KernelMatrix& k, int clusters, double tau = 1e-10);

/// X (r x n) with X^T X = K over the eigenpairs above tau * lambda_max.
/// Throws NotPositiveSemidefinite when an eigenvalue is below -tau * lambda_max.
Matrix kernel_embed(const KernelMatrix& k, double tau = 1e-10);

struct StabilityReport {
    double lhs = 0.0;    // ||X - F~ G~^T||^2 at the perturbed optimum
    double rhs = 0.0;    // 2 ||E||^2 + optimal objective on X
    double slack = 0.0;  // rhs - lhs
    bool holds = false;
};

/// Compares the unperturbed residual of the perturbed global optimum with
/// 2 ||E||^2 plus the unperturbed optimum.
StabilityReport stability_audit(const DataMatrix& x, const Matrix& e, int k);

struct NonuniquenessGap {
    Matrix g1;
    Matrix g2;
    double gap = 0.0;
    std::pair<double, double> objectives;
    /// 4 / (r^2 k (k-1)) * ||rank-(k-1) approximation of the centered data||^2.
    double predicted_gap_sq = 0.0;
};

/// Two optimal memberships, from basis B and from -B.
NonuniquenessGap nonuniqueness_gap(const DataMatrix& x, int k);

}  // namespace softkm
