#pragma once

#include <Eigen/Dense>

namespace softkm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Sample matrix with samples stored as columns (d features x n samples),
/// together with its column mean and the mean-subtracted copy.
class DataMatrix {
public:
    /// Throws InvalidInput on an empty matrix or non-finite entries.
    explicit DataMatrix(Matrix values);

    const Matrix& values() const { return values_; }
    const Vector& mean() const { return mean_; }
    const Matrix& centered() const { return centered_; }

    Eigen::Index dim() const { return values_.rows(); }
    Eigen::Index size() const { return values_.cols(); }

private:
    Matrix values_;
    Vector mean_;
    Matrix centered_;
};

DataMatrix center(const Matrix& x);

/// Basis bundle produced by the global solver.
struct GlobalFactors {
    Matrix u;      // d x (k-1), left singular vectors of the centered data
    Vector sigma;  // k-1 leading singular values, descending
    Matrix v;      // n x (k-1)
    Matrix basis;  // k x (k-1), orthonormal and orthogonal to the all-ones vector
    double radius = 0.0;  // max column norm of u^T * centered
    double scale = 0.0;   // radius * sqrt(k (k-1))
    Matrix s;             // (k-1) x k, scale * basis^T
};

/// Prototypes F (d x k), row-stochastic memberships G (n x k) and ||X - F G^T||_F^2.
struct Solution {
    Matrix prototypes;
    Matrix membership;
    double objective = 0.0;
};

/// Helmert basis of the orthogonal complement of the all-ones vector in R^k.
/// Column j (0-based) holds 1/sqrt((j+1)(j+2)) in rows 0..j and
/// -(j+1)/sqrt((j+1)(j+2)) in row j+1.
Matrix simplex_complement_basis(int k);

struct TruncatedSvd {
    Matrix u;
    Vector sigma;
    Matrix v;
};

/// Leading m singular triplets of `a`. Signs are fixed so that the
/// largest-magnitude entry of every left singular vector is positive.
TruncatedSvd truncated_svd(const Matrix& a, Eigen::Index m);

/// Number of singular values above tau * sigma_max. Zero for the zero matrix.
int numerical_rank(const Matrix& a, double tau = 1e-10);

}  // namespace softkm
