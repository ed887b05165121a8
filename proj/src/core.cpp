#include "softkm/core.hpp"

#include <cmath>
#include <string>

#include "softkm/error.hpp"

namespace softkm {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw InvalidInput("data matrix must have at least one row and one column");
    }
    if (!values_.allFinite()) {
        throw InvalidInput("data matrix contains non-finite entries");
    }
    mean_ = values_.rowwise().mean();
    centered_ = values_.colwise() - mean_;
}

DataMatrix center(const Matrix& x) { return DataMatrix(x); }

Matrix simplex_complement_basis(int k) {
    if (k < 2) {
        throw InvalidInput("simplex basis needs k >= 2, got " + std::to_string(k));
    }
    Matrix b = Matrix::Zero(k, k - 1);
    for (int j = 0; j < k - 1; ++j) {
        const double m = j + 1.0;
        const double norm = std::sqrt(m * (m + 1.0));
        b.col(j).head(j + 1).setConstant(1.0 / norm);
        b(j + 1, j) = -m / norm;
    }
    return b;
}

namespace {

void fix_signs(Matrix& u, Matrix& v) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        Eigen::Index imax = 0;
        u.col(j).cwiseAbs().maxCoeff(&imax);
        if (u(imax, j) < 0.0) {
            u.col(j) = -u.col(j);
            v.col(j) = -v.col(j);
        }
    }
}

}  // namespace

TruncatedSvd truncated_svd(const Matrix& a, Eigen::Index m) {
    const Eigen::Index max_rank = std::min(a.rows(), a.cols());
    if (m < 1 || m > max_rank) {
        throw InvalidInput("truncated_svd: m = " + std::to_string(m) + " outside [1, " +
                           std::to_string(max_rank) + "]");
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TruncatedSvd out{svd.matrixU().leftCols(m), svd.singularValues().head(m),
                     svd.matrixV().leftCols(m)};
    fix_signs(out.u, out.v);
    return out;
}

int numerical_rank(const Matrix& a, double tau) {
    if (a.size() == 0) return 0;
    const Vector s = Eigen::JacobiSVD<Matrix>(a).singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double cut = tau * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cut) ++r;
    }
    return r;
}

}  // namespace softkm
