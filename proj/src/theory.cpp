#include "softkm/theory.hpp"

#include <cmath>
#include <string>

#include "softkm/error.hpp"
#include "softkm/skm_global.hpp"

namespace softkm {

KernelMatrix::KernelMatrix(Matrix k) : k_(std::move(k)) {
    if (k_.rows() != k_.cols() || k_.rows() == 0) {
        throw InvalidInput("kernel matrix must be square and non-empty");
    }
    if (!k_.allFinite()) {
        throw InvalidInput("kernel matrix contains non-finite entries");
    }
    if ((k_ - k_.transpose()).norm() > 1e-10 * k_.norm()) {
        throw InvalidInput("kernel matrix is not symmetric");
    }
}

KernelMatrix gram(const DataMatrix& x) {
    Matrix k = x.values().transpose() * x.values();
    k = 0.5 * (k + k.transpose());
    return KernelMatrix(std::move(k));
}

bool is_skmable(const DataMatrix& x, int k, double tau) {
    if (k < 1) throw InvalidInput("k must be >= 1");
    return numerical_rank(x.centered(), tau) <= k - 1;
}

Matrix double_center(const Matrix& k) {
    const Vector row_means = k.rowwise().mean();
    const Eigen::RowVectorXd col_means = k.colwise().mean();
    const double grand = k.mean();
    Matrix out = k;
    out.colwise() -= row_means;
    out.rowwise() -= col_means;
    out.array() += grand;
    return out;
}

bool is_ti_lsdable(const KernelMatrix& k, int clusters, double tau) {
    if (clusters < 1) throw InvalidInput("k must be >= 1");
    return numerical_rank(double_center(k.matrix()), tau) <= clusters - 1;
}

Matrix kernel_embed(const KernelMatrix& k, double tau) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(k.matrix());
    if (eig.info() != Eigen::Success) {
        throw NumericalFailure("kernel eigendecomposition failed");
    }
    const Vector& values = eig.eigenvalues();  // ascending
    const double top = values.maxCoeff();
    if (top <= 0.0) {
        if (values.minCoeff() < 0.0) {
            throw NotPositiveSemidefinite("kernel has no positive eigenvalue");
        }
        return Matrix::Zero(1, k.size());
    }
    if (values.minCoeff() < -tau * top) {
        throw NotPositiveSemidefinite("kernel eigenvalue " + std::to_string(values.minCoeff()) +
                                      " is below -tau * lambda_max");
    }
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = values.size() - 1; i >= 0; --i) {
        if (values(i) > tau * top) kept.push_back(i);
    }
    Matrix x(static_cast<Eigen::Index>(kept.size()), k.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const Eigen::Index i = kept[r];
        x.row(static_cast<Eigen::Index>(r)) =
            std::sqrt(values(i)) * eig.eigenvectors().col(i).transpose();
    }
    return x;
}

StabilityReport stability_audit(const DataMatrix& x, const Matrix& e, int k) {
    if (e.rows() != x.dim() || e.cols() != x.size()) {
        throw InvalidInput("perturbation must have the shape of the data");
    }
    const auto [clean, clean_factors] = solve_global(x, k);
    const DataMatrix perturbed(x.values() + e);
    const auto [noisy, noisy_factors] = solve_global(perturbed, k);

    StabilityReport rep;
    rep.lhs = objective(x, noisy.prototypes, noisy.membership);
    rep.rhs = 2.0 * e.squaredNorm() + clean.objective;
    rep.slack = rep.rhs - rep.lhs;
    rep.holds = rep.slack >= -1e-8 * rep.rhs;
    return rep;
}

NonuniquenessGap nonuniqueness_gap(const DataMatrix& x, int k) {
    if (k < 2) throw InvalidInput("nonuniqueness_gap needs k >= 2");
    const auto [sol, gf] = solve_global(x, k);
    const Eigen::Index m = k - 1;
    const Solution flipped =
        rotate_solution(sol, gf, RotationMatrix(-Matrix::Identity(m, m)));

    NonuniquenessGap out;
    out.g1 = sol.membership;
    out.g2 = flipped.membership;
    out.gap = (out.g1 - out.g2).norm();
    out.objectives = {sol.objective, objective(x, flipped.prototypes, flipped.membership)};
    if (gf.radius > 0.0) {
        out.predicted_gap_sq = 4.0 / (gf.radius * gf.radius * k * (k - 1)) *
                               gf.sigma.squaredNorm();
    }
    return out;
}

}  // namespace softkm
