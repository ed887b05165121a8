#include "softkm/skm_global.hpp"

#include <cmath>
#include <string>

#include "softkm/error.hpp"

namespace softkm {

RotationMatrix::RotationMatrix(Matrix r) : r_(std::move(r)) {
    if (r_.rows() != r_.cols()) {
        throw InvalidInput("rotation must be square");
    }
    const Matrix gram = r_.transpose() * r_;
    if ((gram - Matrix::Identity(r_.rows(), r_.cols())).norm() > 1e-10) {
        throw InvalidInput("rotation is not orthogonal");
    }
}

namespace {

// F = a U B^T + mean 1^T and G = (1/a) (U^T Xc)^T B^T + 1/k, with U^T Xc = Sigma V^T.
Solution assemble(const DataMatrix& x, const GlobalFactors& gf, const Matrix& basis) {
    const Eigen::Index k = basis.rows();
    const Matrix coords = gf.v * gf.sigma.asDiagonal();  // n x (k-1), rows are U^T xc_i
    Solution sol;
    sol.prototypes = (gf.scale * gf.u * basis.transpose()).colwise() + x.mean();
    sol.membership = (coords * basis.transpose()) / gf.scale;
    sol.membership.array() += 1.0 / static_cast<double>(k);
    sol.objective = objective(x, sol.prototypes, sol.membership);
    return sol;
}

Solution limit_solution(const DataMatrix& x, int k) {
    Solution sol;
    sol.prototypes = x.mean().replicate(1, k);
    sol.membership = Matrix::Constant(x.size(), k, 1.0 / k);
    sol.objective = objective(x, sol.prototypes, sol.membership);
    return sol;
}

}  // namespace

std::pair<Solution, GlobalFactors> solve_global(const DataMatrix& x, int k) {
    if (k < 1) {
        throw InvalidInput("k must be >= 1, got " + std::to_string(k));
    }
    GlobalFactors gf;
    if (k == 1) {
        return {limit_solution(x, 1), gf};
    }
    const Eigen::Index m = k - 1;
    if (m > std::min(x.dim(), x.size())) {
        throw InvalidInput("k - 1 = " + std::to_string(m) + " exceeds min(d, n) = " +
                           std::to_string(std::min(x.dim(), x.size())));
    }
    if (!std::isfinite(x.centered().squaredNorm())) {
        throw NumericalFailure("data energy overflows double precision");
    }
    auto svd = truncated_svd(x.centered(), m);
    gf.u = std::move(svd.u);
    gf.sigma = std::move(svd.sigma);
    gf.v = std::move(svd.v);
    gf.basis = simplex_complement_basis(k);

    // Column norms of U^T Xc = Sigma V^T are the row norms of V Sigma.
    gf.radius = (gf.v * gf.sigma.asDiagonal()).rowwise().norm().maxCoeff();
    gf.scale = gf.radius * std::sqrt(static_cast<double>(k) * (k - 1));
    gf.s = gf.scale * gf.basis.transpose();
    if (gf.radius <= 0.0) {
        return {limit_solution(x, k), gf};
    }
    Solution sol = assemble(x, gf, gf.basis);
    if (!std::isfinite(sol.objective)) {
        throw NumericalFailure("global solution has a non-finite objective");
    }
    return {std::move(sol), gf};
}

Solution rotate_solution(const Solution& sol, const GlobalFactors& gf, const RotationMatrix& r) {
    const Eigen::Index m = gf.basis.cols();
    if (r.matrix().rows() != m) {
        throw InvalidInput("rotation size " + std::to_string(r.matrix().rows()) +
                           " does not match k - 1 = " + std::to_string(m));
    }
    if (gf.scale <= 0.0) {
        return sol;
    }
    const Eigen::Index k = gf.basis.rows();
    const Matrix rotated = gf.basis * r.matrix();
    const Vector mean = sol.prototypes.rowwise().mean();
    const Matrix coords = gf.v * gf.sigma.asDiagonal();

    Solution out;
    out.prototypes = (gf.scale * gf.u * rotated.transpose()).colwise() + mean;
    out.membership = (coords * rotated.transpose()) / gf.scale;
    out.membership.array() += 1.0 / static_cast<double>(k);
    // F G^T is invariant under the rotation: U (BR)^T (BR) Sigma V^T = U Sigma V^T.
    out.objective = sol.objective;
    return out;
}

double objective(const Matrix& x, const Matrix& prototypes, const Matrix& membership) {
    if (prototypes.rows() != x.rows() || membership.rows() != x.cols() ||
        prototypes.cols() != membership.cols()) {
        throw InvalidInput("objective: shapes X " + std::to_string(x.rows()) + "x" +
                           std::to_string(x.cols()) + ", F " + std::to_string(prototypes.rows()) +
                           "x" + std::to_string(prototypes.cols()) + ", G " +
                           std::to_string(membership.rows()) + "x" +
                           std::to_string(membership.cols()) + " are not conformant");
    }
    return (x - prototypes * membership.transpose()).squaredNorm();
}

double objective(const DataMatrix& x, const Matrix& prototypes, const Matrix& membership) {
    return objective(x.values(), prototypes, membership);
}

double infinity_bound(int k) {
    if (k < 2) {
        throw InvalidInput("infinity_bound needs k >= 2");
    }
    return std::sqrt(static_cast<double>(k) * (k - 1)) / k;
}

}  // namespace softkm
