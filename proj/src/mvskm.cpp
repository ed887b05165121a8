#include "softkm/mvskm.hpp"

#include <cmath>
#include <string>

#include "softkm/error.hpp"
#include "softkm/skm_am.hpp"

namespace softkm {

namespace {

// All k singular values of F (d x k), zero-padded when d < k.
Vector all_singular_values(const Matrix& f) {
    Vector s = Vector::Zero(f.cols());
    if (f.size() > 0) {
        const Vector thin = Eigen::JacobiSVD<Matrix>(f).singularValues();
        s.head(thin.size()) = thin;
    }
    return s;
}

}  // namespace

double volume_regularizer(const Matrix& f, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw InvalidInput("epsilon must be > 0");
    }
    const Vector s = all_singular_values(f);
    return (s.array().square() + epsilon).log().sum();
}

double log_simplex_volume(const Matrix& f, double tau) {
    const Eigen::Index k = f.cols();
    if (k < 2) {
        throw InvalidInput("log_simplex_volume needs k >= 2");
    }
    const double scale = std::max(f.norm(), 1e-300);
    if (f.rowwise().sum().norm() > 1e-8 * scale) {
        throw PreconditionViolated("prototype columns must sum to zero");
    }
    const Vector s = all_singular_values(f);
    if (!(s(k - 2) > tau * s(0))) {
        throw DegenerateSimplex("prototype simplex has affine dimension below k - 1");
    }
    return std::log(std::sqrt(static_cast<double>(k))) + s.head(k - 1).array().log().sum();
}

Matrix reweight_matrix(const Matrix& f, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw InvalidInput("epsilon must be > 0");
    }
    const Eigen::Index k = f.cols();
    // Right singular vectors of F are the eigenvectors of F^T F.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(f.transpose() * f);
    const Vector sq = eig.eigenvalues().cwiseMax(0.0);
    const Vector w = (sq.array() + epsilon).inverse();
    Matrix d = eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().transpose();
    d = 0.5 * (d + d.transpose());
    if (d.rows() != k) {
        throw NumericalFailure("reweight matrix has the wrong size");
    }
    return d;
}

double mvskm_objective(const Matrix& centered, const Matrix& f, const Matrix& g, double lambda,
                       double epsilon) {
    if (f.rows() != centered.rows() || g.rows() != centered.cols() || f.cols() != g.cols()) {
        throw InvalidInput("mvskm objective: shapes are not conformant");
    }
    const double fit = (centered - f * g.transpose()).squaredNorm();
    if (lambda == 0.0) return fit;
    return fit + 0.5 * lambda * volume_regularizer(f, epsilon);
}

namespace {

// Weight of lambda on tr(D F^T F) in the F-step.
constexpr double kStepWeight = 0.5;

// Minimizer of ||Xc - F G^T||^2 + weight * tr(D F^T F).
Matrix prototype_step(const Matrix& xc, const Matrix& g, const Matrix& d, double weight) {
    Matrix sys = g.transpose() * g;
    if (weight > 0.0) {
        sys += weight * d;
    } else {
        sys.diagonal().array() += 1e-10 * sys.trace() / static_cast<double>(g.cols());
    }
    Eigen::LDLT<Matrix> ldlt(sys);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 0.0) {
        throw NumericalFailure("minimal-volume F-step: G^T G + lambda D is singular");
    }
    Matrix f = ldlt.solve((xc * g).transpose()).transpose();
    if (!f.allFinite()) {
        throw NumericalFailure("minimal-volume F-step produced non-finite prototypes");
    }
    return f;
}

}  // namespace

MvskmResult solve_mvskm(const DataMatrix& x, int k, const MvskmOptions& opts) {
    if (k < 2 || k > x.size()) {
        throw InvalidInput("k must lie in [2, n], got " + std::to_string(k));
    }
    if (!(opts.lambda >= 0.0) || !(opts.epsilon > 0.0) || opts.max_outer_iters < 1 ||
        !(opts.rel_obj_tol > 0.0)) {
        throw InvalidInput("invalid minimal-volume options (lambda >= 0, epsilon > 0 required)");
    }
    const Matrix& xc = x.centered();
    const double lambda = opts.lambda;
    const double eps = opts.epsilon;
    const double step_weight = kStepWeight * lambda;

    Matrix f;
    if (opts.initial_prototypes) {
        f = *opts.initial_prototypes;
        if (f.rows() != x.dim() || f.cols() != k) {
            throw InvalidInput("initial prototypes must be d x k");
        }
    } else {
        const auto idx = pick_distinct_samples(x.size(), k, opts.seed);
        f.resize(x.dim(), k);
        for (int j = 0; j < k; ++j) f.col(j) = xc.col(idx[j]);
        if (lambda > 0.0) {
            // Start with F 1 = 0 so the smallest singular direction is F's mean direction.
            f.colwise() -= f.rowwise().mean();
        }
    }

    MvskmResult out;
    MvskmState& st = out.state;
    Matrix g = solve_membership(f, xc, opts.inner);
    double obj = mvskm_objective(xc, f, g, lambda, eps);
    st.objective_trace.push_back(obj);
    Matrix d = reweight_matrix(f, eps);

    for (int it = 0; it < opts.max_outer_iters; ++it) {
        d = reweight_matrix(f, eps);
        f = prototype_step(xc, g, d, step_weight);
        g = solve_membership(f, xc, g, opts.inner);
        const double next = mvskm_objective(xc, f, g, lambda, eps);
        if (!std::isfinite(next)) {
            throw NumericalFailure("minimal-volume objective became non-finite");
        }
        st.objective_trace.push_back(next);
        st.iterations = it + 1;
        const double decrease = obj - next;
        obj = next;
        if (decrease <= opts.rel_obj_tol * std::max(std::abs(obj), 1e-300)) break;
    }

    st.prototypes = f;
    st.membership = g;
    st.reweight = d;
    st.sigma = all_singular_values(f);

    out.solution.prototypes = f.colwise() + x.mean();
    out.solution.membership = std::move(g);
    out.solution.objective = (x.values() - out.solution.prototypes *
                                               out.solution.membership.transpose())
                                 .squaredNorm();
    return out;
}

}  // namespace softkm
