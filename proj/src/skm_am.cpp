#include "softkm/skm_am.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "softkm/error.hpp"
#include "softkm/skm_global.hpp"

namespace softkm {

std::vector<Eigen::Index> pick_distinct_samples(Eigen::Index n, int k, std::uint64_t seed) {
    if (k < 1 || k > n) {
        throw InvalidInput("cannot pick " + std::to_string(k) + " distinct samples out of " +
                           std::to_string(n));
    }
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates with an explicit draw so results do not depend on
    // the standard library's shuffle implementation.
    for (int i = 0; i < k; ++i) {
        const std::uint64_t span = static_cast<std::uint64_t>(n - i);
        const auto j = static_cast<Eigen::Index>(i + rng() % span);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(static_cast<std::size_t>(k));
    return idx;
}

namespace {

Matrix prototype_step(const Matrix& x, const Matrix& g, double ridge_factor) {
    Matrix gram = g.transpose() * g;
    const double ridge = ridge_factor * gram.trace() / static_cast<double>(g.cols());
    gram.diagonal().array() += ridge;
    Eigen::LDLT<Matrix> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 0.0) {
        throw NumericalFailure("alternating minimization: G^T G is singular");
    }
    Matrix f = ldlt.solve((x * g).transpose()).transpose();
    if (!f.allFinite()) {
        throw NumericalFailure("alternating minimization: non-finite prototypes");
    }
    return f;
}

}  // namespace

AmResult solve_am(const DataMatrix& x, int k, const AmOptions& opts) {
    if (k < 1 || k > x.size()) {
        throw InvalidInput("k must lie in [1, n], got " + std::to_string(k));
    }
    if (opts.max_outer_iters < 1 || !(opts.rel_obj_tol > 0.0) || opts.ridge < 0.0) {
        throw InvalidInput("invalid alternating-minimization options");
    }
    const Matrix& data = x.values();

    Matrix f;
    if (opts.initial_prototypes) {
        f = *opts.initial_prototypes;
        if (f.rows() != x.dim() || f.cols() != k) {
            throw InvalidInput("initial prototypes must be d x k");
        }
    } else {
        const auto idx = pick_distinct_samples(x.size(), k, opts.seed);
        f.resize(x.dim(), k);
        for (int j = 0; j < k; ++j) f.col(j) = data.col(idx[j]);
    }

    AmResult out;
    Matrix g = solve_membership(f, data, opts.inner);
    double obj = objective(data, f, g);
    if (!std::isfinite(obj)) {
        throw NumericalFailure("alternating minimization: initial objective is not finite");
    }
    out.trace.push_back(obj);

    for (int it = 0; it < opts.max_outer_iters; ++it) {
        f = prototype_step(data, g, opts.ridge);
        g = solve_membership(f, data, g, opts.inner);
        const double next = objective(data, f, g);
        if (!std::isfinite(next)) {
            throw NumericalFailure("alternating minimization: objective became non-finite at step " +
                                   std::to_string(it + 1));
        }
        out.trace.push_back(next);
        out.iterations = it + 1;
        const double decrease = obj - next;
        obj = next;
        if (decrease <= opts.rel_obj_tol * std::max(std::abs(obj), 1e-300)) break;
    }
    out.solution = Solution{std::move(f), std::move(g), obj};
    return out;
}

}  // namespace softkm
