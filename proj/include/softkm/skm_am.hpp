#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "softkm/core.hpp"
#include "softkm/simplex.hpp"

namespace softkm {

/// Options for the alternating-minimization baseline.
struct AmOptions {
    int max_outer_iters = 200;
    double rel_obj_tol = 1e-8;
    /// Relative ridge on the F-step normal equations, scaled by trace(G^T G)/k.
    double ridge = 1e-10;
    /// Initial prototypes (d x k). When empty, k distinct samples are drawn with `seed`.
    std::optional<Matrix> initial_prototypes;
    std::uint64_t seed = 0;
    SimplexSolveOptions inner;
};

struct AmResult {
    Solution solution;
    /// Objective after each G-step, starting with the one from the initial prototypes.
    std::vector<double> trace;
    int iterations = 0;
};

/// Alternates the exact F-step F = X G (G^T G + ridge I)^-1 with per-sample
/// simplex least squares for G.
AmResult solve_am(const DataMatrix& x, int k, const AmOptions& opts = {});

/// Indices of k distinct samples drawn with a seeded generator.
std::vector<Eigen::Index> pick_distinct_samples(Eigen::Index n, int k, std::uint64_t seed);

}  // namespace softkm
