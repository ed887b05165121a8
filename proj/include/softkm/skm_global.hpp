#pragma once

#include <utility>

#include "softkm/core.hpp"

namespace softkm {

/// Orthogonal (k-1) x (k-1) matrix applied to the simplex basis.
class RotationMatrix {
public:
    /// Throws InvalidInput unless R^T R = I within 1e-10.
    explicit RotationMatrix(Matrix r);

    const Matrix& matrix() const { return r_; }

private:
    Matrix r_;
};

/// Closed-form global minimizer of ||X - F G^T||_F^2 over prototypes F and
/// row-stochastic nonnegative memberships G.
///
/// The prototypes form a regular simplex spanning the leading (k-1)-dimensional
/// principal subspace of the centered data, scaled just enough for every
/// projected sample to fall inside it. The optimum equals the energy of the
/// centered data outside that subspace.
std::pair<Solution, GlobalFactors> solve_global(const DataMatrix& x, int k);

/// Rebuilds a solve_global result with basis B R in place of B. F G^T, and so
/// the objective, is unchanged; the memberships generally are not.
Solution rotate_solution(const Solution& sol, const GlobalFactors& gf, const RotationMatrix& r);

/// ||X - F G^T||_F^2. Throws InvalidInput on shape mismatch.
double objective(const DataMatrix& x, const Matrix& prototypes, const Matrix& membership);
double objective(const Matrix& x, const Matrix& prototypes, const Matrix& membership);

/// Largest infinity norm of a unit-ball vector in R^k orthogonal to the ones vector.
double infinity_bound(int k);

}  // namespace softkm
