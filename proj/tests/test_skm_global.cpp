#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "softkm/error.hpp"
#include "softkm/skm_am.hpp"
#include "softkm/skm_global.hpp"

using namespace softkm;

namespace {

void check_feasible(const Matrix& g) {
    CHECK(g.minCoeff() >= -1e-12);
    CHECK((g.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
}

Matrix two_points() {
    Matrix x(1, 2);
    x << -1, 1;
    return x;
}

}  // namespace

TEST_CASE("solve_global on two points on a line") {
    const auto [sol, gf] = solve_global(center(two_points()), 2);
    CHECK(sol.prototypes(0, 0) == doctest::Approx(1.0));
    CHECK(sol.prototypes(0, 1) == doctest::Approx(-1.0));
    const Matrix expected = (Matrix(2, 2) << 0, 1, 1, 0).finished();
    CHECK((sol.membership - expected).norm() <= 1e-12);
    CHECK(sol.objective <= 1e-24);
    CHECK(gf.radius == doctest::Approx(1.0));
    CHECK(gf.scale == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("solve_global recovers exactly factorizable data") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 2 + trial % 3;
        const int d = k - 1 + trial % 3;
        const Matrix f0 = oracle::gaussian(d, k, rng);
        const Matrix g0 = oracle::row_stochastic(40, k, rng);
        const Matrix x = f0 * g0.transpose();
        const auto [sol, gf] = solve_global(center(x), k);
        CHECK(sol.objective <= 1e-10 * x.squaredNorm());
        check_feasible(sol.membership);
    }
}

TEST_CASE("solve_global objective equals the tail energy of the centered data") {
    std::mt19937_64 rng(17);
    const Matrix x = oracle::gaussian(5, 200, rng);
    const auto [sol, gf] = solve_global(center(x), 3);
    const double tail = oracle::tail_energy(x, 2);
    CHECK(std::abs(sol.objective - tail) <= 1e-8 * tail);
    CHECK(std::abs(sol.objective - objective(x, sol.prototypes, sol.membership)) <=
          1e-8 * sol.objective);
    check_feasible(sol.membership);

    CHECK((gf.u.transpose() * gf.u - Matrix::Identity(2, 2)).norm() <= 1e-10);
    const double max_col = (gf.u.transpose() * center(x).centered()).colwise().norm().maxCoeff();
    CHECK(gf.radius == doctest::Approx(max_col).epsilon(1e-12));
    CHECK((gf.s - gf.scale * gf.basis.transpose()).norm() <= 1e-12 * gf.scale);
}

TEST_CASE("solve_global is translation invariant") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix x = oracle::gaussian(4, 60, rng);
        const Vector t = 10.0 * oracle::gaussian(4, 1, rng);
        const auto [a, fa] = solve_global(center(x), 3);
        const auto [b, fb] = solve_global(center(x.colwise() + t), 3);
        CHECK(std::abs(a.objective - b.objective) <= 1e-9 * a.objective);
        CHECK((a.membership - b.membership).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("solve_global special cases") {
    SUBCASE("k = 1 keeps every sample on the mean") {
        Matrix x(2, 3);
        x << 1, 2, 6, 0, 3, 0;
        const auto d = center(x);
        const auto [sol, gf] = solve_global(d, 1);
        CHECK((sol.prototypes.col(0) - d.mean()).norm() <= 1e-14);
        CHECK((sol.membership - Matrix::Ones(3, 1)).norm() == 0.0);
        CHECK(sol.objective == doctest::Approx(d.centered().squaredNorm()));
    }
    SUBCASE("identical samples give the limit solution") {
        const Matrix x = Matrix::Constant(3, 5, 2.5);
        const auto [sol, gf] = solve_global(center(x), 3);
        CHECK(gf.radius == 0.0);
        CHECK((sol.membership - Matrix::Constant(5, 3, 1.0 / 3.0)).norm() <= 1e-15);
        CHECK(sol.objective == 0.0);
    }
    SUBCASE("k - 1 beyond min(d, n)") {
        std::mt19937_64 rng(1);
        CHECK_THROWS_AS(solve_global(center(oracle::gaussian(2, 10, rng)), 4), InvalidInput);
        CHECK_THROWS_AS(solve_global(center(oracle::gaussian(5, 2, rng)), 4), InvalidInput);
        CHECK_THROWS_AS(solve_global(center(oracle::gaussian(5, 4, rng)), 0), InvalidInput);
    }
}

TEST_CASE("rotate_solution") {
    std::mt19937_64 rng(41);
    const Matrix x = oracle::gaussian(4, 80, rng);
    const auto d = center(x);
    const int k = 4;
    const auto [sol, gf] = solve_global(d, k);

    SUBCASE("identity") {
        const auto same = rotate_solution(sol, gf, RotationMatrix(Matrix::Identity(3, 3)));
        CHECK((same.membership - sol.membership).norm() <= 1e-12);
        CHECK((same.prototypes - sol.prototypes).norm() <= 1e-12 * sol.prototypes.norm());
    }
    SUBCASE("negation moves G by the closed-form amount") {
        const auto neg = rotate_solution(sol, gf, RotationMatrix(-Matrix::Identity(3, 3)));
        const double expected =
            4.0 / (gf.scale * gf.scale) * (gf.u.transpose() * d.centered()).squaredNorm();
        CHECK((neg.membership - sol.membership).squaredNorm() ==
              doctest::Approx(expected).epsilon(1e-10));
        CHECK(objective(d, neg.prototypes, neg.membership) ==
              doctest::Approx(sol.objective).epsilon(1e-9));
    }
    SUBCASE("random rotations keep G feasible and the objective fixed") {
        for (int trial = 0; trial < 10; ++trial) {
            const auto rot =
                rotate_solution(sol, gf, RotationMatrix(oracle::random_orthogonal(3, rng)));
            check_feasible(rot.membership);
            const double recomputed = objective(d, rot.prototypes, rot.membership);
            CHECK(std::abs(recomputed - sol.objective) <= 1e-9 * sol.objective);
        }
    }
    SUBCASE("non-orthogonal or mis-sized rotations are rejected") {
        CHECK_THROWS_AS(RotationMatrix(2.0 * Matrix::Identity(3, 3)), InvalidInput);
        CHECK_THROWS_AS(rotate_solution(sol, gf, RotationMatrix(Matrix::Identity(2, 2))),
                        InvalidInput);
    }
}

TEST_CASE("objective") {
    const Matrix x = two_points();
    const Matrix f = (Matrix(1, 2) << 1, -1).finished();
    const Matrix exact = (Matrix(2, 2) << 0, 1, 1, 0).finished();
    CHECK(objective(x, f, exact) == 0.0);
    CHECK(objective(x, f, Matrix::Zero(2, 2)) == doctest::Approx(x.squaredNorm()));
    CHECK(objective(x, f, Matrix::Constant(2, 2, 0.5)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(objective(x, f, Matrix::Zero(3, 2)), InvalidInput);
    CHECK_THROWS_AS(objective(x, Matrix::Zero(2, 2), exact), InvalidInput);
}

TEST_CASE("infinity_bound") {
    CHECK(infinity_bound(2) == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(infinity_bound(4) == doctest::Approx(0.86602540).epsilon(1e-8));
    const Eigen::Vector2d x(1 / std::sqrt(2.0), -1 / std::sqrt(2.0));
    CHECK(x.cwiseAbs().maxCoeff() == doctest::Approx(infinity_bound(2)));
    CHECK_THROWS_AS(infinity_bound(1), InvalidInput);

    // Sampled: zero-sum vectors in the unit ball never exceed the bound.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int k = 2 + trial % 9;
        Vector v = oracle::gaussian(k, 1, rng);
        v.array() -= v.mean();
        if (v.norm() == 0.0) continue;
        v *= radius(rng) / v.norm();
        if (v.cwiseAbs().maxCoeff() > infinity_bound(k) + 1e-15) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("solve_global is never beaten by alternating minimization") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 2 + trial % 3;
        const Matrix x = oracle::gaussian(4, 60, rng);
        const auto d = center(x);
        const auto [sol, gf] = solve_global(d, k);
        AmOptions opts;
        opts.seed = static_cast<std::uint64_t>(trial);
        const auto am = solve_am(d, k, opts);
        CHECK(sol.objective <= am.solution.objective + 1e-7 * x.squaredNorm());
    }
}

TEST_CASE("solve_global reports overflow as a numerical failure") {
    const Matrix x = (Matrix(2, 3) << 1e200, -1e200, 5e199, 0, 3, 1).finished();
    CHECK_THROWS_AS(solve_global(DataMatrix(x), 2), NumericalFailure);
}
