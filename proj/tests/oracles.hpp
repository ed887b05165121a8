#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
    return m;
}

/// Rows drawn uniformly from the probability simplex (normalized exponentials).
inline Matrix row_stochastic(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    Matrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = e(rng);
        g.row(i) /= g.row(i).sum();
    }
    return g;
}

/// Orthogonal matrix from the QR factorization of a Gaussian matrix.
inline Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    return q;
}

/// All singular values, descending, from the eigenvalues of A^T A or A A^T.
inline Vector singular_values(const Matrix& a) {
    const Matrix gram = a.rows() <= a.cols() ? Matrix(a * a.transpose()) : Matrix(a.transpose() * a);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    Vector ev = eig.eigenvalues().reverse();
    return ev.cwiseMax(0.0).cwiseSqrt();
}

/// Sum of squared singular values of the row-centered matrix from index `from` (0-based) on.
inline double tail_energy(const Matrix& x, Eigen::Index from) {
    const Matrix xc = x.colwise() - x.rowwise().mean();
    const Vector s = singular_values(xc);
    double t = 0.0;
    for (Eigen::Index i = from; i < s.size(); ++i) t += s(i) * s(i);
    return t;
}

/// Brute-force minimum of ||x - F g||^2 over a grid on the probability simplex (k <= 3).
inline Vector grid_simplex_ls(const Matrix& f, const Vector& x, double step) {
    const Eigen::Index k = f.cols();
    const int steps = static_cast<int>(std::lround(1.0 / step));
    Vector best = Vector::Zero(k);
    double best_val = INFINITY;
    auto consider = [&](const Vector& g) {
        const double v = (x - f * g).squaredNorm();
        if (v < best_val) {
            best_val = v;
            best = g;
        }
    };
    if (k == 1) return Vector::Ones(1);
    for (int a = 0; a <= steps; ++a) {
        if (k == 2) {
            Vector g(2);
            g << a * step, 1.0 - a * step;
            consider(g);
            continue;
        }
        for (int b = 0; a + b <= steps; ++b) {
            Vector g(3);
            g << a * step, b * step, 1.0 - (a + b) * step;
            consider(g);
        }
    }
    return best;
}

/// Minimum of ||g - v|| over a simplex grid in R^3.
inline Vector grid_projection(const Vector& v, double step) {
    return grid_simplex_ls(Matrix::Identity(v.size(), v.size()), v, step);
}

/// Closed-form minimizer of ||x - F g|| over {1^T g = 1} for rank(F) = k-1:
/// g = Phi + v_perp (1 - 1^T Phi) / (1^T v_perp), Phi = V Sigma^-1 U^T x.
inline Vector affine_ls_closed_form(const Matrix& f, const Vector& x) {
    const Eigen::Index k = f.cols();
    Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix u = svd.matrixU().leftCols(k - 1);
    const Vector s = svd.singularValues().head(k - 1);
    const Matrix v = svd.matrixV().leftCols(k - 1);
    const Vector v_perp = svd.matrixV().col(k - 1);
    const Vector phi = v * s.cwiseInverse().asDiagonal() * u.transpose() * x;
    return phi + v_perp * (1.0 - phi.sum()) / v_perp.sum();
}

/// Convex hull of 2-D points (columns), counter-clockwise, by monotone chain.
inline std::vector<Eigen::Vector2d> convex_hull(const Matrix& pts) {
    std::vector<Eigen::Vector2d> p;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) p.emplace_back(pts(0, i), pts(1, i));
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
        h[k++] = p[i - 1];
    }
    h.resize(k - 1);
    return h;
}

/// Point lies in the hull iff it satisfies every edge's half-plane inequality
/// (with slack `tol`, positive = lenient).
inline bool inside_hull(const std::vector<Eigen::Vector2d>& hull, const Eigen::Vector2d& q,
                        double tol) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        const Eigen::Vector2d edge = b - a;
        const double side = edge.x() * (q.y() - a.y()) - edge.y() * (q.x() - a.x());
        if (side < -tol * edge.norm()) return false;
    }
    return true;
}

/// Best matching fraction over every injective relabelling of pred.
inline double brute_force_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    const int kp = *std::max_element(pred.begin(), pred.end()) + 1;
    const int kt = *std::max_element(truth.begin(), truth.end()) + 1;
    const int m = std::max(kp, kt);
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hit = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            if (perm[static_cast<std::size_t>(pred[i])] == truth[i]) ++hit;
        }
        best = std::max(best, hit);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(pred.size());
}

}  // namespace oracle
