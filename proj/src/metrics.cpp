#include "softkm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "softkm/error.hpp"

namespace softkm {

LabelVector::LabelVector(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw InvalidInput("label vector is empty");
    }
    for (int l : labels_) {
        if (l < 0) throw InvalidInput("labels must be nonnegative, got " + std::to_string(l));
        classes_ = std::max(classes_, l + 1);
    }
}

LabelVector hard_assign(const Matrix& membership) {
    if (membership.rows() == 0 || membership.cols() == 0) {
        throw InvalidInput("membership matrix is empty");
    }
    std::vector<int> labels(static_cast<std::size_t>(membership.rows()));
    for (Eigen::Index i = 0; i < membership.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < membership.cols(); ++j) {
            if (membership(i, j) > membership(i, best)) best = j;
        }
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return LabelVector(std::move(labels));
}

namespace {

void check_lengths(const LabelVector& a, const LabelVector& b) {
    if (a.size() != b.size()) {
        throw InvalidInput("label vectors differ in length (" + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()) + ")");
    }
}

// counts(p, t) = number of samples with predicted p and true t.
Matrix contingency(const LabelVector& pred, const LabelVector& truth) {
    Matrix c = Matrix::Zero(pred.num_classes(), truth.num_classes());
    for (std::size_t i = 0; i < pred.size(); ++i) c(pred[i], truth[i]) += 1.0;
    return c;
}

double entropy(const Vector& counts, double n) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        if (counts(i) > 0.0) {
            const double p = counts(i) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

}  // namespace

std::vector<int> hungarian(const Matrix& cost) {
    // Shortest augmenting path formulation with row/column potentials.
    const Eigen::Index rows = cost.rows();
    const Eigen::Index cols = cost.cols();
    if (rows > cols) {
        throw InvalidInput("hungarian: more rows than columns");
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
    std::vector<Eigen::Index> match(cols + 1, 0), way(cols + 1, 0);
    for (Eigen::Index i = 1; i <= rows; ++i) {
        match[0] = i;
        Eigen::Index j0 = 0;
        std::vector<double> minv(cols + 1, inf);
        std::vector<bool> used(cols + 1, false);
        do {
            used[j0] = true;
            const Eigen::Index i0 = match[j0];
            double delta = inf;
            Eigen::Index j1 = 0;
            for (Eigen::Index j = 1; j <= cols; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Eigen::Index j = 0; j <= cols; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const Eigen::Index j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assignment(static_cast<std::size_t>(rows), -1);
    for (Eigen::Index j = 1; j <= cols; ++j) {
        if (match[j] != 0) assignment[match[j] - 1] = static_cast<int>(j - 1);
    }
    return assignment;
}

double accuracy(const LabelVector& pred, const LabelVector& truth) {
    check_lengths(pred, truth);
    Matrix counts = contingency(pred, truth);
    // Pad to square so that either side may have more classes.
    const Eigen::Index m = std::max(counts.rows(), counts.cols());
    Matrix cost = Matrix::Zero(m, m);
    cost.topLeftCorner(counts.rows(), counts.cols()) = -counts;
    const auto assignment = hungarian(cost);
    double matched = 0.0;
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        const int j = assignment[static_cast<std::size_t>(i)];
        if (j < counts.cols()) matched += counts(i, j);
    }
    return matched / static_cast<double>(pred.size());
}

double nmi(const LabelVector& pred, const LabelVector& truth) {
    check_lengths(pred, truth);
    const double n = static_cast<double>(pred.size());
    const Matrix c = contingency(pred, truth);
    const Vector pc = c.rowwise().sum();
    const Vector tc = c.colwise().sum().transpose();
    const double hp = entropy(pc, n);
    const double ht = entropy(tc, n);
    if (hp == 0.0 || ht == 0.0) {
        return (hp == 0.0 && ht == 0.0) ? 1.0 : 0.0;
    }
    double mi = 0.0;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            if (c(i, j) > 0.0) {
                mi += (c(i, j) / n) * std::log(n * c(i, j) / (pc(i) * tc(j)));
            }
        }
    }
    return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

double purity(const LabelVector& pred, const LabelVector& truth) {
    check_lengths(pred, truth);
    const Matrix c = contingency(pred, truth);
    return c.rowwise().maxCoeff().sum() / static_cast<double>(pred.size());
}

}  // namespace softkm
