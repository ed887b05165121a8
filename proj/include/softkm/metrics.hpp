#pragma once

#include <vector>

#include "softkm/core.hpp"

namespace softkm {

/// Hard cluster ids 0..c-1, one per sample.
class LabelVector {
public:
    explicit LabelVector(std::vector<int> labels);

    const std::vector<int>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    int num_classes() const { return classes_; }
    int operator[](std::size_t i) const { return labels_[i]; }

private:
    std::vector<int> labels_;
    int classes_ = 0;
};

/// Row-wise argmax; ties go to the lowest column.
LabelVector hard_assign(const Matrix& membership);

/// Fraction of samples matched under the best one-to-one label mapping.
double accuracy(const LabelVector& pred, const LabelVector& truth);

/// I(pred; truth) / sqrt(H(pred) H(truth)).
double nmi(const LabelVector& pred, const LabelVector& truth);

double purity(const LabelVector& pred, const LabelVector& truth);

/// Minimum-cost perfect assignment on a rows <= cols cost matrix; returns the
/// column assigned to each row.
std::vector<int> hungarian(const Matrix& cost);

}  // namespace softkm
