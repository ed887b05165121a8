#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "softkm/core.hpp"
#include "softkm/metrics.hpp"

namespace softkm {

struct Dataset {
    DataMatrix data;
    std::optional<LabelVector> labels;
};

/// Reads one sample per row. A first row containing any non-numeric cell is a
/// header; a final header column named `label` holds integer class ids.
/// Throws ParseError (with row/column) on ragged rows, bad cells or no rows.
Dataset load_csv(const std::filesystem::path& path);

/// Plain numeric CSV, no header; returned as rows x cols exactly as stored.
Matrix load_matrix_csv(const std::filesystem::path& path);

/// Integer labels, one per row (optional header).
LabelVector load_labels_csv(const std::filesystem::path& path);

/// Writes `m` row by row with 12 significant digits.
void save_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// Writes samples as rows (the transpose of the in-memory d x n layout),
/// with an optional `label` column.
void save_dataset_csv(const std::filesystem::path& path, const Matrix& samples,
                      const std::optional<LabelVector>& labels = std::nullopt);

/// 12-significant-digit formatting shared by every file writer.
std::string format_real(double v);

}  // namespace softkm
