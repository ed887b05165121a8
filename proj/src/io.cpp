#include "softkm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "softkm/error.hpp"

namespace softkm {

namespace {

std::string trim(std::string_view s) {
    auto b = s.begin();
    auto e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return std::string(b, e);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<long> line_numbers;
};

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open " + path.string());
    }
    Table t;
    std::string line;
    long line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (first) {
            first = false;
            const bool numeric = std::all_of(cells.begin(), cells.end(), [](const std::string& c) {
                double v;
                return parse_double(c, v);
            });
            if (!numeric) {
                t.header = std::move(cells);
                continue;
            }
        }
        t.rows.push_back(std::move(cells));
        t.line_numbers.push_back(line_no);
    }
    if (t.rows.empty()) {
        throw ParseError(path.string() + ": no data rows", line_no);
    }
    const std::size_t width = t.header.empty() ? t.rows.front().size() : t.header.size();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.rows[r].size() != width) {
            throw ParseError(path.string() + ": row " + std::to_string(t.line_numbers[r]) +
                                 " has " + std::to_string(t.rows[r].size()) +
                                 " columns, expected " + std::to_string(width),
                             t.line_numbers[r]);
        }
    }
    return t;
}

bool is_label_name(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return name == "label";
}

Matrix numeric_block(const Table& t, const std::filesystem::path& path, std::size_t cols) {
    Matrix m(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double v = 0.0;
            if (!parse_double(t.rows[r][c], v)) {
                throw ParseError(path.string() + ": row " + std::to_string(t.line_numbers[r]) +
                                     ", column " + std::to_string(c + 1) + ": '" +
                                     t.rows[r][c] + "' is not a finite number",
                                 t.line_numbers[r], static_cast<long>(c + 1));
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return m;
}

LabelVector label_column(const Table& t, const std::filesystem::path& path, std::size_t col) {
    std::vector<int> labels(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        int v = 0;
        if (!parse_int(t.rows[r][col], v) || v < 0) {
            throw ParseError(path.string() + ": row " + std::to_string(t.line_numbers[r]) +
                                 ", column " + std::to_string(col + 1) + ": '" + t.rows[r][col] +
                                 "' is not a nonnegative integer label",
                             t.line_numbers[r], static_cast<long>(col + 1));
        }
        labels[r] = v;
    }
    return LabelVector(std::move(labels));
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path) {
    const Table t = read_table(path);
    const std::size_t width = t.rows.front().size();
    const bool has_label = !t.header.empty() && is_label_name(t.header.back());
    const std::size_t numeric_cols = has_label ? width - 1 : width;
    if (numeric_cols == 0) {
        throw ParseError(path.string() + ": no feature columns", 1);
    }
    Matrix samples = numeric_block(t, path, numeric_cols);
    std::optional<LabelVector> labels;
    if (has_label) labels = label_column(t, path, width - 1);
    return Dataset{DataMatrix(samples.transpose()), std::move(labels)};
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
    const Table t = read_table(path);
    return numeric_block(t, path, t.rows.front().size());
}

LabelVector load_labels_csv(const std::filesystem::path& path) {
    const Table t = read_table(path);
    if (t.rows.front().size() != 1) {
        throw ParseError(path.string() + ": expected a single label column", t.line_numbers[0]);
    }
    return label_column(t, path, 0);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

void save_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_real(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

void save_dataset_csv(const std::filesystem::path& path, const Matrix& samples,
                      const std::optional<LabelVector>& labels) {
    auto out = open_out(path);
    if (labels) {
        if (static_cast<Eigen::Index>(labels->size()) != samples.cols()) {
            throw InvalidInput("label count does not match sample count");
        }
        for (Eigen::Index r = 0; r < samples.rows(); ++r) out << 'x' << r << ',';
        out << "label\n";
    }
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
        for (Eigen::Index r = 0; r < samples.rows(); ++r) {
            if (r) out << ',';
            out << format_real(samples(r, j));
        }
        if (labels) out << ',' << (*labels)[static_cast<std::size_t>(j)];
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace softkm
