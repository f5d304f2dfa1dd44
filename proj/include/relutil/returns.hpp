#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relutil {

// n x d matrix of strictly positive daily price relatives r_k^i, row-major,
// one trading day per row. Column labels (tickers) are optional.
class ReturnsMatrix {
  public:
    ReturnsMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                  std::vector<std::string> labels = {});

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    double operator()(std::size_t k, std::size_t i) const {
        return values_[k * cols_ + i];
    }
    [[nodiscard]] std::span<const double> row(std::size_t k) const {
        return {values_.data() + k * cols_, cols_};
    }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    [[nodiscard]] bool has_labels() const { return !labels_.empty(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
    std::vector<std::string> labels_;
};

// Global minimum and maximum entry of a returns matrix.
struct ReturnRange {
    double r_min = 0.0;
    double r_max = 0.0;
};

// Argmax index (lowest on ties) and maximum value of a return vector.
std::pair<std::size_t, double> best_return(std::span<const double> r);

// Parses a whitespace-separated matrix, one row per line. Every line must
// have the same number of fields and every entry must be positive; errors
// carry line/column positions.
ReturnsMatrix load_returns(const std::filesystem::path& path);

// Writes the matrix in the same whitespace format at 17 significant digits
// (round-trips bit-identically through load_returns).
void save_returns(const ReturnsMatrix& R, const std::filesystem::path& path);

// Loads one ticker name per line; used to label dataset columns.
std::vector<std::string> load_tickers(const std::filesystem::path& path);

// Divides each row by its maximum, making every row's max exactly 1.
ReturnsMatrix normalize_by_best(const ReturnsMatrix& R);

ReturnRange return_range(const ReturnsMatrix& R);

} // namespace relutil
