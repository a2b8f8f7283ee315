#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace roecalc {

/// Dense row-major matrix of doubles. Used for distance and cross-distance
/// tables; truncations stay small enough that dense storage is the right call.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; throws StructuralError on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> values() const noexcept { return data_; }

  Matrix transposed() const;

  /// Largest |a - b| over matching entries; shapes must agree.
  double max_abs_difference(const Matrix& other) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Tropical product: out(i,k) = min_j a(i,j) + b(j,k). Requires a.cols() == b.rows() > 0.
Matrix min_plus(const Matrix& a, const Matrix& b);

}  // namespace roecalc
