#include "roecalc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roecalc/errors.hpp"
#include "roecalc/parallel.hpp"

namespace roecalc {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw StructuralError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                            " entries, expected " + std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

double Matrix::max_abs_difference(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw StructuralError("matrix shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

Matrix min_plus(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("min-plus product: inner dimensions differ");
  if (a.cols() == 0) throw StructuralError("min-plus product over an empty middle index set");
  Matrix out(a.rows(), b.cols(), std::numeric_limits<double>::infinity());
  // Row blocks are independent; each output row is written by one worker.
  parallel_for(a.rows(), [&](std::size_t i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      const auto brow = b.row(j);
      for (std::size_t k = 0; k < brow.size(); ++k) {
        const double v = aij + brow[k];
        if (v < out(i, k)) out(i, k) = v;
      }
    }
  });
  return out;
}

}  // namespace roecalc
