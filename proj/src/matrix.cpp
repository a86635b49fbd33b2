#include "seqrec/matrix.hpp"

#include <cmath>
#include <utility>

#include "seqrec/errors.hpp"

namespace seqrec {

Matrix::Matrix(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw NumericError("matrix data length " + std::to_string(data_.size()) +
                       " does not match shape " + shape_str());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); i++) {
    if (rows[i].size() != rows[0].size()) {
      throw NumericError("ragged row list in from_rows");
    }
    for (size_t j = 0; j < rows[i].size(); j++) m(i, j) = rows[i][j];
  }
  return m;
}

std::string Matrix::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Matrix::fill(double v) {
  for (double& x : data_) x = v;
}

void Matrix::add_scaled(const Matrix& other, double scale) {
  if (!same_shape(other)) {
    throw NumericError("add_scaled shape mismatch: " + shape_str() + " vs " + other.shape_str());
  }
  for (size_t i = 0; i < data_.size(); i++) data_[i] += scale * other.data_[i];
}

}  // namespace seqrec
