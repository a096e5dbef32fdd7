#include "ocqsl/numerics/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "ocqsl/error.hpp"

namespace ocqsl {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("ComplexMatrix: shape mismatch");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DomainError("ComplexMatrix: entry count does not match rows*cols");
  }
  if (!all_finite()) throw NonFiniteError("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw NonFiniteError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), finite);
}

bool ComplexMatrix::is_real() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return z.imag() == 0.0; });
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::norm() const noexcept {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw DomainError("hermiticity_defect: matrix is not square");
  double d = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r; c < cols_; ++c) {
      d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return d;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw DomainError("block: larger than matrix");
  ComplexMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_), cols,
                out.entries_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) throw DomainError("apply: vector length mismatch");
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex s = 0.0;
    const auto row_r = row(r);
    for (std::size_t c = 0; c < cols_; ++c) s += row_r[c] * v[c];
    out[r] = s;
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("ComplexMatrix product: inner dimension mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      const auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols_; ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& z : out.entries_) z *= s;
  return out;
}

}  // namespace ocqsl
