#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ocqsl {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero-filled rows x cols matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws NonFiniteError on NaN/Inf and DomainError on
  /// a size mismatch.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<Complex> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  bool all_finite() const noexcept;
  bool is_real() const noexcept;
  /// Largest |entry|.
  double max_abs() const noexcept;
  /// Frobenius norm.
  double norm() const noexcept;
  /// Max entrywise |m - m^dagger|; square matrices only.
  double hermiticity_defect() const;

  ComplexMatrix adjoint() const;
  /// Leading rows x cols block.
  ComplexMatrix block(std::size_t rows, std::size_t cols) const;

  std::vector<Complex> apply(std::span<const Complex> v) const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

}  // namespace ocqsl
