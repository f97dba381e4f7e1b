#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace switchtel {

using cdouble = std::complex<double>;

/// Dense row-major complex matrix; the single carrier for states, operators
/// and density matrices. Dimensions in this project never exceed 16.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

  static ComplexMatrix identity(std::size_t n);
  /// Column vector (a state when normalized).
  static ComplexMatrix column(std::vector<cdouble> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_ && rows_ > 0; }
  bool is_column() const { return cols_ == 1 && rows_ > 0; }

  cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  const std::vector<cdouble>& entries() const { return entries_; }

  ComplexMatrix dagger() const;
  cdouble trace() const;
  /// Entrywise sup norm, the ‖·‖_max used by all tolerance checks.
  double max_abs() const;
  /// 2-norm over all entries (the state norm for column vectors).
  double norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cdouble scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cdouble s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(cdouble s, ComplexMatrix a) {
    a *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> entries_;
};

/// Matrix product. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace switchtel
