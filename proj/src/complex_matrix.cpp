#include "switchtel/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace switchtel {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::vector<cdouble> entries) {
  const std::size_t n = entries.size();
  return ComplexMatrix(n, 1, std::move(entries));
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

cdouble ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
  cdouble t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cdouble& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::norm() const {
  double s = 0.0;
  for (const cdouble& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix addition: dimension mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix subtraction: dimension mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scale) {
  for (cdouble& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: dimension mismatch");
  }
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  ComplexMatrix out(n, m);
  // Accumulate real/imaginary parts directly; keeps the inner loop free of
  // libcall-based complex multiplication.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const cdouble aip = a(i, p);
      const double ar = aip.real(), ai = aip.imag();
      if (ar == 0.0 && ai == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const cdouble bpj = b(p, j);
        const double br = bpj.real(), bi = bpj.imag();
        out(i, j) += cdouble(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return out;
}

}  // namespace switchtel
