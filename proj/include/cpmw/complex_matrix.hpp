// Dense complex matrices at desk scale: the carrier for states, basis
// elements, Kraus operators and superoperator blocks.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "cpmw/errors.hpp"

namespace cpmw {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0)
      throw DimensionError("ComplexMatrix: dimensions must be positive");
  }

  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r > 0 ? rows.begin()->size() : 0;
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c)
        throw DimensionError("ComplexMatrix: ragged initializer");
      std::size_t j = 0;
      for (const Complex& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  // Row-major entry storage; also the vectorization order used throughout.
  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  bool all_finite() const {
    for (const Complex& v : entries_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      m.entries_[k] = std::conj(entries_[k]);
    return m;
  }

  Complex trace() const {
    if (!is_square()) throw DimensionError("trace: matrix must be square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& v : entries_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : entries_) s += std::norm(v);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k)
      entries_[k] += o.entries_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k)
      entries_[k] -= o.entries_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex scale) {
    for (Complex& v : entries_) v *= scale;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex scale) {
    a *= scale;
    return a;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix a) {
    a *= scale;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a) {
    a *= Complex(-1.0, 0.0);
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("operator*: inner dimensions differ");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  bool approx_equal(const ComplexMatrix& o, double tol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (std::abs(entries_[k] - o.entries_[k]) > tol) return false;
    return true;
  }

  bool operator==(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string(op) + ": shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Complex> entries_;
};

// Hilbert-Schmidt inner product <a,b> = Tr(a^dag b), conjugate-linear in a.
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: shape mismatch");
  Complex s = 0.0;
  const auto& ae = a.entries();
  const auto& be = b.entries();
  for (std::size_t k = 0; k < ae.size(); ++k) s += std::conj(ae[k]) * be[k];
  return s;
}

inline double hs_norm(const ComplexMatrix& a) { return a.frobenius_norm(); }

// Kronecker product: entry ((i,k),(j,l)) = a(i,j) * b(k,l).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

inline ComplexMatrix commutator(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  return a * b - b * a;
}

inline std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Complex v = m(i, j);
      os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag())
         << "i";
      if (j + 1 < m.cols()) os << ", ";
    }
    os << "]";
    if (i + 1 < m.rows()) os << "\n";
  }
  return os << "]";
}

}  // namespace cpmw
