// Orthonormal bases of M_n under the Hilbert-Schmidt inner product, the
// candidate classical structures this workbench studies.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cpmw/complex_matrix.hpp"
#include "cpmw/errors.hpp"
#include "cpmw/gram_schmidt.hpp"

namespace cpmw {

// n^2 matrices of shape n x n whose Gram matrix is the identity within tol.
class MatrixBasis {
 public:
  static MatrixBasis create(std::size_t n, std::vector<ComplexMatrix> elements,
                            double tol = 1e-9) {
    validate_shapes(n, elements);
    const double dev = gram_deviation_of(elements);
    if (dev > tol)
      throw BasisError("MatrixBasis: Gram matrix deviates from identity by " +
                       std::to_string(dev) + " (tol " + std::to_string(tol) +
                       ")");
    return MatrixBasis(n, std::move(elements));
  }

  // escape hatch for deliberately unvalidated loads (CLI --no-validate)
  static MatrixBasis create_unchecked(std::size_t n,
                                      std::vector<ComplexMatrix> elements) {
    validate_shapes(n, elements);
    return MatrixBasis(n, std::move(elements));
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }

  double gram_deviation() const { return gram_deviation_of(elements_); }

  static double gram_deviation_of(const std::vector<ComplexMatrix>& elements) {
    double dev = 0.0;
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = 0; j < elements.size(); ++j) {
        const Complex g = hs_inner(elements[i], elements[j]);
        const Complex expected = (i == j) ? Complex(1.0, 0.0) : Complex(0.0);
        dev = std::max(dev, std::abs(g - expected));
      }
    return dev;
  }

 private:
  MatrixBasis(std::size_t n, std::vector<ComplexMatrix> elements)
      : n_(n), elements_(std::move(elements)) {}

  static void validate_shapes(std::size_t n,
                              const std::vector<ComplexMatrix>& elements) {
    if (n == 0) throw BasisError("MatrixBasis: n must be positive");
    if (elements.size() != n * n)
      throw BasisError("MatrixBasis: expected " + std::to_string(n * n) +
                       " elements, got " + std::to_string(elements.size()));
    for (const ComplexMatrix& m : elements) {
      if (m.rows() != n || m.cols() != n)
        throw BasisError("MatrixBasis: element shape mismatch");
      if (!m.all_finite())
        throw BasisError("MatrixBasis: element has non-finite entries");
    }
  }

  std::size_t n_;
  std::vector<ComplexMatrix> elements_;
};

// Matrix units |i><j| in lexicographic (i,j) order.
inline MatrixBasis canonical_basis(std::size_t n) {
  std::vector<ComplexMatrix> elements;
  elements.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix e(n, n);
      e(i, j) = 1.0;
      elements.push_back(std::move(e));
    }
  return MatrixBasis::create(n, std::move(elements));
}

// The four normalized Pauli matrices (1/sqrt(2) normalization).
inline MatrixBasis pauli_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> elements;
  elements.push_back(ComplexMatrix::from_rows({{s, 0.0}, {0.0, s}}));
  elements.push_back(ComplexMatrix::from_rows({{0.0, s}, {s, 0.0}}));
  elements.push_back(ComplexMatrix::from_rows(
      {{0.0, Complex(0.0, -s)}, {Complex(0.0, s), 0.0}}));
  elements.push_back(ComplexMatrix::from_rows({{s, 0.0}, {0.0, -s}}));
  return MatrixBasis::create(2, std::move(elements));
}

// Basis { u_i u_j^dag } in lexicographic (i,j) order, from n orthonormal
// column vectors (given as n x 1 matrices).
inline MatrixBasis canonical_from_vectors(
    const std::vector<ComplexMatrix>& vectors, double tol = 1e-9) {
  if (vectors.empty()) throw BasisError("canonical_from_vectors: no vectors");
  const std::size_t n = vectors.size();
  for (const ComplexMatrix& u : vectors)
    if (u.rows() != n || u.cols() != 1)
      throw BasisError("canonical_from_vectors: need n column vectors of "
                       "dimension n");
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = hs_inner(vectors[i], vectors[j]);
      const Complex expected = (i == j) ? Complex(1.0, 0.0) : Complex(0.0);
      dev = std::max(dev, std::abs(g - expected));
    }
  if (dev > tol)
    throw BasisError("canonical_from_vectors: vectors are not orthonormal "
                     "(deviation " +
                     std::to_string(dev) + ")");

  std::vector<ComplexMatrix> elements;
  elements.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      elements.push_back(vectors[i] * vectors[j].adjoint());
  return MatrixBasis::create(n, std::move(elements));
}

}  // namespace cpmw
