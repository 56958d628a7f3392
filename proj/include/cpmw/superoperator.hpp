// Superoperators on vectorized matrices.
//
// Vectorization convention, used everywhere in this project: an n x n matrix
// rho maps to the length-n^2 column vector v with v[i*n + j] = rho(i,j),
// i.e. the matrix units |i><j| ordered lexicographically by (i,j). Under
// this convention vec(A rho B) = kron(A, B^T) vec(rho).
#pragma once

#include <cstddef>
#include <vector>

#include "cpmw/complex_matrix.hpp"
#include "cpmw/errors.hpp"
#include "cpmw/matrix_basis.hpp"

namespace cpmw {

inline ComplexMatrix vectorize(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("vectorize: matrix must be square");
  ComplexMatrix v(m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
  return v;
}

inline ComplexMatrix unvectorize(const ComplexMatrix& v, std::size_t n) {
  if (v.cols() != 1 || v.rows() != n * n)
    throw DimensionError("unvectorize: expected an n^2 column vector");
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v(i * n + j, 0);
  return m;
}

// A linear map from n_in x n_in matrices to n_out x n_out matrices,
// represented on vectorized matrices by an (n_out^2) x (n_in^2) matrix.
struct Superoperator {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  ComplexMatrix matrix;

  Superoperator() = default;
  Superoperator(std::size_t in, std::size_t out, ComplexMatrix m)
      : n_in(in), n_out(out), matrix(std::move(m)) {
    if (matrix.rows() != n_out * n_out || matrix.cols() != n_in * n_in)
      throw DimensionError("Superoperator: matrix shape mismatch");
  }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    if (rho.rows() != n_in || rho.cols() != n_in)
      throw DimensionError("Superoperator::apply: input shape mismatch");
    return unvectorize(matrix * vectorize(rho), n_out);
  }
};

// Conjugate transpose of the representing matrix, with in/out swapped.
// Satisfies <adjoint(S)(M), rho> = <M, S(rho)>.
inline Superoperator adjoint_superop(const Superoperator& s) {
  return Superoperator(s.n_out, s.n_in, s.matrix.adjoint());
}

// The copy map of a basis: S(vec rho) = vec( sum_a Tr(a^dag rho) (a kron a) ).
// Orthonormality of the basis makes S an isometry, S^dag S = I.
inline Superoperator comultiplication_superop(const MatrixBasis& basis) {
  const std::size_t n = basis.n();
  ComplexMatrix s(n * n * n * n, n * n);
  for (const ComplexMatrix& alpha : basis.elements()) {
    const ComplexMatrix tens = vectorize(kron(alpha, alpha));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex coeff = std::conj(alpha(j, k));
        if (coeff == Complex(0.0, 0.0)) continue;
        const std::size_t col = j * n + k;
        for (std::size_t r = 0; r < tens.rows(); ++r)
          s(r, col) += coeff * tens(r, 0);
      }
  }
  return Superoperator(n, n * n, std::move(s));
}

// delta^dag applied to the identity on the doubled space; equals
// sum_a conj(Tr a)^2 a.
inline ComplexMatrix delta_dag_id(const MatrixBasis& basis) {
  const std::size_t n = basis.n();
  ComplexMatrix out(n, n);
  for (const ComplexMatrix& alpha : basis.elements()) {
    const Complex t = std::conj(alpha.trace());
    if (t == Complex(0.0, 0.0)) continue;
    out += (t * t) * alpha;
  }
  return out;
}

// Kraus-sum channel as a superoperator: sum_s kron(b_s, conj(b_s)).
inline Superoperator channel_superop(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty())
    throw ValidationError("channel_superop: need at least one Kraus operator");
  const std::size_t n = kraus.front().rows();
  ComplexMatrix s(n * n, n * n);
  for (const ComplexMatrix& b : kraus) {
    if (b.rows() != n || b.cols() != n)
      throw DimensionError("channel_superop: Kraus operator shape mismatch");
    s += kron(b, b.conjugate());
  }
  return Superoperator(n, n, std::move(s));
}

// Swap of tensor factors on a d*d-dimensional space, as a permutation matrix.
inline ComplexMatrix swap_matrix(std::size_t d) {
  ComplexMatrix s(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) s(a * d + b, b * d + a) = 1.0;
  return s;
}

}  // namespace cpmw
