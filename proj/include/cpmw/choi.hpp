// The n^3 x n^3 positivity witness of a basis-induced copy map.
#pragma once

#include <cstddef>
#include <utility>

#include "cpmw/complex_matrix.hpp"
#include "cpmw/hermitian_eig.hpp"
#include "cpmw/matrix_basis.hpp"

namespace cpmw {

// Row index (j'', j', j), column index (k'', k', k), each in [0, n):
// entry = sum_a conj(a[j,k]) a[j',k'] a[j'',k''].
struct ChoiMatrix {
  std::size_t n = 0;
  ComplexMatrix matrix;
};

// The six-index formula factors as sum_a kron(a, kron(a, conj(a))) under the
// row-major index packing, which is how it is assembled here.
inline ChoiMatrix choi(const MatrixBasis& basis) {
  const std::size_t n = basis.n();
  ComplexMatrix delta(n * n * n, n * n * n);
  for (const ComplexMatrix& alpha : basis.elements())
    delta += kron(alpha, kron(alpha, alpha.conjugate()));
  return ChoiMatrix{n, std::move(delta)};
}

struct CpVerdict {
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
};

inline CpVerdict is_cp(const ChoiMatrix& delta, double tol = 1e-9) {
  const HermitianSpectrum s = hermitian_spectrum(delta.matrix);
  const double lo = s.eigenvalues.back();
  const double hi = s.eigenvalues.front();
  const double norm = std::max(std::abs(lo), std::abs(hi));
  const bool hermitian_ok = s.residual <= tol * norm;
  const bool psd_ok = lo >= -tol * std::max(1.0, norm);
  return CpVerdict{hermitian_ok && psd_ok, lo};
}

inline CpVerdict is_cp(const MatrixBasis& basis, double tol = 1e-9) {
  return is_cp(choi(basis), tol);
}

}  // namespace cpmw
