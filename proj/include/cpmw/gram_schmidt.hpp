// Modified Gram-Schmidt over matrices with the Hilbert-Schmidt inner product.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cpmw/complex_matrix.hpp"
#include "cpmw/errors.hpp"

namespace cpmw {

// Orthonormalizes in input order. Throws DependenceError naming the first
// input whose post-projection norm falls below tol.
inline std::vector<ComplexMatrix> gram_schmidt(
    const std::vector<ComplexMatrix>& vectors, double tol = 1e-9) {
  std::vector<ComplexMatrix> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].rows() != vectors[0].rows() ||
        vectors[i].cols() != vectors[0].cols())
      throw DimensionError("gram_schmidt: inputs must share one shape");
    ComplexMatrix v = vectors[i];
    for (const ComplexMatrix& e : out) v -= hs_inner(e, v) * e;
    const double norm = hs_norm(v);
    if (norm < tol) throw DependenceError(i, norm);
    out.push_back(v * Complex(1.0 / norm, 0.0));
  }
  return out;
}

}  // namespace cpmw
