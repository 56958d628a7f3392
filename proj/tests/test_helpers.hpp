#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cpmw/workbench.hpp"

namespace test_helpers {

using cpmw::Complex;
using cpmw::ComplexMatrix;

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

inline ComplexMatrix random_matrix(std::uint64_t seed, std::size_t rows,
                                   std::size_t cols) {
  cpmw::RandomStream stream(seed);
  return cpmw::random_gaussian_matrix(stream, rows, cols);
}

inline std::vector<ComplexMatrix> random_orthonormal_vectors(
    std::uint64_t seed, std::size_t n) {
  cpmw::RandomStream stream(seed);
  std::vector<ComplexMatrix> raw;
  raw.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    raw.push_back(cpmw::random_gaussian_matrix(stream, n, 1));
  return cpmw::gram_schmidt(raw);
}

// Independent oracle: Kronecker product by direct index computation.
inline ComplexMatrix kron_by_index(const ComplexMatrix& a,
                                   const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t s = 0; s < c.cols(); ++s)
      c(r, s) = a(r / b.rows(), s / b.cols()) * b(r % b.rows(), s % b.cols());
  return c;
}

// Independent oracle: Choi entries reconstructed from the comultiplication
// superoperator as <j'' j'| delta(|j><k|) |k'' k'>.
inline ComplexMatrix choi_from_superop(const cpmw::MatrixBasis& basis) {
  const std::size_t n = basis.n();
  const cpmw::Superoperator s = cpmw::comultiplication_superop(basis);
  ComplexMatrix delta(n * n * n, n * n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      ComplexMatrix unit(n, n);
      unit(j, k) = 1.0;
      const ComplexMatrix image = s.apply(unit);  // n^2 x n^2, rows (j'',j')
      for (std::size_t jpp = 0; jpp < n; ++jpp)
        for (std::size_t jp = 0; jp < n; ++jp)
          for (std::size_t kpp = 0; kpp < n; ++kpp)
            for (std::size_t kp = 0; kp < n; ++kp)
              delta((jpp * n + jp) * n + j, (kpp * n + kp) * n + k) =
                  image(jpp * n + jp, kpp * n + kp);
    }
  return delta;
}

// Closed form for the n=2 dephasing family: p(phi) with m probes and
// weights (r0, r1) is (1 + (r0 - r1)^m cos(m phi)) / 2.
inline double dephasing_probability(std::size_t m, double r0, double r1,
                                    double phi) {
  return 0.5 * (1.0 + std::pow(r0 - r1, static_cast<double>(m)) *
                          std::cos(static_cast<double>(m) * phi));
}

inline std::vector<ComplexMatrix> standard_vectors(std::size_t n) {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix u(n, 1);
    u(i, 0) = 1.0;
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace test_helpers
