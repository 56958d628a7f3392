// Hermitian eigenproblems via cyclic Jacobi with complex plane rotations,
// plus the spectral helpers built on top (PSD test, operator norm, matrix
// absolute value, numerical rank).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "cpmw/complex_matrix.hpp"
#include "cpmw/errors.hpp"

namespace cpmw {

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // sorted descending
  double residual = 0.0;            // max entrywise |a - a^dag|
};

struct HermitianEigenDecomposition {
  std::vector<double> eigenvalues;  // sorted descending
  ComplexMatrix eigenvectors;       // columns; input ~ V diag(w) V^dag
};

// Eigensystem of the Hermitian part (a + a^dag)/2. Cyclic Jacobi sweeps;
// convergence when the off-diagonal Frobenius mass drops below 1e-13 times
// the matrix norm, capped at 100 sweeps.
inline HermitianEigenDecomposition eigh(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("eigh: matrix must be square");
  const std::size_t n = a.rows();

  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = Complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double norm = h.frobenius_norm();
  if (norm > 0.0) {
    const double threshold = 1e-13 * norm;
    const int max_sweeps = 100;
    // One bonus sweep after crossing the threshold: rotations zero their
    // pivots exactly, so the leftover off-diagonal mass collapses to the
    // underflow level and tiny eigenvalues survive the sqrt in the
    // singular-value path.
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      double off = 0.0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(h(p, q));
      if (std::sqrt(off) <= threshold) {
        if (converged) break;
        converged = true;
      } else {
        converged = false;
      }

      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const Complex w = h(p, q);
          const double aw = std::abs(w);
          if (aw <= 1e-30 * norm) {
            h(p, q) = 0.0;
            h(q, p) = 0.0;
            continue;
          }
          const Complex phase = w / aw;  // e^{i theta}
          const double u = h(p, p).real();
          const double vv = h(q, q).real();
          const double tau = (vv - u) / (2.0 * aw);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) /
              (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          // h <- J^dag h with J supported on the (p,q) plane
          for (std::size_t j = 0; j < n; ++j) {
            const Complex hpj = h(p, j);
            const Complex hqj = h(q, j);
            h(p, j) = c * hpj - s * phase * hqj;
            h(q, j) = s * std::conj(phase) * hpj + c * hqj;
          }
          // h <- h J, v <- v J
          for (std::size_t j = 0; j < n; ++j) {
            const Complex hjp = h(j, p);
            const Complex hjq = h(j, q);
            h(j, p) = c * hjp - s * std::conj(phase) * hjq;
            h(j, q) = s * phase * hjp + c * hjq;
            const Complex vjp = v(j, p);
            const Complex vjq = v(j, q);
            v(j, p) = c * vjp - s * std::conj(phase) * vjq;
            v(j, q) = s * phase * vjp + c * vjq;
          }
          h(p, q) = 0.0;
          h(q, p) = 0.0;
          h(p, p) = Complex(h(p, p).real(), 0.0);
          h(q, q) = Complex(h(q, q).real(), 0.0);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = h(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return diag[x] > diag[y];
                   });

  HermitianEigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline double hermiticity_residual(const ComplexMatrix& a) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
  return r;
}

inline HermitianSpectrum hermitian_spectrum(const ComplexMatrix& a) {
  if (!a.is_square())
    throw DimensionError("hermitian_spectrum: matrix must be square");
  HermitianSpectrum s;
  s.eigenvalues = eigh(a).eigenvalues;
  s.residual = hermiticity_residual(a);
  return s;
}

// PSD within tolerance: the Hermiticity deviation must be small relative to
// the spectral scale and the minimum eigenvalue of the Hermitian part must
// not dip below -tol * max(1, norm). Norm is the largest |eigenvalue|.
inline bool is_psd(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) throw DimensionError("is_psd: matrix must be square");
  const HermitianSpectrum s = hermitian_spectrum(a);
  const double lo = s.eigenvalues.back();
  const double hi = s.eigenvalues.front();
  const double norm = std::max(std::abs(lo), std::abs(hi));
  if (s.residual > tol * norm) return false;
  return lo >= -tol * std::max(1.0, norm);
}

// Singular values, descending, as square roots of eigenvalues of a^dag a.
// Eigenvalues below the rounding floor of the squared problem (1e-12 times
// the largest) are clamped to exact zero: squaring doubles the exponent of
// rounding noise, and without the clamp a true zero singular value would
// surface as ~1e-8 after the square root.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  const ComplexMatrix gram = a.adjoint() * a;
  std::vector<double> sv = eigh(gram).eigenvalues;
  const double floor = sv.empty() ? 0.0 : 1e-12 * std::max(0.0, sv.front());
  for (double& x : sv) x = (x <= floor) ? 0.0 : std::sqrt(x);
  return sv;
}

inline double operator_norm(const ComplexMatrix& a) {
  const std::vector<double> sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

// count of singular values above tol * (largest singular value)
inline std::size_t numerical_rank(const ComplexMatrix& a, double tol) {
  if (tol < 0.0) throw ValidationError("numerical_rank: tol must be >= 0");
  const std::vector<double> sv = singular_values(a);
  if (sv.empty() || sv.front() <= 0.0) return 0;
  const double cut = tol * sv.front();
  std::size_t r = 0;
  for (double x : sv)
    if (x > cut) ++r;
  return r;
}

// |a| = sqrt(a^dag a) through the spectral decomposition of a^dag a, with
// the same rounding-floor clamp as singular_values.
inline ComplexMatrix absolute_value(const ComplexMatrix& a) {
  if (!a.is_square())
    throw DimensionError("absolute_value: matrix must be square");
  const std::size_t n = a.rows();
  const HermitianEigenDecomposition d = eigh(a.adjoint() * a);
  const double floor =
      d.eigenvalues.empty() ? 0.0
                            : 1e-12 * std::max(0.0, d.eigenvalues.front());
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root =
        (d.eigenvalues[k] <= floor) ? 0.0 : std::sqrt(d.eigenvalues[k]);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = d.eigenvectors(i, k);
      if (vik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += root * vik * std::conj(d.eigenvectors(j, k));
    }
  }
  return out;
}

}  // namespace cpmw
