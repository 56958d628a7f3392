#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "test_helpers.hpp"

using namespace cpmw;
using test_helpers::max_diff;
using test_helpers::random_matrix;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("hs_inner basics") {
  const ComplexMatrix eye2 = ComplexMatrix::identity(2);
  REQUIRE(std::abs(hs_inner(eye2, eye2) - Complex(2.0, 0.0)) < 1e-14);

  const MatrixBasis pauli = pauli_basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex expected = (i == j) ? Complex(1.0, 0.0) : Complex(0.0);
      REQUIRE(std::abs(hs_inner(pauli[i], pauli[j]) - expected) < 1e-14);
    }

  const ComplexMatrix a = random_matrix(11, 3, 3);
  const Complex self = hs_inner(a, a);
  REQUIRE(self.real() >= 0.0);
  REQUIRE(std::abs(self.imag()) < 1e-14);

  const ComplexMatrix b = random_matrix(12, 3, 3);
  REQUIRE(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-13);

  REQUIRE_THROWS_AS(hs_inner(a, random_matrix(13, 2, 2)), DimensionError);
}

TEST_CASE("hs_inner adjoint-product compatibility") {
  // <A, B C> = <B^dag A, C> on random triples
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_matrix(100 + seed, 4, 4);
    const ComplexMatrix b = random_matrix(200 + seed, 4, 4);
    const ComplexMatrix c = random_matrix(300 + seed, 4, 4);
    const Complex lhs = hs_inner(a, b * c);
    const Complex rhs = hs_inner(b.adjoint() * a, c);
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("kron fixtures and mixed-product rule") {
  REQUIRE(max_diff(kron(ComplexMatrix::identity(2),
                        ComplexMatrix::identity(2)),
                   ComplexMatrix::identity(4)) == 0.0);

  const MatrixBasis pauli = pauli_basis();
  ComplexMatrix expected(4, 4);
  expected(0, 0) = 0.5;
  expected(1, 1) = -0.5;
  expected(2, 2) = -0.5;
  expected(3, 3) = 0.5;
  REQUIRE(max_diff(kron(pauli[3], pauli[3]), expected) < 1e-15);

  const ComplexMatrix a = random_matrix(21, 2, 2);
  const ComplexMatrix b = random_matrix(22, 3, 3);
  REQUIRE(kron(a, b).rows() == 6);
  REQUIRE(kron(a, b).cols() == 6);
  REQUIRE(max_diff(kron(a, b), test_helpers::kron_by_index(a, b)) < 1e-14);

  const ComplexMatrix c = random_matrix(23, 2, 2);
  const ComplexMatrix d = random_matrix(24, 3, 3);
  const ComplexMatrix lhs = kron(a, b) * kron(c, d);
  const ComplexMatrix rhs = kron(a * c, b * d);
  REQUIRE(max_diff(lhs, rhs) <= 1e-12 * std::max(1.0, rhs.max_abs()));
}

TEST_CASE("hermitian_spectrum fixtures") {
  ComplexMatrix diag(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  const HermitianSpectrum s = hermitian_spectrum(diag);
  REQUIRE(s.eigenvalues[0] == Catch::Approx(3.0));
  REQUIRE(s.eigenvalues[1] == Catch::Approx(1.0));
  REQUIRE(s.residual == 0.0);

  const MatrixBasis pauli = pauli_basis();
  const ComplexMatrix combo = kSqrt2 * pauli[0] + pauli[1] + pauli[3];
  const HermitianSpectrum cs = hermitian_spectrum(combo);
  REQUIRE(std::abs(cs.eigenvalues[0] - 2.0) < 1e-12);
  REQUIRE(std::abs(cs.eigenvalues[1] - 0.0) < 1e-12);

  const ComplexMatrix image = kSqrt2 * kron(pauli[0], pauli[0]) +
                              kron(pauli[1], pauli[1]) +
                              kron(pauli[3], pauli[3]);
  const HermitianSpectrum is = hermitian_spectrum(image);
  REQUIRE(std::abs(is.eigenvalues.back() - 0.5 * (kSqrt2 - 2.0)) < 1e-12);

  REQUIRE_THROWS_AS(hermitian_spectrum(random_matrix(31, 2, 3)),
                    DimensionError);
}

TEST_CASE("hermitian_spectrum eigenvalue sum equals trace") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix a = random_matrix(400 + seed, 5, 5);
    const HermitianSpectrum s = hermitian_spectrum(a);
    double sum = 0.0;
    for (double e : s.eigenvalues) sum += e;
    const double tr = (0.5 * (a + a.adjoint())).trace().real();
    REQUIRE(std::abs(sum - tr) <= 1e-10 * std::max(1.0, std::abs(tr)));
  }
}

TEST_CASE("eigh reconstructs the Hermitian part") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    RandomStream stream(500 + seed);
    const ComplexMatrix h = random_hermitian_matrix(stream, 6);
    const HermitianEigenDecomposition d = eigh(h);
    ComplexMatrix rebuilt(6, 6);
    for (std::size_t k = 0; k < 6; ++k) {
      ComplexMatrix v(6, 1);
      for (std::size_t i = 0; i < 6; ++i) v(i, 0) = d.eigenvectors(i, k);
      rebuilt += d.eigenvalues[k] * (v * v.adjoint());
    }
    REQUIRE(max_diff(rebuilt, h) <= 1e-12 * std::max(1.0, h.max_abs()));
  }
}

TEST_CASE("is_psd fixtures") {
  REQUIRE(is_psd(ComplexMatrix::identity(2), 1e-9));
  const MatrixBasis pauli = pauli_basis();
  REQUIRE_FALSE(is_psd(pauli[3], 1e-9));  // eigenvalue -1/sqrt(2)
  const ComplexMatrix nonherm =
      ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  REQUIRE_FALSE(is_psd(nonherm, 1e-9));
  REQUIRE(is_psd(ComplexMatrix(3, 3), 1e-9));  // zero matrix
  REQUIRE_THROWS_AS(is_psd(random_matrix(41, 2, 3), 1e-9), DimensionError);
}

TEST_CASE("operator_norm fixtures") {
  REQUIRE(operator_norm(ComplexMatrix::identity(5)) == Catch::Approx(1.0));
  const MatrixBasis pauli = pauli_basis();
  REQUIRE(operator_norm(pauli[1]) == Catch::Approx(1.0 / kSqrt2));
  REQUIRE(operator_norm(ComplexMatrix(3, 3)) == 0.0);
}

TEST_CASE("absolute_value fixtures and property") {
  const ComplexMatrix eye = ComplexMatrix::identity(3);
  REQUIRE(max_diff(absolute_value(eye), eye) < 1e-12);

  const MatrixBasis pauli = pauli_basis();
  REQUIRE(max_diff(absolute_value(pauli[3]), pauli[0]) < 1e-12);

  REQUIRE(absolute_value(ComplexMatrix(2, 2)).max_abs() == 0.0);

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const ComplexMatrix a = random_matrix(600 + seed, 5, 5);
    const ComplexMatrix abs_a = absolute_value(a);
    REQUIRE(is_psd(abs_a, 1e-9));
    const ComplexMatrix gram = a.adjoint() * a;
    REQUIRE(max_diff(abs_a * abs_a, gram) <=
            1e-10 * std::max(1.0, gram.max_abs()));
  }

  // |a| = a for PSD a
  RandomStream stream(77);
  const ComplexMatrix p = random_psd_matrix(stream, 4);
  REQUIRE(max_diff(absolute_value(p), p) <= 1e-10 * p.max_abs());
}

TEST_CASE("numerical_rank fixtures") {
  ComplexMatrix unit(2, 2);
  unit(0, 1) = 1.0;
  REQUIRE(numerical_rank(unit, 1e-9) == 1);
  const MatrixBasis pauli = pauli_basis();
  REQUIRE(numerical_rank(pauli[0], 1e-9) == 2);
  REQUIRE(numerical_rank(ComplexMatrix(3, 3), 1e-9) == 0);
}

TEST_CASE("gram_schmidt fixtures") {
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  const ComplexMatrix sigma_x =
      ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const MatrixBasis pauli = pauli_basis();
  const auto out = gram_schmidt({eye, sigma_x});
  REQUIRE(out.size() == 2);
  REQUIRE(max_diff(out[0], pauli[0]) < 1e-14);
  REQUIRE(max_diff(out[1], pauli[1]) < 1e-14);

  try {
    gram_schmidt({eye, eye});
    FAIL("expected DependenceError");
  } catch (const DependenceError& e) {
    REQUIRE(e.index() == 1);
  }
}

TEST_CASE("gram_schmidt output is orthonormal and a fixed point") {
  RandomStream stream(88);
  std::vector<ComplexMatrix> raw;
  for (int i = 0; i < 9; ++i)
    raw.push_back(random_gaussian_matrix(stream, 3, 3));
  const auto out = gram_schmidt(raw);
  REQUIRE(MatrixBasis::gram_deviation_of(out) < 1e-9);

  const auto again = gram_schmidt(out);
  for (std::size_t i = 0; i < out.size(); ++i)
    REQUIRE(max_diff(out[i], again[i]) < 1e-10);
}
