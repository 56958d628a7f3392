// Condition suite for basis-induced copy maps: the sufficient conditions on
// copyable sets, the spectrum facts about delta^dag(id), the equivalent
// characterizations of canonicity, and the canonicity decision itself.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cpmw/choi.hpp"
#include "cpmw/complex_matrix.hpp"
#include "cpmw/errors.hpp"
#include "cpmw/hermitian_eig.hpp"
#include "cpmw/matrix_basis.hpp"
#include "cpmw/rng.hpp"
#include "cpmw/superoperator.hpp"

namespace cpmw {

struct ConditionCheck {
  bool ok = false;
  std::string witness;  // failure detail, or a short note on what was checked
};

enum class SubsetSumMode { kAuto, kExhaustive, kHeuristic };

struct ConditionReport {
  ConditionCheck adjoint_closure;
  ConditionCheck absvalue_closure;
  ConditionCheck homomorphism_identity;
  ConditionCheck psd_copyables_commute;
  ConditionCheck ddag_id_psd;
  ConditionCheck ddag_id_invertible;
  ConditionCheck ddag_id_geq_id;
  ConditionCheck pure_state_preservation_sampled;
  ConditionCheck trace_preserving;
  ConditionCheck ddag_unital;
  ConditionCheck ddag_leq_id;
  ConditionCheck trace_nonincreasing_sampled;
  ConditionCheck opnorm_le_1;
  ConditionCheck identity_subset_sum;
  ConditionCheck psd_trace_one;
  ConditionCheck rank_one;
  ConditionCheck adjoint_square_closure;
  ConditionCheck composition_closure;
  ConditionCheck delta_id_idempotent;
  ConditionCheck kraus_rank_one;
  bool is_cp = false;
  bool is_canonical = false;
  double min_choi_eigenvalue = 0.0;

  // stable iteration order for serialization and reporting
  std::vector<std::pair<std::string, const ConditionCheck*>> named_checks()
      const {
    return {
        {"adjoint_closure", &adjoint_closure},
        {"absvalue_closure", &absvalue_closure},
        {"homomorphism_identity", &homomorphism_identity},
        {"psd_copyables_commute", &psd_copyables_commute},
        {"ddag_id_psd", &ddag_id_psd},
        {"ddag_id_invertible", &ddag_id_invertible},
        {"ddag_id_geq_id", &ddag_id_geq_id},
        {"pure_state_preservation_sampled", &pure_state_preservation_sampled},
        {"trace_preserving", &trace_preserving},
        {"ddag_unital", &ddag_unital},
        {"ddag_leq_id", &ddag_leq_id},
        {"trace_nonincreasing_sampled", &trace_nonincreasing_sampled},
        {"opnorm_le_1", &opnorm_le_1},
        {"identity_subset_sum", &identity_subset_sum},
        {"psd_trace_one", &psd_trace_one},
        {"rank_one", &rank_one},
        {"adjoint_square_closure", &adjoint_square_closure},
        {"composition_closure", &composition_closure},
        {"delta_id_idempotent", &delta_id_idempotent},
        {"kraus_rank_one", &kraus_rank_one},
    };
  }

  bool all_conditions_true() const {
    for (const auto& [name, check] : named_checks())
      if (!check->ok) return false;
    return true;
  }
};

struct CanonicalCheck {
  bool canonical = false;
  std::vector<ComplexMatrix> vectors;  // recovered orthonormal family
  std::string diagnostic;
};

namespace detail {

// Exact entrywise set membership within tol, no phase slack. Returns the
// matched index, n^2 for the zero matrix, or nullopt.
inline std::optional<std::size_t> match_element_or_zero(
    const ComplexMatrix& m, const MatrixBasis& basis, double tol) {
  if (m.max_abs() <= tol) return basis.size();
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (m.approx_equal(basis[j], tol)) return j;
  return std::nullopt;
}

inline bool close(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));
  return (a - b).max_abs() <= tol * scale;
}

inline ComplexMatrix random_unit_vector(RandomStream& stream, std::size_t n) {
  ComplexMatrix v = random_gaussian_matrix(stream, n, 1);
  double norm = v.frobenius_norm();
  while (norm < 1e-6) {  // essentially unreachable
    v = random_gaussian_matrix(stream, n, 1);
    norm = v.frobenius_norm();
  }
  return v * Complex(1.0 / norm, 0.0);
}

}  // namespace detail

// Decides whether the copy map of `basis` equals the copy map of a canonical
// basis built from some orthonormal vector family. Procedure: collect the
// PSD rank-1 elements, take their top eigenvectors, recover the relative
// phases (eigenvectors come with arbitrary phases, and the superoperator is
// not invariant under them), rebuild, and compare superoperators. The phase
// of u_i relative to u_0 is read off from
//   m_i = <vec(u_i u_0^dag kron u_i u_0^dag), S vec(u_i u_0^dag)>,
// which equals that relative phase exactly when the structure is canonical;
// the final entrywise comparison is the authority either way.
inline CanonicalCheck is_canonical(const MatrixBasis& basis,
                                   double tol = 1e-9) {
  const std::size_t n = basis.n();
  CanonicalCheck result;

  std::vector<ComplexMatrix> candidates;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ComplexMatrix& alpha = basis[i];
    if (is_psd(alpha, tol) && numerical_rank(alpha, tol) == 1)
      candidates.push_back(alpha);
  }
  if (candidates.size() != n) {
    result.diagnostic = "found " + std::to_string(candidates.size()) +
                        " PSD rank-1 elements, expected " + std::to_string(n);
    return result;
  }

  std::vector<ComplexMatrix> units;
  units.reserve(n);
  for (const ComplexMatrix& alpha : candidates) {
    const HermitianEigenDecomposition d = eigh(alpha);
    ComplexMatrix u(n, 1);
    for (std::size_t r = 0; r < n; ++r) u(r, 0) = d.eigenvectors(r, 0);
    units.push_back(std::move(u));
  }

  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = hs_inner(units[i], units[j]);
      const Complex expected = (i == j) ? Complex(1.0, 0.0) : Complex(0.0);
      dev = std::max(dev, std::abs(g - expected));
    }
  if (dev > tol) {
    result.diagnostic =
        "extracted eigenvectors are not orthonormal (deviation " +
        std::to_string(dev) + ")";
    return result;
  }

  const Superoperator s = comultiplication_superop(basis);
  std::vector<ComplexMatrix> vectors;
  vectors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix e = units[i] * units[0].adjoint();
    const ComplexMatrix image = s.matrix * vectorize(e);
    const Complex m = hs_inner(vectorize(kron(e, e)), image);
    if (std::abs(std::abs(m) - 1.0) > 0.1) {
      result.diagnostic = "phase-recovery coefficient has modulus " +
                          std::to_string(std::abs(m)) + " for element " +
                          std::to_string(i);
      return result;
    }
    vectors.push_back(units[i] * (m / std::abs(m)));
  }

  MatrixBasis rebuilt = canonical_from_vectors(vectors, std::max(tol, dev));
  const Superoperator s2 = comultiplication_superop(rebuilt);
  if (!detail::close(s.matrix, s2.matrix, tol)) {
    result.diagnostic = "superoperator differs from rebuilt canonical "
                        "structure by " +
                        std::to_string((s.matrix - s2.matrix).max_abs());
    return result;
  }
  result.canonical = true;
  result.vectors = std::move(vectors);
  return result;
}

// The comultiplication of `basis` as a map H -> H tensor H on the carrier
// Hilbert space H = M_n, in tensor coordinates: row index a*N + b over the
// vectorized-matrix coordinates of the two factors. This packing differs
// from comultiplication_superop (which vectorizes the Kronecker-product
// matrix, the layout Choi reconstruction wants) by a fixed row reshuffle;
// the Frobenius axioms need the tensor layout so that kron lifts and the
// factor swap mean what the axioms say.
inline ComplexMatrix tensor_comultiplication_matrix(const MatrixBasis& basis) {
  const std::size_t big = basis.n() * basis.n();
  ComplexMatrix t(big * big, big);
  for (const ComplexMatrix& alpha : basis.elements()) {
    const ComplexMatrix va = vectorize(alpha);
    t += kron(va, va) * va.adjoint();
  }
  return t;
}

// Checks the classical-structure axioms of the basis at the superoperator
// level: both Frobenius identities, speciality, and commutativity under the
// swap. These hold for every orthonormal basis of M_n; a failure indicates
// a defect, not an interesting basis. n <= 3 keeps the n^4-dimensional
// operators manageable.
inline bool verify_frobenius(const MatrixBasis& basis, double tol = 1e-9) {
  const std::size_t n = basis.n();
  if (n > 3)
    throw CapabilityError("verify_frobenius: n > 3 not supported (operators "
                          "have dimension n^4)");
  const std::size_t big = n * n;  // dimension of the carrier Hilbert space
  const ComplexMatrix t = tensor_comultiplication_matrix(basis);
  const ComplexMatrix tdag = t.adjoint();
  const ComplexMatrix eye = ComplexMatrix::identity(big);

  const ComplexMatrix left = kron(eye, tdag) * kron(t, eye);
  const ComplexMatrix mid = t * tdag;
  const ComplexMatrix right = kron(tdag, eye) * kron(eye, t);
  if (!detail::close(left, mid, tol)) return false;
  if (!detail::close(right, mid, tol)) return false;

  if (!detail::close(tdag * t, ComplexMatrix::identity(big), tol))
    return false;

  return detail::close(swap_matrix(big) * t, t, tol);
}

namespace detail {

inline ConditionCheck subset_sum_exhaustive(const MatrixBasis& basis,
                                            double tol) {
  const std::size_t count = basis.size();  // <= 16 here
  const std::size_t n = basis.n();
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  ComplexMatrix sum(n, n);
  std::uint32_t gray = 0;
  const std::uint64_t total = 1ull << count;
  for (std::uint64_t g = 1; g < total; ++g) {
    const std::uint32_t next = static_cast<std::uint32_t>(g ^ (g >> 1));
    const unsigned bit = std::countr_zero(gray ^ next);
    if (next & (1u << bit))
      sum += basis[bit];
    else
      sum -= basis[bit];
    gray = next;
    if ((sum - eye).max_abs() <= tol) {
      std::ostringstream os;
      os << "subset {";
      bool first = true;
      for (unsigned b = 0; b < count; ++b)
        if (gray & (1u << b)) {
          os << (first ? "" : ",") << b;
          first = false;
        }
      os << "} sums to identity";
      return {true, os.str()};
    }
  }
  return {false, "no subset of the " + std::to_string(count) +
                     " elements sums to the identity"};
}

inline ConditionCheck subset_sum_heuristic(const MatrixBasis& basis,
                                           double tol) {
  const std::size_t n = basis.n();
  ComplexMatrix sum(n, n);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (is_psd(basis[i], tol) &&
        std::abs(basis[i].trace() - Complex(1.0, 0.0)) <= 1e-6) {
      sum += basis[i];
      picked.push_back(i);
    }
  }
  const bool ok = (sum - ComplexMatrix::identity(n)).max_abs() <= tol;
  std::ostringstream os;
  os << "heuristic candidate subset of " << picked.size()
     << " PSD trace-1 elements " << (ok ? "sums" : "does not sum")
     << " to identity";
  return {ok, os.str()};
}

}  // namespace detail

// Evaluates the full condition suite. Sampled conditions draw from streams
// seeded off `seed` so reports are reproducible. The subset-sum condition is
// exhaustive for n <= 4 (Gray-code scan of all 2^(n^2) subsets) and falls
// back to a flagged heuristic above that.
inline ConditionReport condition_report(
    const MatrixBasis& basis, double tol = 1e-9, std::size_t samples = 64,
    std::uint64_t seed = 0, SubsetSumMode mode = SubsetSumMode::kAuto) {
  if (samples < 1) throw ValidationError("condition_report: samples >= 1");
  const std::size_t n = basis.n();
  const std::size_t count = basis.size();
  ConditionReport report;

  // (Prop a) closure under adjoints
  report.adjoint_closure.ok = true;
  for (std::size_t i = 0; i < count && report.adjoint_closure.ok; ++i) {
    const auto hit = detail::match_element_or_zero(basis[i].adjoint(), basis,
                                                   tol);
    if (!hit || *hit == count) {
      report.adjoint_closure = {false, "adjoint of element " +
                                           std::to_string(i) +
                                           " is not a basis element"};
    }
  }

  // (Prop b) closure under absolute values
  report.absvalue_closure.ok = true;
  for (std::size_t i = 0; i < count && report.absvalue_closure.ok; ++i) {
    if (!detail::match_element_or_zero(absolute_value(basis[i]), basis, tol))
      report.absvalue_closure = {false, "|element " + std::to_string(i) +
                                            "| is neither zero nor a basis "
                                            "element"};
  }

  const Superoperator s = comultiplication_superop(basis);
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  const ComplexMatrix delta_id = s.apply(eye);

  // (Prop c) delta(id) delta(ab) = delta(a) delta(b); bilinear in (a,b), so
  // the basis-pair sweep is complete, and the sampled Hermitian pairs guard
  // the plumbing.
  report.homomorphism_identity.ok = true;
  for (std::size_t i = 0; i < count && report.homomorphism_identity.ok; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      const ComplexMatrix lhs = delta_id * s.apply(basis[i] * basis[j]);
      const ComplexMatrix rhs = s.apply(basis[i]) * s.apply(basis[j]);
      if (!detail::close(lhs, rhs, tol)) {
        report.homomorphism_identity = {
            false, "fails on basis pair (" + std::to_string(i) + "," +
                       std::to_string(j) + ")"};
        break;
      }
    }
  if (report.homomorphism_identity.ok) {
    RandomStream stream(derive_seed(seed, 1));
    for (std::size_t k = 0; k < samples; ++k) {
      const ComplexMatrix a = random_hermitian_matrix(stream, n);
      const ComplexMatrix b = random_hermitian_matrix(stream, n);
      const ComplexMatrix lhs = delta_id * s.apply(a * b);
      const ComplexMatrix rhs = s.apply(a) * s.apply(b);
      if (!detail::close(lhs, rhs, tol)) {
        report.homomorphism_identity = {
            false, "fails on sampled Hermitian pair " + std::to_string(k)};
        break;
      }
    }
  }

  // (Prop d) PSD copyables commute pairwise
  report.psd_copyables_commute.ok = true;
  {
    std::vector<std::size_t> psd;
    for (std::size_t i = 0; i < count; ++i)
      if (is_psd(basis[i], tol)) psd.push_back(i);
    for (std::size_t a = 0; a < psd.size() && report.psd_copyables_commute.ok;
         ++a)
      for (std::size_t b = a + 1; b < psd.size(); ++b) {
        if (operator_norm(commutator(basis[psd[a]], basis[psd[b]])) > tol) {
          report.psd_copyables_commute = {
              false, "PSD elements " + std::to_string(psd[a]) + " and " +
                         std::to_string(psd[b]) + " do not commute"};
          break;
        }
      }
  }

  // Lemma (a)-(c): spectrum of delta^dag(id)
  const ComplexMatrix ddag = delta_dag_id(basis);
  {
    const HermitianSpectrum spec = hermitian_spectrum(ddag);
    const double lo = spec.eigenvalues.back();
    const double hi = spec.eigenvalues.front();
    const double norm = std::max(std::abs(lo), std::abs(hi));
    const bool herm = spec.residual <= tol * std::max(1.0, norm);

    report.ddag_id_psd.ok = herm && lo >= -tol * std::max(1.0, norm);
    if (!report.ddag_id_psd.ok)
      report.ddag_id_psd.witness =
          "min eigenvalue " + std::to_string(lo) +
          (herm ? "" : ", Hermiticity residual " + std::to_string(spec.residual));

    const std::vector<double> sv = singular_values(ddag);
    report.ddag_id_invertible.ok =
        sv.back() > tol * std::max(1.0, sv.front());
    if (!report.ddag_id_invertible.ok)
      report.ddag_id_invertible.witness =
          "smallest singular value " + std::to_string(sv.back());

    report.ddag_id_geq_id.ok = herm && lo >= 1.0 - tol;
    if (!report.ddag_id_geq_id.ok)
      report.ddag_id_geq_id.witness =
          "min eigenvalue " + std::to_string(lo) + " < 1";

    report.trace_preserving.ok = (ddag - eye).max_abs() <= tol;
    if (!report.trace_preserving.ok)
      report.trace_preserving.witness =
          "delta^dag(id) deviates from identity by " +
          std::to_string((ddag - eye).max_abs());
    report.ddag_unital = report.trace_preserving;

    report.ddag_leq_id.ok = herm && hi <= 1.0 + tol;
    if (!report.ddag_leq_id.ok)
      report.ddag_leq_id.witness =
          "max eigenvalue " + std::to_string(hi) + " > 1";

    const double opnorm = operator_norm(ddag);
    report.opnorm_le_1.ok = opnorm <= 1.0 + tol;
    if (!report.opnorm_le_1.ok)
      report.opnorm_le_1.witness = "operator norm " + std::to_string(opnorm);
  }

  // (b) purity of images of sampled pure states
  report.pure_state_preservation_sampled.ok = true;
  {
    RandomStream stream(derive_seed(seed, 2));
    for (std::size_t k = 0; k < samples; ++k) {
      const ComplexMatrix psi = detail::random_unit_vector(stream, n);
      const ComplexMatrix image = s.apply(psi * psi.adjoint());
      const Complex purity = (image * image).trace();
      if (std::abs(purity - Complex(1.0, 0.0)) > tol) {
        report.pure_state_preservation_sampled = {
            false, "purity " + std::to_string(purity.real()) + "+" +
                       std::to_string(purity.imag()) + "i on sample " +
                       std::to_string(k)};
        break;
      }
    }
  }

  // (f) trace nonincreasing on sampled PSD inputs
  report.trace_nonincreasing_sampled.ok = true;
  {
    RandomStream stream(derive_seed(seed, 3));
    for (std::size_t k = 0; k < samples; ++k) {
      const ComplexMatrix a = random_psd_matrix(stream, n);
      const Complex in_trace = a.trace();
      const Complex out_trace = s.apply(a).trace();
      const double slack = tol * std::max(1.0, std::abs(in_trace));
      if (out_trace.real() > in_trace.real() + slack ||
          std::abs(out_trace.imag()) > slack) {
        report.trace_nonincreasing_sampled = {
            false, "trace grows from " + std::to_string(in_trace.real()) +
                       " to " + std::to_string(out_trace.real()) +
                       " on sample " + std::to_string(k)};
        break;
      }
    }
  }

  // (h) identity as a subset sum of copyables
  if (mode == SubsetSumMode::kExhaustive && n > 4)
    throw CapabilityError("condition_report: exhaustive subset-sum requested "
                          "for n > 4 (2^(n^2) subsets)");
  if (n <= 4 && mode != SubsetSumMode::kHeuristic)
    report.identity_subset_sum = detail::subset_sum_exhaustive(basis, tol);
  else
    report.identity_subset_sum = detail::subset_sum_heuristic(basis, tol);

  // (i) PSD copyables have unit trace
  report.psd_trace_one.ok = true;
  for (std::size_t i = 0; i < count && report.psd_trace_one.ok; ++i)
    if (is_psd(basis[i], tol) &&
        std::abs(basis[i].trace() - Complex(1.0, 0.0)) > tol)
      report.psd_trace_one = {false, "PSD element " + std::to_string(i) +
                                         " has trace " +
                                         std::to_string(basis[i].trace().real())};

  // (j) nonzero copyables have rank 1
  report.rank_one.ok = true;
  for (std::size_t i = 0; i < count && report.rank_one.ok; ++i)
    if (basis[i].max_abs() > tol && numerical_rank(basis[i], tol) != 1)
      report.rank_one = {false, "element " + std::to_string(i) + " has rank " +
                                    std::to_string(numerical_rank(basis[i],
                                                                  tol))};

  // (k) alpha^dag alpha stays in the copyable set
  report.adjoint_square_closure.ok = true;
  for (std::size_t i = 0; i < count && report.adjoint_square_closure.ok; ++i)
    if (!detail::match_element_or_zero(basis[i].adjoint() * basis[i], basis,
                                       tol))
      report.adjoint_square_closure = {
          false, "element " + std::to_string(i) +
                     ": adjoint-square is neither zero nor a basis element"};

  // (l) closure under composition
  report.composition_closure.ok = true;
  for (std::size_t i = 0; i < count && report.composition_closure.ok; ++i)
    for (std::size_t j = 0; j < count; ++j)
      if (!detail::match_element_or_zero(basis[i] * basis[j], basis, tol)) {
        report.composition_closure = {
            false, "product of elements " + std::to_string(i) + " and " +
                       std::to_string(j) + " leaves the copyable set"};
        break;
      }

  // (m) delta(id) idempotent
  report.delta_id_idempotent.ok =
      detail::close(delta_id * delta_id, delta_id, tol);
  if (!report.delta_id_idempotent.ok)
    report.delta_id_idempotent.witness =
        "delta(id)^2 deviates from delta(id) by " +
        std::to_string((delta_id * delta_id - delta_id).max_abs());

  // (n) one-dimensional Kraus ancilla: rank-1 Choi matrix
  const ChoiMatrix delta = choi(basis);
  {
    const std::size_t rank = numerical_rank(delta.matrix, tol);
    report.kraus_rank_one.ok = (rank == 1);
    if (!report.kraus_rank_one.ok)
      report.kraus_rank_one.witness =
          "Choi matrix has numerical rank " + std::to_string(rank);
  }

  const CpVerdict verdict = is_cp(delta, tol);
  report.is_cp = verdict.completely_positive;
  report.min_choi_eigenvalue = verdict.min_choi_eigenvalue;
  report.is_canonical = is_canonical(basis, tol).canonical;
  return report;
}

}  // namespace cpmw
