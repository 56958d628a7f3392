// Phase-estimation diagrams over quantum maps: the entangled parallel
// protocol on the unnormalized GHZ state, the sequential single-wire
// protocol, their equality for basis-compatible maps, and Fisher-information
// sweeps under dephasing noise.
//
// Scalars are computed by Kraus-index summation over pure amplitudes:
//   parallel  = sum_{s-vector} | sum_{j,k} prod_i b^{(i)}_{s_i}[j,k] |^2
// rather than by materializing n^m-dimensional density matrices.
// Probabilities reported by sweep are scalar / n^2, the probability of the
// normalized GHZ projector on the normalized GHZ input.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpmw/complex_matrix.hpp"
#include "cpmw/errors.hpp"
#include "cpmw/hermitian_eig.hpp"
#include "cpmw/matrix_basis.hpp"
#include "cpmw/rng.hpp"
#include "cpmw/superoperator.hpp"

namespace cpmw {

// Kraus family b_s = sqrt(r_s) sum_j e^{-i(phi_j + 2 pi j s / n)} |j><j|:
// phase rotations phi_j under dephasing weights r_s.
struct DephasingPhaseMap {
  std::size_t n = 0;
  std::vector<double> phases;   // phi_j, radians
  std::vector<double> weights;  // r_s, nonnegative, summing to 1

  DephasingPhaseMap(std::size_t dim, std::vector<double> phi,
                    std::vector<double> r)
      : n(dim), phases(std::move(phi)), weights(std::move(r)) {
    if (n == 0) throw ValidationError("DephasingPhaseMap: n must be positive");
    if (phases.size() != n || weights.size() != n)
      throw ValidationError(
          "DephasingPhaseMap: need n phases and n weights");
    double sum = 0.0;
    for (double r_s : weights) {
      if (r_s < -1e-12)
        throw ValidationError("DephasingPhaseMap: negative weight");
      sum += r_s;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ValidationError("DephasingPhaseMap: weights sum to " +
                            std::to_string(sum) + ", expected 1");
  }
};

enum class KrausNormalization { kTracePreserving, kTraceNonincreasing };

// A channel given by an explicit Kraus family.
struct QuantumMap {
  std::size_t n = 0;
  std::vector<ComplexMatrix> kraus;

  QuantumMap(std::size_t dim, std::vector<ComplexMatrix> operators,
             KrausNormalization mode = KrausNormalization::kTracePreserving,
             double tol = 1e-9)
      : n(dim), kraus(std::move(operators)) {
    if (kraus.empty())
      throw ValidationError("QuantumMap: need at least one Kraus operator");
    ComplexMatrix sum(n, n);
    for (const ComplexMatrix& b : kraus) {
      if (b.rows() != n || b.cols() != n)
        throw DimensionError("QuantumMap: Kraus operator shape mismatch");
      sum += b.adjoint() * b;
    }
    const ComplexMatrix gap = ComplexMatrix::identity(n) - sum;
    if (mode == KrausNormalization::kTracePreserving) {
      if (gap.max_abs() > tol)
        throw ValidationError(
            "QuantumMap: Kraus operators are not trace-preserving (deviation " +
            std::to_string(gap.max_abs()) + ")");
    } else {
      if (!is_psd(gap, tol))
        throw ValidationError(
            "QuantumMap: Kraus operators exceed trace preservation");
    }
  }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    ComplexMatrix out(n, n);
    for (const ComplexMatrix& b : kraus) out += b * rho * b.adjoint();
    return out;
  }

  bool all_diagonal(double tol = 0.0) const {
    for (const ComplexMatrix& b : kraus)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && std::abs(b(i, j)) > tol) return false;
    return true;
  }
};

// Builds the diagonal Kraus family of a dephasing phase map; zero-weight
// terms are dropped.
inline QuantumMap kraus_of(const DephasingPhaseMap& map) {
  const std::size_t n = map.n;
  std::vector<ComplexMatrix> kraus;
  for (std::size_t s = 0; s < n; ++s) {
    const double r = map.weights[s];
    if (r <= 0.0) continue;
    ComplexMatrix b(n, n);
    const double root = std::sqrt(r);
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = map.phases[j] + 2.0 * std::numbers::pi *
                                               static_cast<double>(j) *
                                               static_cast<double>(s) /
                                               static_cast<double>(n);
      b(j, j) = root * Complex(std::cos(angle), -std::sin(angle));
    }
    kraus.push_back(std::move(b));
  }
  return QuantumMap(n, std::move(kraus));
}

// Compatibility with the classical structure of an orthonormal vector
// family: the channel must commute with the copy map on either output leg,
//   S_delta S_F = (F ox Id) S_delta = (Id ox F) S_delta.
inline bool is_compatible(const QuantumMap& map,
                          const std::vector<ComplexMatrix>& vectors,
                          double tol = 1e-9) {
  const std::size_t n = map.n;
  if (vectors.size() != n)
    throw DimensionError("is_compatible: vector family dimension mismatch");
  const Superoperator s_delta =
      comultiplication_superop(canonical_from_vectors(vectors));
  const Superoperator s_f = channel_superop(map.kraus);

  const ComplexMatrix lhs = s_delta.matrix * s_f.matrix;

  const ComplexMatrix eye = ComplexMatrix::identity(n);
  std::vector<ComplexMatrix> first_leg, second_leg;
  first_leg.reserve(map.kraus.size());
  second_leg.reserve(map.kraus.size());
  for (const ComplexMatrix& b : map.kraus) {
    first_leg.push_back(kron(b, eye));
    second_leg.push_back(kron(eye, b));
  }
  const ComplexMatrix rhs1 =
      channel_superop(first_leg).matrix * s_delta.matrix;
  const ComplexMatrix rhs2 =
      channel_superop(second_leg).matrix * s_delta.matrix;

  const double scale = std::max(1.0, lhs.max_abs());
  return (lhs - rhs1).max_abs() <= tol * scale &&
         (lhs - rhs2).max_abs() <= tol * scale;
}

// Canonical Kraus operators: eigendecomposition of the channel's Choi matrix
// sum_s vec(b_s) vec(b_s)^dag, keeping eigenvalues above tol.
inline std::vector<ComplexMatrix> canonical_kraus(const QuantumMap& map,
                                                  double tol = 1e-9) {
  const std::size_t n = map.n;
  ComplexMatrix c(n * n, n * n);
  for (const ComplexMatrix& b : map.kraus) {
    const ComplexMatrix v = vectorize(b);
    c += v * v.adjoint();
  }
  const HermitianEigenDecomposition d = eigh(c);
  std::vector<ComplexMatrix> out;
  const double cut = tol * std::max(1.0, d.eigenvalues.front());
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
    if (d.eigenvalues[k] <= cut) break;
    ComplexMatrix v(n * n, 1);
    for (std::size_t r = 0; r < n * n; ++r) v(r, 0) = d.eigenvectors(r, k);
    out.push_back(unvectorize(v, n) *
                  Complex(std::sqrt(d.eigenvalues[k]), 0.0));
  }
  return out;
}

// True when the canonical Kraus operators are normal and commute pairwise,
// so a simultaneous eigenbasis exists.
inline bool has_commuting_kraus(const QuantumMap& map, double tol = 1e-9) {
  const std::vector<ComplexMatrix> ops = canonical_kraus(map, tol);
  for (const ComplexMatrix& a : ops)
    if (operator_norm(a.adjoint() * a - a * a.adjoint()) > tol) return false;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (operator_norm(commutator(ops[i], ops[j])) > tol) return false;
  return true;
}

// <eta_m| (F_1 ox ... ox F_m)(|eta_m><eta_m|) |eta_m> with eta_m the
// unnormalized GHZ state sum_j |j>^{ox m}.
inline double parallel_scalar(const std::vector<QuantumMap>& maps,
                              std::size_t n) {
  if (maps.empty())
    throw ValidationError("parallel_scalar: need at least one map");
  for (const QuantumMap& f : maps)
    if (f.n != n) throw DimensionError("parallel_scalar: dimension mismatch");
  const std::size_t m = maps.size();

  bool diagonal = true;
  for (const QuantumMap& f : maps) diagonal = diagonal && f.all_diagonal();

  std::vector<std::size_t> index(m, 0);
  double total = 0.0;
  while (true) {
    Complex amplitude = 0.0;
    if (diagonal) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex term = 1.0;
        for (std::size_t i = 0; i < m; ++i)
          term *= maps[i].kraus[index[i]](j, j);
        amplitude += term;
      }
    } else {
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Complex term = 1.0;
          for (std::size_t i = 0; i < m; ++i)
            term *= maps[i].kraus[index[i]](j, k);
          amplitude += term;
        }
    }
    total += std::norm(amplitude);

    std::size_t pos = 0;
    while (pos < m && ++index[pos] == maps[pos].kraus.size()) {
      index[pos] = 0;
      ++pos;
    }
    if (pos == m) break;
  }
  return total;
}

// <eta_1| F_{pi(m)}( ... F_{pi(1)}(|eta_1><eta_1|) ... ) |eta_1> with eta_1
// the unnormalized uniform state sum_j |j>.
inline double sequential_scalar(const std::vector<QuantumMap>& maps,
                                const std::vector<std::size_t>& perm,
                                std::size_t n) {
  if (maps.empty())
    throw ValidationError("sequential_scalar: need at least one map");
  for (const QuantumMap& f : maps)
    if (f.n != n)
      throw DimensionError("sequential_scalar: dimension mismatch");
  const std::size_t m = maps.size();
  if (perm.size() != m)
    throw ValidationError("sequential_scalar: permutation size mismatch");
  std::vector<bool> seen(m, false);
  for (std::size_t p : perm) {
    if (p >= m || seen[p])
      throw ValidationError("sequential_scalar: invalid permutation");
    seen[p] = true;
  }

  ComplexMatrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = 1.0;
  for (std::size_t step = 0; step < m; ++step)
    rho = maps[perm[step]].apply(rho);

  Complex out = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out += rho(i, j);
  return out.real();
}

struct SweepRow {
  double phi = 0.0;
  double p_parallel = 0.0;
  double p_sequential = 0.0;
  std::optional<double> fisher;  // null at endpoints and where p(1-p) ~ 0
};

// Evaluates m copies of the template at each grid value. The template's
// `phases` field holds per-level coefficients c_j; the map at grid value phi
// has phases phi_j = c_j * phi. Fisher information of the parallel column by
// central differences.
inline std::vector<SweepRow> sweep(const DephasingPhaseMap& map_template,
                                   std::size_t m,
                                   const std::vector<double>& grid) {
  if (m < 1) throw ValidationError("sweep: m must be >= 1");
  if (grid.size() < 3)
    throw ValidationError("sweep: grid needs at least 3 points for central "
                          "differences");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (grid[k] <= grid[k - 1])
      throw ValidationError("sweep: grid must be ascending");

  const std::size_t n = map_template.n;
  const double norm = static_cast<double>(n) * static_cast<double>(n);
  std::vector<SweepRow> rows(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> phases(n);
    for (std::size_t j = 0; j < n; ++j)
      phases[j] = map_template.phases[j] * grid[k];
    const QuantumMap f =
        kraus_of(DephasingPhaseMap(n, phases, map_template.weights));
    const std::vector<QuantumMap> maps(m, f);
    std::vector<std::size_t> identity_perm(m);
    for (std::size_t i = 0; i < m; ++i) identity_perm[i] = i;
    rows[k].phi = grid[k];
    rows[k].p_parallel = parallel_scalar(maps, n) / norm;
    rows[k].p_sequential = sequential_scalar(maps, identity_perm, n) / norm;
  }
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    const double p = rows[k].p_parallel;
    const double var = p * (1.0 - p);
    if (var < 1e-12) continue;
    const double slope = (rows[k + 1].p_parallel - rows[k - 1].p_parallel) /
                         (grid[k + 1] - grid[k - 1]);
    rows[k].fisher = slope * slope / var;
  }
  return rows;
}

struct SequentializationReport {
  bool pass = false;
  double max_abs_deviation = 0.0;
  double parallel_value = 0.0;
  std::size_t permutations_checked = 0;
};

// Compares the parallel scalar against sequential scalars over sampled
// permutations (always including identity and reversal). Every map must be
// compatible with the standard basis.
inline SequentializationReport verify_sequentialization(
    const std::vector<QuantumMap>& maps, std::size_t n, std::size_t num_perms,
    std::uint64_t seed, double tol = 1e-9) {
  if (maps.empty())
    throw ValidationError("verify_sequentialization: need maps");
  if (num_perms < 1)
    throw ValidationError("verify_sequentialization: num_perms >= 1");

  std::vector<ComplexMatrix> standard;
  standard.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix u(n, 1);
    u(i, 0) = 1.0;
    standard.push_back(std::move(u));
  }
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (!is_compatible(maps[i], standard, tol))
      throw ValidationError("verify_sequentialization: map " +
                            std::to_string(i) +
                            " is not compatible with the standard basis");

  const std::size_t m = maps.size();
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> identity(m), reversal(m);
  for (std::size_t i = 0; i < m; ++i) {
    identity[i] = i;
    reversal[i] = m - 1 - i;
  }
  perms.push_back(identity);
  if (num_perms > 1 && m > 1) perms.push_back(reversal);
  RandomStream stream(derive_seed(seed, 0x5045524dull));
  while (perms.size() < num_perms) {
    std::vector<std::size_t> p = identity;
    for (std::size_t i = m; i > 1; --i)
      std::swap(p[i - 1], p[stream.next_index(i)]);
    perms.push_back(std::move(p));
  }

  SequentializationReport report;
  report.parallel_value = parallel_scalar(maps, n);
  for (const auto& perm : perms) {
    const double seq = sequential_scalar(maps, perm, n);
    report.max_abs_deviation = std::max(
        report.max_abs_deviation, std::abs(seq - report.parallel_value));
  }
  report.permutations_checked = perms.size();
  report.pass = report.max_abs_deviation <=
                tol * std::max(1.0, std::abs(report.parallel_value));
  return report;
}

}  // namespace cpmw
