// Seeded, portable random streams: splitmix64 with a documented avalanche
// mix for deriving per-trial seeds, and Box-Muller Gaussians on top.
// Everything here is a pure function of the seed, independent of platform
// RNG facilities, so search runs merge deterministically across workers.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "cpmw/complex_matrix.hpp"

namespace cpmw {

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// derive(master, i): avalanche of master xor the golden-ratio multiple of i.
// Distinct (master, i) pairs land in well-separated stream states.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (0x9E3779B97F4A7C15ull * (index + 1));
  std::uint64_t a = splitmix64_step(state);
  std::uint64_t b = splitmix64_step(state);
  return a ^ (b << 1);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_step(state_); }

  // uniform in (0, 1]; never returns 0 so logs stay finite
  double next_uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
  }

  // standard normal via Box-Muller
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  // standard complex Gaussian CN(0,1): E|z|^2 = 1
  Complex next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return Complex(re, im) * (1.0 / std::sqrt(2.0));
  }

  std::size_t next_index(std::size_t bound) {
    return static_cast<std::size_t>(next_u64() % bound);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline ComplexMatrix random_gaussian_matrix(RandomStream& stream,
                                            std::size_t rows,
                                            std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = stream.next_complex_gaussian();
  return m;
}

inline ComplexMatrix random_hermitian_matrix(RandomStream& stream,
                                             std::size_t n) {
  const ComplexMatrix g = random_gaussian_matrix(stream, n, n);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_psd_matrix(RandomStream& stream, std::size_t n) {
  const ComplexMatrix g = random_gaussian_matrix(stream, n, n);
  return g.adjoint() * g;
}

}  // namespace cpmw
