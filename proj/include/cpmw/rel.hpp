// Finite relations as bitsets, the relational category operations, doubled
// carriers, the two CP-relation conditions, and the brute-force Kraus
// witness search.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpmw/errors.hpp"

namespace cpmw {

// Relation between finite index sets; pairs stored as row bitsets.
class FiniteRelation {
 public:
  FiniteRelation() : dom_(0), cod_(0), words_(0) {}
  FiniteRelation(std::size_t dom_size, std::size_t cod_size)
      : dom_(dom_size),
        cod_(cod_size),
        words_((cod_size + 63) / 64),
        bits_(dom_size * words_, 0) {
    if (dom_size == 0 || cod_size == 0)
      throw DimensionError("FiniteRelation: sizes must be positive");
  }

  static FiniteRelation identity(std::size_t k) {
    FiniteRelation r(k, k);
    for (std::size_t i = 0; i < k; ++i) r.set(i, i);
    return r;
  }

  std::size_t dom_size() const { return dom_; }
  std::size_t cod_size() const { return cod_; }

  void set(std::size_t x, std::size_t y) {
    check(x, y);
    bits_[x * words_ + y / 64] |= (1ull << (y % 64));
  }
  void clear(std::size_t x, std::size_t y) {
    check(x, y);
    bits_[x * words_ + y / 64] &= ~(1ull << (y % 64));
  }
  bool get(std::size_t x, std::size_t y) const {
    check(x, y);
    return (bits_[x * words_ + y / 64] >> (y % 64)) & 1ull;
  }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < dom_; ++x)
      for (std::size_t y = 0; y < cod_; ++y)
        if (get(x, y)) out.emplace_back(x, y);
    return out;
  }

  // diagrammatic composition: this then s (dom -> this.cod = s.dom -> s.cod)
  FiniteRelation then(const FiniteRelation& s) const {
    if (cod_ != s.dom_)
      throw DimensionError("FiniteRelation::then: middle sizes differ");
    FiniteRelation out(dom_, s.cod_);
    for (std::size_t x = 0; x < dom_; ++x) {
      std::uint64_t* dst = &out.bits_[x * out.words_];
      for (std::size_t y = 0; y < cod_; ++y) {
        if (!get(x, y)) continue;
        const std::uint64_t* src = &s.bits_[y * s.words_];
        for (std::size_t w = 0; w < s.words_; ++w) dst[w] |= src[w];
      }
    }
    return out;
  }

  FiniteRelation dagger() const {
    FiniteRelation out(cod_, dom_);
    for (std::size_t x = 0; x < dom_; ++x)
      for (std::size_t y = 0; y < cod_; ++y)
        if (get(x, y)) out.set(y, x);
    return out;
  }

  FiniteRelation tensor(const FiniteRelation& s) const {
    FiniteRelation out(dom_ * s.dom_, cod_ * s.cod_);
    for (std::size_t x1 = 0; x1 < dom_; ++x1)
      for (std::size_t y1 = 0; y1 < cod_; ++y1) {
        if (!get(x1, y1)) continue;
        for (std::size_t x2 = 0; x2 < s.dom_; ++x2)
          for (std::size_t y2 = 0; y2 < s.cod_; ++y2)
            if (s.get(x2, y2))
              out.set(x1 * s.dom_ + x2, y1 * s.cod_ + y2);
      }
    return out;
  }

  bool operator==(const FiniteRelation& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && bits_ == o.bits_;
  }
  bool operator<(const FiniteRelation& o) const {
    if (dom_ != o.dom_) return dom_ < o.dom_;
    if (cod_ != o.cod_) return cod_ < o.cod_;
    return bits_ < o.bits_;
  }

 private:
  void check(std::size_t x, std::size_t y) const {
    if (x >= dom_ || y >= cod_)
      throw DimensionError("FiniteRelation: index out of range");
  }

  std::size_t dom_, cod_, words_;
  std::vector<std::uint64_t> bits_;
};

inline FiniteRelation rel_compose(const FiniteRelation& r,
                                  const FiniteRelation& s) {
  return r.then(s);
}
inline FiniteRelation rel_dagger(const FiniteRelation& r) {
  return r.dagger();
}
inline FiniteRelation rel_tensor(const FiniteRelation& r,
                                 const FiniteRelation& s) {
  return r.tensor(s);
}

// swap relation on a k*k product set: (a,b) ~ (b,a)
inline FiniteRelation rel_swap(std::size_t k) {
  FiniteRelation s(k * k, k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) s.set(a * k + b, b * k + a);
  return s;
}

// A doubled carrier: tensor product of factors, each a half-size d_i doubled
// into (star, plain) wire pairs. Carrier layout is mixed-radix over the wire
// tuple (d_1' d_1 d_2' d_2 ...). swap_index flips star and plain within each
// factor; diag_index places a plain tuple on the diagonal.
struct Doubling {
  std::vector<std::size_t> factors;
  std::size_t carrier_size = 1;
  std::size_t plain_size = 1;

  explicit Doubling(std::vector<std::size_t> halves)
      : factors(std::move(halves)) {
    if (factors.empty()) throw DimensionError("Doubling: no factors");
    for (std::size_t d : factors) {
      if (d == 0) throw DimensionError("Doubling: zero factor");
      carrier_size *= d * d;
      plain_size *= d;
    }
  }

  static Doubling simple(std::size_t d) {
    return Doubling(std::vector<std::size_t>{d});
  }
  static Doubling tensor(std::size_t d1, std::size_t d2) {
    return Doubling(std::vector<std::size_t>{d1, d2});
  }

  std::size_t swap_index(std::size_t c) const {
    std::size_t out = 0;
    std::size_t rest = c;
    std::vector<std::size_t> pair(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      pair[i] = rest % (factors[i] * factors[i]);
      rest /= factors[i] * factors[i];
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::size_t d = factors[i];
      const std::size_t star = pair[i] / d;
      const std::size_t plain = pair[i] % d;
      out = out * (d * d) + (plain * d + star);
    }
    return out;
  }

  std::size_t plain_index(std::size_t c) const {
    std::size_t out = 0;
    std::size_t rest = c;
    std::vector<std::size_t> pair(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      pair[i] = rest % (factors[i] * factors[i]);
      rest /= factors[i] * factors[i];
    }
    for (std::size_t i = 0; i < factors.size(); ++i)
      out = out * factors[i] + (pair[i] % factors[i]);
    return out;
  }

  std::size_t diag_index(std::size_t p) const {
    std::size_t out = 0;
    std::size_t rest = p;
    std::vector<std::size_t> digit(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      digit[i] = rest % factors[i];
      rest /= factors[i];
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::size_t d = factors[i];
      out = out * (d * d) + (digit[i] * d + digit[i]);
    }
    return out;
  }
};

// The two CP-relation conditions on a relation between doubled carriers:
//   (1) (x',x) R (y',y)  iff  (x,x') R (y,y')
//   (2) (x',x) R (y',y)  implies  (x,x) R (y,y)
// with swap and diagonal taken factor by factor on tensor carriers.
inline bool is_cp_relation(const FiniteRelation& r, const Doubling& dom,
                           const Doubling& cod) {
  if (r.dom_size() != dom.carrier_size || r.cod_size() != cod.carrier_size)
    throw DimensionError("is_cp_relation: carrier sizes do not match the "
                         "declared doublings");
  for (std::size_t x = 0; x < r.dom_size(); ++x)
    for (std::size_t y = 0; y < r.cod_size(); ++y) {
      if (!r.get(x, y)) continue;
      if (!r.get(dom.swap_index(x), cod.swap_index(y))) return false;
      if (!r.get(dom.diag_index(dom.plain_index(x)),
                 cod.diag_index(cod.plain_index(y))))
        return false;
    }
  return true;
}

// Classical-structure axioms for delta: k -> k^2 in Rel: both Frobenius
// identities, speciality, and invariance under the codomain swap. All
// equalities are exact bitset comparisons.
inline bool verify_classical_structure(const FiniteRelation& delta) {
  const std::size_t k = delta.dom_size();
  if (delta.cod_size() != k * k)
    throw DimensionError("verify_classical_structure: delta must map k to "
                         "k^2");
  const FiniteRelation id_k = FiniteRelation::identity(k);
  const FiniteRelation ddag = delta.dagger();

  const FiniteRelation frobenius_left =
      rel_tensor(delta, id_k).then(rel_tensor(id_k, ddag));
  const FiniteRelation middle = ddag.then(delta);
  const FiniteRelation frobenius_right =
      rel_tensor(id_k, delta).then(rel_tensor(ddag, id_k));
  if (!(frobenius_left == middle) || !(frobenius_right == middle))
    return false;

  if (!(delta.then(ddag) == id_k)) return false;

  return delta.then(rel_swap(k)) == delta;
}

// cp f for a Kraus relation f in X -> (Z x Y):
//   (x',x) R (y',y)  iff  exists z with (x',(z,y')) in f and (x,(z,y)) in f.
inline FiniteRelation relation_from_kraus(const FiniteRelation& f,
                                          std::size_t x_size,
                                          std::size_t z_size,
                                          std::size_t y_size) {
  if (f.dom_size() != x_size || f.cod_size() != z_size * y_size)
    throw DimensionError("relation_from_kraus: shape mismatch");
  FiniteRelation r(x_size * x_size, y_size * y_size);
  for (std::size_t xs = 0; xs < x_size; ++xs)
    for (std::size_t xp = 0; xp < x_size; ++xp)
      for (std::size_t ys = 0; ys < y_size; ++ys)
        for (std::size_t yp = 0; yp < y_size; ++yp) {
          bool related = false;
          for (std::size_t z = 0; z < z_size && !related; ++z)
            related = f.get(xs, z * y_size + ys) && f.get(xp, z * y_size + yp);
          if (related) r.set(xs * x_size + xp, ys * y_size + yp);
        }
  return r;
}

// Brute-force search for a Kraus witness of r over ancilla sizes 1..max_z.
// r must relate simple doubled carriers. Returns the witness relation
// f: X -> (Z x Y) or nullopt.
inline std::optional<FiniteRelation> kraus_relation_search(
    const FiniteRelation& r, std::size_t max_z = 0) {
  std::size_t x_size = 0, y_size = 0;
  for (std::size_t d = 1; d * d <= r.dom_size(); ++d)
    if (d * d == r.dom_size()) x_size = d;
  for (std::size_t d = 1; d * d <= r.cod_size(); ++d)
    if (d * d == r.cod_size()) y_size = d;
  if (x_size == 0 || y_size == 0)
    throw DimensionError("kraus_relation_search: carrier sizes must be "
                         "squares of the halves");
  if (max_z == 0) max_z = x_size * y_size;

  for (std::size_t z = 1; z <= max_z; ++z) {
    const std::size_t bits = x_size * z * y_size;
    if (bits > 26)
      throw CapabilityError("kraus_relation_search: 2^" + std::to_string(bits) +
                            " candidate Kraus relations exceeds the search "
                            "cap");
    const std::uint64_t total = 1ull << bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      FiniteRelation f(x_size, z * y_size);
      for (std::size_t b = 0; b < bits; ++b)
        if (mask & (1ull << b)) f.set(b / (z * y_size), b % (z * y_size));
      if (relation_from_kraus(f, x_size, z, y_size) == r) return f;
    }
  }
  return std::nullopt;
}

}  // namespace cpmw
