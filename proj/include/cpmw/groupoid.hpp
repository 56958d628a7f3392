// Abelian groupoids (disjoint unions of abelian groups) on finite carriers:
// the classical structures of Rel, their copy relations, and the canonical
// structures they induce on doubled carriers.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpmw/errors.hpp"
#include "cpmw/rel.hpp"

namespace cpmw {

// Partition of {0..carrier-1} with one abelian group per block, validated
// exhaustively at construction (closure, associativity, commutativity,
// identity, inverses).
class AbelianGroupoid {
 public:
  // tables[b][i][j] is the global label of blocks[b][i] + blocks[b][j]
  static AbelianGroupoid create(
      std::size_t carrier, std::vector<std::vector<std::size_t>> blocks,
      std::vector<std::vector<std::vector<std::size_t>>> tables) {
    if (carrier == 0)
      throw ValidationError("AbelianGroupoid: carrier must be nonempty");
    if (blocks.size() != tables.size())
      throw ValidationError("AbelianGroupoid: one table per block required");

    std::vector<int> block_of(carrier, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty())
        throw ValidationError("AbelianGroupoid: empty block");
      for (std::size_t e : blocks[b]) {
        if (e >= carrier)
          throw ValidationError("AbelianGroupoid: element out of range");
        if (block_of[e] != -1)
          throw ValidationError("AbelianGroupoid: blocks overlap");
        block_of[e] = static_cast<int>(b);
      }
    }
    for (std::size_t e = 0; e < carrier; ++e)
      if (block_of[e] == -1)
        throw ValidationError("AbelianGroupoid: blocks do not cover the "
                              "carrier");

    std::vector<int> sum(carrier * carrier, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& block = blocks[b];
      const auto& table = tables[b];
      const std::size_t k = block.size();
      if (table.size() != k)
        throw ValidationError("AbelianGroupoid: table size mismatch");
      std::vector<int> local(carrier, -1);
      for (std::size_t i = 0; i < k; ++i) local[block[i]] = static_cast<int>(i);
      for (std::size_t i = 0; i < k; ++i) {
        if (table[i].size() != k)
          throw ValidationError("AbelianGroupoid: table row size mismatch");
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t v = table[i][j];
          if (v >= carrier || local[v] == -1)
            throw ValidationError("AbelianGroupoid: table entry leaves the "
                                  "block");
          sum[block[i] * carrier + block[j]] = static_cast<int>(v);
        }
      }
      // commutativity, associativity, identity, inverses
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (table[i][j] != table[j][i])
            throw ValidationError("AbelianGroupoid: block " +
                                  std::to_string(b) + " is not commutative");
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t l = 0; l < k; ++l) {
            const std::size_t left =
                table[static_cast<std::size_t>(local[table[i][j]])][l];
            const std::size_t right =
                table[i][static_cast<std::size_t>(local[table[j][l]])];
            if (left != right)
              throw ValidationError("AbelianGroupoid: block " +
                                    std::to_string(b) +
                                    " is not associative");
          }
      std::optional<std::size_t> identity;
      for (std::size_t i = 0; i < k && !identity; ++i) {
        bool is_identity = true;
        for (std::size_t j = 0; j < k; ++j)
          is_identity = is_identity && table[i][j] == block[j];
        if (is_identity) identity = i;
      }
      if (!identity)
        throw ValidationError("AbelianGroupoid: block " + std::to_string(b) +
                              " has no identity");
      for (std::size_t i = 0; i < k; ++i) {
        bool has_inverse = false;
        for (std::size_t j = 0; j < k && !has_inverse; ++j)
          has_inverse = table[i][j] == block[*identity];
        if (!has_inverse)
          throw ValidationError("AbelianGroupoid: block " +
                                std::to_string(b) + " lacks inverses");
      }
    }

    AbelianGroupoid g;
    g.carrier_ = carrier;
    g.blocks_ = std::move(blocks);
    g.tables_ = std::move(tables);
    g.block_of_ = std::move(block_of);
    g.sum_ = std::move(sum);
    return g;
  }

  std::size_t carrier_size() const { return carrier_; }
  const std::vector<std::vector<std::size_t>>& blocks() const {
    return blocks_;
  }
  const std::vector<std::vector<std::vector<std::size_t>>>& tables() const {
    return tables_;
  }
  int block_of(std::size_t e) const { return block_of_[e]; }

  // -1 when the operands live in different blocks
  int sum(std::size_t a, std::size_t b) const {
    return sum_[a * carrier_ + b];
  }

 private:
  std::size_t carrier_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::vector<std::vector<std::size_t>>> tables_;
  std::vector<int> block_of_;
  std::vector<int> sum_;
};

// single-block groupoid from a Cayley table on {0..k-1}
inline AbelianGroupoid cyclic_groupoid(std::size_t k) {
  std::vector<std::size_t> block(k);
  for (std::size_t i = 0; i < k; ++i) block[i] = i;
  std::vector<std::vector<std::size_t>> table(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) table[i][j] = (i + j) % k;
  return AbelianGroupoid::create(k, {block}, {table});
}

// all-singleton-block groupoid (the copy structure)
inline AbelianGroupoid discrete_groupoid(std::size_t k) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<std::vector<std::size_t>>> tables;
  for (std::size_t i = 0; i < k; ++i) {
    blocks.push_back({i});
    tables.push_back({{i}});
  }
  return AbelianGroupoid::create(k, std::move(blocks), std::move(tables));
}

// product groupoid on pairs (a,b) -> a * other.carrier + b
inline AbelianGroupoid product_groupoid(const AbelianGroupoid& g,
                                        const AbelianGroupoid& h) {
  const std::size_t gs = g.carrier_size();
  const std::size_t hs = h.carrier_size();
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<std::vector<std::size_t>>> tables;
  for (const auto& gb : g.blocks())
    for (const auto& hb : h.blocks()) {
      std::vector<std::size_t> block;
      for (std::size_t a : gb)
        for (std::size_t b : hb) block.push_back(a * hs + b);
      const std::size_t k = block.size();
      std::vector<std::vector<std::size_t>> table(
          k, std::vector<std::size_t>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t a1 = block[i] / hs, b1 = block[i] % hs;
          const std::size_t a2 = block[j] / hs, b2 = block[j] % hs;
          table[i][j] =
              static_cast<std::size_t>(g.sum(a1, a2)) * hs +
              static_cast<std::size_t>(h.sum(b1, b2));
        }
      blocks.push_back(std::move(block));
      tables.push_back(std::move(table));
    }
  return AbelianGroupoid::create(gs * hs, std::move(blocks),
                                 std::move(tables));
}

// The copy relation of a groupoid: x ~ (y,z) iff x, y, z share a block and
// y + z = x there.
inline FiniteRelation groupoid_to_delta(const AbelianGroupoid& g) {
  const std::size_t s = g.carrier_size();
  FiniteRelation delta(s, s * s);
  for (std::size_t y = 0; y < s; ++y)
    for (std::size_t z = 0; z < s; ++z) {
      const int x = g.sum(y, z);
      if (x >= 0) delta.set(static_cast<std::size_t>(x), y * s + z);
    }
  return delta;
}

// Wire-regrouping rule for the doubled tensor codomain. The raw F(delta)
// codomain carries wires in the order (y' z' | y z); the CPM tensor wants
// them regrouped as ((y',y),(z',z)). The two candidate treatments of the
// middle wires are "swap" (regrouped, the convention this project freezes:
// canonical structures pass the CP conditions under it) and "keep"
// (ungrouped; rejected by the Z2 fixture test).
struct DoublingConvention {
  std::vector<std::size_t> permutation;  // new codomain index per old index

  static DoublingConvention middle_swap(std::size_t x) {
    DoublingConvention c;
    c.permutation.resize(x * x * x * x);
    for (std::size_t ys = 0; ys < x; ++ys)
      for (std::size_t zs = 0; zs < x; ++zs)
        for (std::size_t y = 0; y < x; ++y)
          for (std::size_t z = 0; z < x; ++z) {
            const std::size_t raw = ((ys * x + zs) * x + y) * x + z;
            const std::size_t regrouped = ((ys * x + y) * x + zs) * x + z;
            c.permutation[raw] = regrouped;
          }
    return c;
  }

  static DoublingConvention middle_keep(std::size_t x) {
    DoublingConvention c;
    c.permutation.resize(x * x * x * x);
    for (std::size_t i = 0; i < c.permutation.size(); ++i)
      c.permutation[i] = i;
    return c;
  }

  FiniteRelation apply_to_codomain(const FiniteRelation& r) const {
    if (r.cod_size() != permutation.size())
      throw DimensionError("DoublingConvention: codomain size mismatch");
    FiniteRelation out(r.dom_size(), r.cod_size());
    for (std::size_t x = 0; x < r.dom_size(); ++x)
      for (std::size_t y = 0; y < r.cod_size(); ++y)
        if (r.get(x, y)) out.set(x, permutation[y]);
    return out;
  }
};

// F applied to the copy relation of a groupoid on X: conjugation in Rel is
// the identity on pair sets, so F(delta) = delta tensor delta with the
// codomain wires regrouped per the convention. The result is a relation
// (X x X) -> (X x X)^2 comparable directly with enumerated candidates.
inline FiniteRelation canonical_cpm_structure(
    const AbelianGroupoid& g,
    const DoublingConvention* convention = nullptr) {
  const FiniteRelation delta = groupoid_to_delta(g);
  const FiniteRelation doubled = rel_tensor(delta, delta);
  if (convention) return convention->apply_to_codomain(doubled);
  return DoublingConvention::middle_swap(g.carrier_size())
      .apply_to_codomain(doubled);
}

}  // namespace cpmw
