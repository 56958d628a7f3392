// Exhaustive verification machinery for doubled carriers: labeled abelian
// group tables, set partitions, and the enumeration of all abelian groupoids
// on X x X filtered by the classical-structure axioms and the CP-relation
// conditions. Enumeration order is partitions by nondecreasing block-size
// multiset, then per-block tables lexicographically, so progress markers are
// resumable and worker counts do not affect results.
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cpmw/errors.hpp"
#include "cpmw/groupoid.hpp"
#include "cpmw/rel.hpp"

namespace cpmw {

// All distinct abelian group Cayley tables on {0..k-1}, k <= 9, as flat
// k*k byte arrays in lexicographic order. Generated by pushing every
// relabeling through the abelian group types of order k and deduplicating.
inline const std::vector<std::vector<std::uint8_t>>&
labeled_abelian_group_tables(std::size_t k) {
  static std::array<std::vector<std::vector<std::uint8_t>>, 10> cache;
  static std::array<bool, 10> ready{};
  if (k == 0 || k > 9)
    throw CapabilityError("labeled_abelian_group_tables: supported block "
                          "sizes are 1..9");
  if (ready[k]) return cache[k];

  static const std::vector<std::vector<std::size_t>> kTypesBySize[10] = {
      {},          {{1}},       {{2}},          {{3}},
      {{4}, {2, 2}}, {{5}},     {{6}},          {{7}},
      {{8}, {4, 2}, {2, 2, 2}}, {{9}, {3, 3}},
  };

  std::unordered_set<std::string> seen;
  std::vector<std::vector<std::uint8_t>> tables;
  for (const std::vector<std::size_t>& factors : kTypesBySize[k]) {
    // abstract addition table of the product of cyclic groups
    std::vector<std::uint8_t> add(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        std::size_t ra = a, rb = b, out = 0;
        for (std::size_t f = factors.size(); f-- > 0;) {
          const std::size_t m = factors[f];
          const std::size_t digit = (ra % m + rb % m) % m;
          ra /= m;
          rb /= m;
          std::size_t scale = 1;
          for (std::size_t g = f + 1; g < factors.size(); ++g)
            scale *= factors[g];
          out += digit * scale;
        }
        add[a * k + b] = static_cast<std::uint8_t>(out);
      }

    std::vector<std::uint8_t> perm(k), inverse(k);
    std::iota(perm.begin(), perm.end(), std::uint8_t{0});
    do {
      for (std::size_t i = 0; i < k; ++i) inverse[perm[i]] = static_cast<std::uint8_t>(i);
      std::string table(k * k, '\0');
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          table[i * k + j] =
              static_cast<char>(inverse[add[perm[i] * k + perm[j]]]);
      if (seen.insert(table).second)
        tables.emplace_back(table.begin(), table.end());
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(tables.begin(), tables.end());
  cache[k] = std::move(tables);
  ready[k] = true;
  return cache[k];
}

// Set partitions of {0..size-1} as restricted growth strings.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(size, 0);
  while (true) {
    out.push_back(rgs);
    std::size_t i = size;
    while (i-- > 1) {
      std::size_t cap = 0;
      for (std::size_t j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
      if (rgs[i] <= cap) {
        ++rgs[i];
        for (std::size_t j = i + 1; j < size; ++j) rgs[j] = 0;
        break;
      }
      if (i == 1) return out;
      rgs[i] = 0;
    }
    if (size == 1) return out;
  }
}

inline std::vector<std::vector<std::size_t>> blocks_from_rgs(
    const std::vector<std::size_t>& rgs) {
  std::size_t block_count = 0;
  for (std::size_t v : rgs) block_count = std::max(block_count, v + 1);
  std::vector<std::vector<std::size_t>> blocks(block_count);
  for (std::size_t e = 0; e < rgs.size(); ++e) blocks[rgs[e]].push_back(e);
  return blocks;
}

// All abelian groupoids on a small carrier, fully validated. Used for the
// canonical side of the theorem check (carrier <= 3 there).
inline std::vector<AbelianGroupoid> all_abelian_groupoids(
    std::size_t carrier) {
  std::vector<AbelianGroupoid> out;
  for (const auto& rgs : set_partitions(carrier)) {
    std::vector<std::vector<std::size_t>> blocks = blocks_from_rgs(rgs);
    std::vector<std::size_t> choice(blocks.size(), 0);
    while (true) {
      std::vector<std::vector<std::vector<std::size_t>>> tables;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t k = blocks[b].size();
        const auto& local = labeled_abelian_group_tables(k)[choice[b]];
        std::vector<std::vector<std::size_t>> table(
            k, std::vector<std::size_t>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            table[i][j] = blocks[b][local[i * k + j]];
        tables.push_back(std::move(table));
      }
      out.push_back(AbelianGroupoid::create(carrier, blocks, tables));

      std::size_t pos = 0;
      while (pos < blocks.size() &&
             ++choice[pos] ==
                 labeled_abelian_group_tables(blocks[pos].size()).size()) {
        choice[pos] = 0;
        ++pos;
      }
      if (pos == blocks.size()) break;
    }
  }
  return out;
}

// Canonical images F(delta_h) for every abelian groupoid h on an x_size set,
// under the frozen doubling convention.
inline std::vector<FiniteRelation> canonical_structure_set(
    std::size_t x_size) {
  std::vector<FiniteRelation> out;
  for (const AbelianGroupoid& h : all_abelian_groupoids(x_size))
    out.push_back(canonical_cpm_structure(h));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Literal element-level reading of the paper-style pair equations on a
// groupoid over X x X:
//   eq3: p + q = s  iff  q + p = swap(s)
//   eq4: p + q = s  implies  q + q = diag(plain(s))
// Recorded as data only; the morphism-level conditions are authoritative.
inline std::pair<bool, bool> element_level_cp_agreement(
    const AbelianGroupoid& g, std::size_t x_size) {
  const std::size_t carrier = g.carrier_size();
  bool eq3 = true, eq4 = true;
  for (std::size_t p = 0; p < carrier; ++p)
    for (std::size_t q = 0; q < carrier; ++q) {
      const int s = g.sum(p, q);
      if (s < 0) continue;
      const std::size_t su = static_cast<std::size_t>(s);
      const std::size_t swapped = (su % x_size) * x_size + su / x_size;
      const std::size_t diag = (su % x_size) * x_size + (su % x_size);
      if (g.sum(q, p) != static_cast<int>(swapped)) eq3 = false;
      if (g.sum(q, q) != static_cast<int>(diag)) eq4 = false;
    }
  return {eq3, eq4};
}

struct EnumerationConfig {
  std::size_t x_size = 2;
  std::uint64_t candidate_cap = 10'000'000;
  unsigned workers = 1;
};

struct SurvivorRecord {
  AbelianGroupoid groupoid;
  FiniteRelation delta;
  bool classical = false;
  bool cp = false;
  bool element_eq3 = false;
  bool element_eq4 = false;
};

struct EnumerationResult {
  std::uint64_t candidates_checked = 0;
  std::vector<SurvivorRecord> survivors;  // deduplicated, delta-sorted
};

// Enumerates every abelian groupoid on the doubled carrier X x X (element
// s <-> (s / X, s % X)), filters by the CP-relation conditions (cheap, so
// first) and the classical-structure axioms, and reports the survivors.
// Throws BudgetError with a progress marker when the candidate cap is hit.
inline EnumerationResult enumerate_cpm_classical_structures(
    const EnumerationConfig& config) {
  const std::size_t x = config.x_size;
  if (x < 1 || x > 3)
    throw CapabilityError(
        "enumerate_cpm_classical_structures: x_size must be 1..3");
  const std::size_t s = x * x;

  // precomputed so the parallel section never touches the table cache
  for (std::size_t k = 1; k <= s; ++k) labeled_abelian_group_tables(k);

  std::vector<std::size_t> swap_of(s), diag_of(s);
  for (std::size_t e = 0; e < s; ++e) {
    swap_of[e] = (e % x) * x + e / x;
    diag_of[e] = (e % x) * x + (e % x);
  }

  std::vector<std::vector<std::size_t>> partitions = set_partitions(s);
  std::stable_sort(partitions.begin(), partitions.end(),
                   [](const auto& a, const auto& b) {
                     auto sizes = [](const auto& rgs) {
                       std::vector<std::size_t> counts(rgs.size(), 0);
                       for (std::size_t v : rgs) ++counts[v];
                       std::sort(counts.begin(), counts.end());
                       return counts;
                     };
                     return sizes(a) < sizes(b);
                   });

  struct PartitionOutcome {
    std::vector<std::pair<std::vector<std::vector<std::size_t>>,
                          std::vector<std::size_t>>>
        survivors;  // (blocks, table choice per block)
    std::uint64_t candidates = 0;
  };
  std::vector<PartitionOutcome> outcomes(partitions.size());
  std::atomic<std::size_t> next_partition{0};
  std::atomic<std::uint64_t> candidates_total{0};
  std::atomic<bool> over_budget{false};

  const auto worker = [&]() {
    while (true) {
      const std::size_t pi = next_partition.fetch_add(1);
      if (pi >= partitions.size() || over_budget.load()) return;
      const std::vector<std::vector<std::size_t>> blocks =
          blocks_from_rgs(partitions[pi]);

      // sort blocks small-first so the fastest odometer digit is cheap
      std::vector<std::vector<std::size_t>> ordered = blocks;
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const auto& a, const auto& b) {
                         return a.size() < b.size();
                       });

      std::vector<int> block_of(s, -1);
      for (std::size_t b = 0; b < ordered.size(); ++b)
        for (std::size_t e : ordered[b]) block_of[e] = static_cast<int>(b);

      std::vector<const std::vector<std::vector<std::uint8_t>>*> menus;
      menus.reserve(ordered.size());
      for (const auto& block : ordered)
        menus.push_back(&labeled_abelian_group_tables(block.size()));

      std::vector<int> sum(s * s, -1);
      const auto fill_block = [&](std::size_t b, std::size_t choice) {
        const auto& block = ordered[b];
        const std::size_t k = block.size();
        const std::vector<std::uint8_t>& table = (*menus[b])[choice];
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            sum[block[i] * s + block[j]] =
                static_cast<int>(block[table[i * k + j]]);
      };

      std::vector<std::size_t> choice(ordered.size(), 0);
      for (std::size_t b = 0; b < ordered.size(); ++b) fill_block(b, 0);

      PartitionOutcome& outcome = outcomes[pi];
      while (true) {
        ++outcome.candidates;
        if (candidates_total.fetch_add(1) + 1 > config.candidate_cap) {
          over_budget.store(true);
          return;
        }

        bool cp = true;
        for (std::size_t b = 0; b < ordered.size() && cp; ++b) {
          const auto& block = ordered[b];
          for (std::size_t yi = 0; yi < block.size() && cp; ++yi)
            for (std::size_t zi = 0; zi < block.size(); ++zi) {
              const std::size_t y = block[yi];
              const std::size_t z = block[zi];
              const int xsum = sum[y * s + z];
              const int sw = sum[swap_of[y] * s + swap_of[z]];
              if (sw != static_cast<int>(swap_of[xsum])) {
                cp = false;
                break;
              }
              const int dg = sum[diag_of[y] * s + diag_of[z]];
              if (dg != static_cast<int>(diag_of[xsum])) {
                cp = false;
                break;
              }
            }
        }
        if (cp) outcome.survivors.emplace_back(ordered, choice);

        std::size_t pos = 0;
        while (pos < ordered.size() &&
               ++choice[pos] == menus[pos]->size()) {
          choice[pos] = 0;
          fill_block(pos, 0);
          ++pos;
        }
        if (pos == ordered.size()) break;
        fill_block(pos, choice[pos]);
      }
    }
  };

  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (over_budget.load()) {
    std::size_t first_incomplete = partitions.size();
    for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
      std::uint64_t expected = 1;
      for (const auto& block : blocks_from_rgs(partitions[pi]))
        expected *= labeled_abelian_group_tables(block.size()).size();
      if (outcomes[pi].candidates < expected) {
        first_incomplete = pi;
        break;
      }
    }
    throw BudgetError(candidates_total.load(),
                      "partition " + std::to_string(first_incomplete) + "/" +
                          std::to_string(partitions.size()));
  }

  EnumerationResult result;
  std::vector<SurvivorRecord> records;
  for (const PartitionOutcome& outcome : outcomes) {
    result.candidates_checked += outcome.candidates;
    for (const auto& [blocks, choice] : outcome.survivors) {
      std::vector<std::vector<std::vector<std::size_t>>> tables;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t k = blocks[b].size();
        const auto& local = labeled_abelian_group_tables(k)[choice[b]];
        std::vector<std::vector<std::size_t>> table(
            k, std::vector<std::size_t>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            table[i][j] = blocks[b][local[i * k + j]];
        tables.push_back(std::move(table));
      }
      SurvivorRecord record{
          AbelianGroupoid::create(s, blocks, tables),
          FiniteRelation(1, 1), false, true, false, false};
      record.delta = groupoid_to_delta(record.groupoid);
      record.classical = verify_classical_structure(record.delta);
      if (!record.classical) continue;  // cannot happen for valid groupoids
      const auto [eq3, eq4] = element_level_cp_agreement(record.groupoid, x);
      record.element_eq3 = eq3;
      record.element_eq4 = eq4;
      records.push_back(std::move(record));
    }
  }
  std::sort(records.begin(), records.end(),
            [](const SurvivorRecord& a, const SurvivorRecord& b) {
              return a.delta < b.delta;
            });
  records.erase(std::unique(records.begin(), records.end(),
                            [](const SurvivorRecord& a,
                               const SurvivorRecord& b) {
                              return a.delta == b.delta;
                            }),
                records.end());
  result.survivors = std::move(records);
  return result;
}

}  // namespace cpmw
