// Exception types shared across the workbench.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpmw {

// Shape or size mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Gram-Schmidt hit a (near-)linearly dependent input vector.
class DependenceError : public std::runtime_error {
 public:
  DependenceError(std::size_t index, double norm)
      : std::runtime_error("gram_schmidt: input " + std::to_string(index) +
                           " is linearly dependent on its predecessors "
                           "(post-projection norm " +
                           std::to_string(norm) + ")"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A candidate basis failed orthonormality (or shape) validation.
class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Semantically invalid input values (weights, grids, permutations, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request exceeds what this implementation supports.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration ran out of budget; carries a resumable progress marker.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t candidates_done, std::string progress_marker)
      : std::runtime_error("enumeration budget exhausted after " +
                           std::to_string(candidates_done) +
                           " candidates (progress marker " + progress_marker +
                           ")"),
        candidates_done_(candidates_done),
        progress_marker_(std::move(progress_marker)) {}
  std::uint64_t candidates_done() const { return candidates_done_; }
  const std::string& progress_marker() const { return progress_marker_; }

 private:
  std::uint64_t candidates_done_;
  std::string progress_marker_;
};

}  // namespace cpmw
