#pragma once

// Factored multiplierless representation of a transform and its exact
// addition / bit-shift cost.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dctscale/matkit.hpp"

namespace dctscale {

struct Cost {
  std::uint64_t adds = 0;
  std::uint64_t shifts = 0;

  friend Cost operator+(Cost a, Cost b) { return {a.adds + b.adds, a.shifts + b.shifts}; }
  Cost& operator+=(Cost o) { return *this = *this + o; }
  friend auto operator<=>(const Cost&, const Cost&) = default;
};

// adds = sum over rows of max(nonzeros - 1, 0); shifts = entries with |v| not in {0, 1}.
Cost count_dense_dyadic(const DyadicMatrix& m);

class FactoredTransform;

struct PermutationFactor {
  Permutation perm;
};

// One shift per entry with |v| not in {0, 1}.
struct DiagonalFactor {
  std::vector<DyadicRational> entries;
};

// [[I, IBar], [IBar, -I]] of size 2 * half; costs 2 * half adds.
struct ButterflyFactor {
  std::size_t half = 0;
};

// Blocks are applied independently to consecutive slices of the input.
struct BlockDiagFactor {
  std::vector<std::shared_ptr<const FactoredTransform>> blocks;
};

// Dense dyadic matrix. Cost is `declared` when present (opaque leaf with a
// published fast algorithm), count_dense_dyadic(matrix) otherwise.
struct SparseFactor {
  DyadicMatrix matrix;
  std::optional<Cost> declared;
  std::string label;
};

using Factor =
    std::variant<PermutationFactor, DiagonalFactor, ButterflyFactor, BlockDiagFactor, SparseFactor>;

std::size_t factor_size(const Factor& f);
Cost factor_cost(const Factor& f);
DyadicMatrix factor_dense(const Factor& f);

// Product F_0 * F_1 * ... * F_{k-1}; apply() runs F_{k-1} first.
class FactoredTransform {
 public:
  // Every factor must have the same size; throws DimensionMismatch otherwise.
  explicit FactoredTransform(std::vector<Factor> factors);

  static FactoredTransform leaf(DyadicMatrix m, std::optional<Cost> declared, std::string label);

  std::size_t size() const noexcept { return size_; }
  std::span<const Factor> factors() const noexcept { return factors_; }

  Cost cost() const;
  DyadicMatrix dense() const;

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<DyadicRational> apply(std::span<const DyadicRational> x) const;

  // {"size", "cost": {"adds", "shifts"}, "factors": [...]}.
  std::string to_json(int indent = -1) const;

 private:
  template <class T>
  std::vector<T> apply_impl(std::span<const T> x) const;

  std::size_t size_ = 0;
  std::vector<Factor> factors_;
};

}  // namespace dctscale
