// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

#include "sphshift/exact.hpp"

namespace sphshift {

/// An element n = (n_1, ..., n_m) of N^m. Axes are zero-based throughout the
/// library: axis j addresses the component n_{j+1}.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<std::uint32_t> components);
  MultiIndex(std::initializer_list<std::uint32_t> components);

  static MultiIndex zero(std::size_t arity);

  std::size_t arity() const { return components_.size(); }
  std::uint64_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t axis) const { return components_[axis]; }
  const std::vector<std::uint32_t>& components() const { return components_; }

  /// n + e_axis
  MultiIndex add_unit(std::size_t axis) const;
  /// n - e_axis, or nullopt when n_axis == 0
  std::optional<MultiIndex> sub_unit(std::size_t axis) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.components_ <=> b.components_;
  }

 private:
  std::vector<std::uint32_t> components_;
  std::uint64_t degree_ = 0;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& n);

/// binom(k + m - 1, m - 1), the number of n in N^m with |n| = k.
BigInt level_count(std::size_t arity, std::uint64_t degree);

/// level_count as a machine integer; throws std::overflow_error if it does not fit.
std::size_t level_size(std::size_t arity, std::uint64_t degree);

/// |alpha|! / (alpha_1! ... alpha_m!)
BigInt multinomial(const MultiIndex& alpha);

/// Position of n inside its level under the graded reverse lexicographic
/// order (largest first). O(m) and independent of level enumeration.
std::size_t rank_in_level(const MultiIndex& n);

/// Inverse of rank_in_level.
MultiIndex unrank_in_level(std::size_t arity, std::uint64_t degree, std::size_t rank);

/// All n in N^m with |n| = k in graded reverse lexicographic order.
class Level {
 public:
  Level(std::size_t arity, std::uint64_t degree);

  std::size_t arity() const { return arity_; }
  std::uint64_t degree() const { return degree_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  std::size_t rank(const MultiIndex& n) const;
  const MultiIndex& unrank(std::size_t rank) const { return indices_.at(rank); }

 private:
  std::size_t arity_;
  std::uint64_t degree_;
  std::vector<MultiIndex> indices_;
};

inline Level enumerate_level(std::size_t arity, std::uint64_t degree) { return Level(arity, degree); }

}  // namespace sphshift
