// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/multiindex.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sphshift {

namespace {

std::size_t checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  __extension__ using Wide = unsigned __int128;
  Wide result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::size_t>::max())
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
  }
  return static_cast<std::size_t>(result);
}

// number of n in N^arity with |n| = degree
std::size_t count(std::size_t arity, std::uint64_t degree) {
  if (arity == 0) return degree == 0 ? 1 : 0;
  return checked_binomial(degree + arity - 1, arity - 1);
}

}  // namespace

MultiIndex::MultiIndex(std::vector<std::uint32_t> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("multi-index arity must be at least 1");
  degree_ = std::accumulate(components_.begin(), components_.end(), std::uint64_t{0});
}

MultiIndex::MultiIndex(std::initializer_list<std::uint32_t> components)
    : MultiIndex(std::vector<std::uint32_t>(components)) {}

MultiIndex MultiIndex::zero(std::size_t arity) { return MultiIndex(std::vector<std::uint32_t>(arity, 0)); }

MultiIndex MultiIndex::add_unit(std::size_t axis) const {
  if (axis >= arity()) throw std::out_of_range("axis out of range");
  MultiIndex out = *this;
  ++out.components_[axis];
  ++out.degree_;
  return out;
}

std::optional<MultiIndex> MultiIndex::sub_unit(std::size_t axis) const {
  if (axis >= arity()) throw std::out_of_range("axis out of range");
  if (components_[axis] == 0) return std::nullopt;
  MultiIndex out = *this;
  --out.components_[axis];
  --out.degree_;
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& n) {
  os << '(';
  for (std::size_t i = 0; i < n.arity(); ++i) os << (i ? "," : "") << n[i];
  return os << ')';
}

BigInt level_count(std::size_t arity, std::uint64_t degree) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  return binomial(degree + arity - 1, arity - 1);
}

std::size_t level_size(std::size_t arity, std::uint64_t degree) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  return count(arity, degree);
}

BigInt multinomial(const MultiIndex& alpha) {
  BigInt result = factorial(alpha.degree());
  for (auto a : alpha.components()) result /= factorial(a);
  return result;
}

// Graded reverse lex, largest first: a level is ordered by the last component
// ascending, ties broken recursively on the leading components.
std::size_t rank_in_level(const MultiIndex& n) {
  std::size_t rank = 0;
  std::uint64_t remaining = n.degree();
  for (std::size_t axis = n.arity() - 1; axis >= 1; --axis) {
    const std::uint64_t t = n[axis];
    // sum_{s < t} count(axis, remaining - s), by the hockey-stick identity
    rank += checked_binomial(remaining + axis, axis) - checked_binomial(remaining - t + axis, axis);
    remaining -= t;
  }
  return rank;
}

MultiIndex unrank_in_level(std::size_t arity, std::uint64_t degree, std::size_t rank) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  if (rank >= count(arity, degree)) throw std::out_of_range("rank outside level");
  std::vector<std::uint32_t> components(arity, 0);
  std::uint64_t remaining = degree;
  for (std::size_t axis = arity - 1; axis >= 1; --axis) {
    std::uint64_t t = 0;
    for (;; ++t) {
      const std::size_t block = count(axis, remaining - t);
      if (rank < block) break;
      rank -= block;
    }
    components[axis] = static_cast<std::uint32_t>(t);
    remaining -= t;
  }
  components[0] = static_cast<std::uint32_t>(remaining);
  return MultiIndex(std::move(components));
}

Level::Level(std::size_t arity, std::uint64_t degree) : arity_(arity), degree_(degree) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  const std::size_t size = count(arity, degree);
  indices_.reserve(size);
  // walk the order directly: odometer over the trailing components, last one slowest
  std::vector<std::uint32_t> tail(arity, 0);
  while (true) {
    std::uint64_t used = 0;
    for (std::size_t a = 1; a < arity; ++a) used += tail[a];
    if (used <= degree) {
      std::vector<std::uint32_t> c = tail;
      c[0] = static_cast<std::uint32_t>(degree - used);
      indices_.emplace_back(std::move(c));
    }
    std::size_t a = 1;
    while (a < arity) {
      ++tail[a];
      std::uint64_t s = 0;
      for (std::size_t b = a; b < arity; ++b) s += tail[b];
      if (s <= degree) break;
      tail[a] = 0;
      ++a;
    }
    if (a >= arity) break;
  }
}

std::size_t Level::rank(const MultiIndex& n) const {
  if (n.arity() != arity_ || n.degree() != degree_) throw std::invalid_argument("multi-index not in this level");
  return rank_in_level(n);
}

}  // namespace sphshift
