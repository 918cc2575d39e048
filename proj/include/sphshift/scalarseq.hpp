// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphshift/exact.hpp"

namespace sphshift {

/// Raised when a sequence is evaluated outside the range it is defined on
/// (a tabulated sequence without a tail rule).
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class Monotonicity { nondecreasing, nonincreasing, constant };

/// Sparse jumps of delta^2: the differences delta^2_k - delta^2_{k-1} vanish
/// except at positions k_l (l >= first_level) where they have magnitude h_l.
/// Both are given as base-2 logarithms so that levels far beyond any sampling
/// horizon can be evaluated.
struct LacunaryJumps {
  int first_level = 0;
  std::function<double(int)> log2_position;
  std::function<double(int)> log2_magnitude;
};

/// Facts a family knows about itself analytically. Anything left empty is
/// estimated by sampling and labelled as such.
struct SequenceTraits {
  std::optional<double> limit_delta2;          ///< lim delta^2_k
  std::optional<double> liminf_delta2;         ///< only meaningful without a limit
  std::optional<double> limsup_delta2;
  std::optional<double> first_order;           ///< c in delta^2_k = L + c/k + O(1/k^2)
  bool differences_second_order = false;       ///< |delta^2_k - delta^2_{k-1}| = O(1/k^2)
  std::optional<Rational> sup_delta2;          ///< sup_k delta^2_k, exact
  std::optional<Monotonicity> monotonicity;    ///< of delta_k
  std::optional<bool> essentially_normal;      ///< delta^2_k - delta^2_{k-1} -> 0
  std::optional<LacunaryJumps> jumps;
};

enum class BoundedStatus {
  family_declared,  ///< sup delta pinned by the family
  yes,              ///< sampled: the running sup stopped growing before the horizon
  no_evidence,      ///< sampled: still growing at the horizon
};

struct BoundedVerdict {
  BoundedStatus status = BoundedStatus::no_evidence;
  double sup_delta2 = 0.0;  ///< declared, or max over the sampled range
  std::uint64_t horizon = 0;
};

/// One-variable data of a spherical shift, stored through delta_k^2 with
/// the normalisation bbeta_0 = 1:
///   log bbeta_k = 1/2 sum_{i<k} ln delta_i^2,   gamma_k = bbeta_k^2.
///
/// Immutable. Copies share an internally synchronised prefix cache of
/// log bbeta; cached values never depend on evaluation order.
class ScalarSequence {
 public:
  using Delta2Fn = std::function<double(std::uint64_t)>;
  using ExactFn = std::function<Rational(std::uint64_t)>;

  /// `domain_end`, when set, is one past the last k at which delta2 is defined.
  ScalarSequence(std::string name, Delta2Fn delta2, ExactFn exact, SequenceTraits traits,
                 std::optional<std::uint64_t> domain_end = std::nullopt);

  const std::string& name() const { return name_; }
  const SequenceTraits& traits() const { return traits_; }
  bool has_exact() const { return static_cast<bool>(exact_); }
  std::optional<std::uint64_t> domain_end() const { return domain_end_; }

  double delta2(std::uint64_t k) const;
  std::optional<Rational> delta2_exact(std::uint64_t k) const;

  double log_bbeta(std::uint64_t k) const;
  /// log bbeta_0 .. log bbeta_{count-1}
  std::vector<double> log_bbeta_table(std::uint64_t count) const;
  double gamma(std::uint64_t k) const;
  std::optional<Rational> gamma_exact(std::uint64_t k) const;

  /// gamma_0 .. gamma_{count-1} exactly; empty when the family is not rational.
  std::vector<Rational> gamma_exact_table(std::uint64_t count) const;

  /// q-th forward difference of gamma at k.
  double nabla_gamma(std::uint64_t k, unsigned q) const;
  std::optional<Rational> nabla_gamma_exact(std::uint64_t k, unsigned q) const;

  /// Coefficient a_k of the kernel expansion, binom(m-1+k, k) / gamma_k.
  double kernel_coefficient(std::uint64_t k, std::size_t arity) const;

  BoundedVerdict is_bounded(std::uint64_t horizon) const;

  /// The sequence with delta^2 multiplied by `factor` (delta scaled by sqrt(factor)).
  ScalarSequence scaled(const Rational& factor) const;

 private:
  struct LogCache;

  std::string name_;
  Delta2Fn delta2_;
  ExactFn exact_;
  SequenceTraits traits_;
  std::optional<std::uint64_t> domain_end_;
  std::shared_ptr<LogCache> cache_;

  long double log_bbeta_extended(std::uint64_t k) const;
  void check_domain(std::uint64_t k) const;
};

/// q-th forward difference of a table, sum_s (-1)^{q-s} binom(q,s) f_{k+s}.
Rational forward_difference(const std::vector<Rational>& f, std::uint64_t k, unsigned q);

}  // namespace sphshift
