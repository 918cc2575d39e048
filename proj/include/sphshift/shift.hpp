// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sphshift/exact.hpp"
#include "sphshift/multiindex.hpp"
#include "sphshift/scalarseq.hpp"

namespace sphshift {

/// Image of e_n under a cross-commutator [T_j^*, T_l], j != l: a multiple of
/// a single basis vector.
struct CrossEntry {
  double coefficient;
  MultiIndex target;
};

/// (sum over the unit sphere of |z^n|^2 d sigma) = (m-1)! n! / (m-1+|n|)!
Rational sphere_monomial_norm2(const MultiIndex& n);

/// Spherical m-variable weighted shift T_j e_n = w^{(j)}_n e_{n + e_j} with
///   w^{(j)}_n = delta_{|n|} sqrt((n_j + 1) / (|n| + m)).
/// Everything is a pure function of the scalar sequence.
class SphericalShift {
 public:
  SphericalShift(std::size_t arity, ScalarSequence sequence);

  std::size_t arity() const { return arity_; }
  const ScalarSequence& sequence() const { return sequence_; }

  double weight(std::size_t axis, const MultiIndex& n) const;
  /// (w^{(axis)}_n)^2, exact when the sequence is rational.
  std::optional<Rational> weight2_exact(std::size_t axis, const MultiIndex& n) const;

  /// beta_n = bbeta_{|n|} sqrt((m-1)! n! / (m-1+|n|)!)
  double beta_norm(const MultiIndex& n) const;
  double log_beta_norm(const MultiIndex& n) const;

  /// Eigenvalue of Q_T^s(I) on level k: delta^2_k ... delta^2_{k+s-1}.
  double q_diag(std::uint64_t level, unsigned power) const;
  double log_q_diag(std::uint64_t level, unsigned power) const;
  std::optional<Rational> q_diag_exact(std::uint64_t level, unsigned power) const;

  /// Eigenvalue of B_q(Q_T) = sum_s (-1)^s binom(q,s) Q_T^s(I) on level k.
  double bq_diag(std::uint64_t level, unsigned order) const;
  std::optional<Rational> bq_diag_exact(std::uint64_t level, unsigned order) const;

  /// Diagonal entry of [T_j^*, T_j] at e_n.
  double self_comm_coeff(std::size_t axis, const MultiIndex& n) const;
  std::optional<Rational> self_comm_coeff_exact(std::size_t axis, const MultiIndex& n) const;

  /// [T_j^*, T_l] e_n for j != l; nullopt when n_j = 0 (the zero map).
  std::optional<CrossEntry> cross_comm_coeff(std::size_t j, std::size_t l, const MultiIndex& n) const;

  /// delta^2_k / (k + m) - delta^2_{k-1} / (k + m - 1), the level factor shared by
  /// the cross-commutator coefficients (k >= 1).
  double cross_level_factor(std::uint64_t level) const;

 private:
  std::size_t arity_;
  ScalarSequence sequence_;

  void check(const MultiIndex& n) const;
};

}  // namespace sphshift
