// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sphshift/multiindex.hpp"
#include "sphshift/shift.hpp"

namespace sphshift {

/// Orthonormal basis {e_n : |n| <= N}: levels 0..N concatenated, graded
/// reverse lexicographic inside each level.
class TruncationBasis {
 public:
  TruncationBasis(std::size_t arity, unsigned max_degree);

  std::size_t arity() const { return arity_; }
  unsigned max_degree() const { return max_degree_; }
  std::size_t dimension() const { return indices_.size(); }

  std::size_t index_of(const MultiIndex& n) const;
  const MultiIndex& at(std::size_t index) const { return indices_.at(index); }
  /// First row of level k.
  std::size_t level_offset(unsigned degree) const { return offsets_.at(degree); }

 private:
  std::size_t arity_;
  unsigned max_degree_;
  std::vector<std::size_t> offsets_;
  std::vector<MultiIndex> indices_;
};

/// Dense real matrix over a truncation basis, tagged with how it was built.
struct DenseOperator {
  Eigen::MatrixXd matrix;
  std::string provenance;

  Eigen::Index dimension() const { return matrix.rows(); }
};

/// T_axis on span{e_n : |n| <= N}; columns at level N map to zero.
DenseOperator build_shift_matrix(const SphericalShift& shift, std::size_t axis, const TruncationBasis& basis);

/// All m shift matrices.
std::vector<DenseOperator> build_tuple(const SphericalShift& shift, const TruncationBasis& basis);

/// One-variable shift T_delta on span{f_0, ..., f_N}.
DenseOperator build_associated_shift_matrix(const ScalarSequence& sequence, unsigned max_degree);

DenseOperator adjoint(const DenseOperator& a);

/// AB - BA; throws std::invalid_argument on dimension mismatch.
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

/// Q_T^k(I) = sum_{|alpha| = k} k!/alpha! (T^alpha)^* T^alpha, assembled from the matrices.
DenseOperator q_power_bruteforce(const std::vector<DenseOperator>& tuple, unsigned power);

/// B_q(Q_T) = sum_s (-1)^s binom(q,s) Q_T^s(I), from q_power_bruteforce.
DenseOperator bq_bruteforce(const std::vector<DenseOperator>& tuple, unsigned order);

/// Zeroes every column whose basis index has degree above `max_degree`.
DenseOperator restrict_columns(const DenseOperator& a, const TruncationBasis& basis, unsigned max_degree);

struct OracleKind {
  enum class Type { self_comm, cross_comm, q_power, bq };
  Type type = Type::self_comm;
  std::size_t j = 0;      ///< axis (self_comm, cross_comm)
  std::size_t l = 0;      ///< second axis (cross_comm)
  unsigned order = 1;     ///< power k (q_power) or q (bq)

  /// Smallest margin keeping every compared column clear of the truncation.
  unsigned required_margin() const;
  std::string label() const;
};

/// The requested margin cannot keep truncation effects out of the compared entries.
class MarginError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleComparison {
  double max_deviation = 0.0;
  std::size_t compared_columns = 0;
};

/// Matrix-built operators for one shift on one truncation, with the Q_T^k
/// powers cached so that several oracle kinds can share them.
class OracleSuite {
 public:
  OracleSuite(const SphericalShift& shift, unsigned max_degree);

  const TruncationBasis& basis() const { return basis_; }
  const std::vector<DenseOperator>& tuple() const { return tuple_; }

  /// Matrix-built operator of the given kind, cached per kind.
  const DenseOperator& build(const OracleKind& kind);

  /// Max over columns n with |n| <= N - margin of the absolute difference between
  /// the matrix-built operator and the closed-form column.
  OracleComparison compare(const OracleKind& kind, unsigned margin);

 private:
  const SphericalShift& shift_;
  TruncationBasis basis_;
  std::vector<DenseOperator> tuple_;
  std::vector<DenseOperator> q_powers_;
  std::map<std::string, DenseOperator> built_;

  const DenseOperator& q_power(unsigned power);
};

OracleComparison compare_with_closed_form(const SphericalShift& shift, const OracleKind& kind, unsigned max_degree,
                                          unsigned margin);

/// Thrown when C^*C is not diagonal, i.e. C is not of weighted-shift type.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular values of C read off the diagonal of C^*C, sorted descending.
/// Requires |off-diagonal of C^*C| <= tolerance.
std::vector<double> gram_diagonal_singular_values(const DenseOperator& c, double tolerance = 1e-10);

}  // namespace sphshift
