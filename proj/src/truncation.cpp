// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Sparse>

namespace sphshift {

TruncationBasis::TruncationBasis(std::size_t arity, unsigned max_degree) : arity_(arity), max_degree_(max_degree) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  for (unsigned k = 0; k <= max_degree; ++k) {
    offsets_.push_back(indices_.size());
    Level level(arity, k);
    indices_.insert(indices_.end(), level.begin(), level.end());
  }
}

std::size_t TruncationBasis::index_of(const MultiIndex& n) const {
  if (n.arity() != arity_) throw std::invalid_argument("multi-index arity does not match the basis");
  if (n.degree() > max_degree_) throw std::out_of_range("multi-index beyond the truncation degree");
  return offsets_[n.degree()] + rank_in_level(n);
}

DenseOperator build_shift_matrix(const SphericalShift& shift, std::size_t axis, const TruncationBasis& basis) {
  if (axis >= shift.arity()) throw std::out_of_range("axis out of range");
  if (basis.arity() != shift.arity()) throw std::invalid_argument("basis arity does not match the shift");
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  DenseOperator out{Eigen::MatrixXd::Zero(dim, dim), "T_" + std::to_string(axis + 1)};
  for (std::size_t col = 0; col < basis.dimension(); ++col) {
    const MultiIndex& n = basis.at(col);
    if (n.degree() >= basis.max_degree()) continue;
    const std::size_t row = basis.index_of(n.add_unit(axis));
    out.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = shift.weight(axis, n);
  }
  return out;
}

std::vector<DenseOperator> build_tuple(const SphericalShift& shift, const TruncationBasis& basis) {
  std::vector<DenseOperator> tuple;
  for (std::size_t j = 0; j < shift.arity(); ++j) tuple.push_back(build_shift_matrix(shift, j, basis));
  return tuple;
}

DenseOperator build_associated_shift_matrix(const ScalarSequence& sequence, unsigned max_degree) {
  const auto dim = static_cast<Eigen::Index>(max_degree) + 1;
  DenseOperator out{Eigen::MatrixXd::Zero(dim, dim), "T_delta"};
  for (Eigen::Index k = 0; k + 1 < dim; ++k) out.matrix(k + 1, k) = std::sqrt(sequence.delta2(static_cast<std::uint64_t>(k)));
  return out;
}

DenseOperator adjoint(const DenseOperator& a) { return {a.matrix.transpose(), a.provenance + "^*"}; }

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols() || a.matrix.rows() != a.matrix.cols())
    throw std::invalid_argument("commutator of operators with mismatched dimensions");
  return {a.matrix * b.matrix - b.matrix * a.matrix, "[" + a.provenance + ", " + b.provenance + "]"};
}

DenseOperator q_power_bruteforce(const std::vector<DenseOperator>& tuple, unsigned power) {
  if (tuple.empty()) throw std::invalid_argument("empty operator tuple");
  const Eigen::Index dim = tuple.front().matrix.rows();
  DenseOperator out{Eigen::MatrixXd::Zero(dim, dim), "Q^" + std::to_string(power)};
  // products of shift matrices stay one-entry-per-column; multiply them sparsely
  std::vector<Eigen::SparseMatrix<double>> sparse;
  for (const auto& t : tuple) sparse.push_back(t.matrix.sparseView());
  const Level level(tuple.size(), power);
  for (const MultiIndex& alpha : level) {
    Eigen::SparseMatrix<double> t_alpha(dim, dim);
    t_alpha.setIdentity();
    for (std::size_t j = 0; j < alpha.arity(); ++j) {
      for (std::uint32_t r = 0; r < alpha[j]; ++r) t_alpha = (sparse[j] * t_alpha).pruned();
    }
    const Eigen::SparseMatrix<double> gram = Eigen::SparseMatrix<double>(t_alpha.transpose()) * t_alpha;
    out.matrix += to_double(multinomial(alpha)) * Eigen::MatrixXd(gram);
  }
  return out;
}

DenseOperator bq_bruteforce(const std::vector<DenseOperator>& tuple, unsigned order) {
  if (tuple.empty()) throw std::invalid_argument("empty operator tuple");
  const Eigen::Index dim = tuple.front().matrix.rows();
  DenseOperator out{Eigen::MatrixXd::Zero(dim, dim), "B_" + std::to_string(order)};
  for (unsigned s = 0; s <= order; ++s) {
    const double c = to_double(binomial(order, s));
    out.matrix += (s % 2 == 0 ? c : -c) * q_power_bruteforce(tuple, s).matrix;
  }
  return out;
}

DenseOperator restrict_columns(const DenseOperator& a, const TruncationBasis& basis, unsigned max_degree) {
  if (static_cast<std::size_t>(a.matrix.cols()) != basis.dimension())
    throw std::invalid_argument("operator does not live on this basis");
  DenseOperator out = a;
  for (std::size_t col = 0; col < basis.dimension(); ++col) {
    if (basis.at(col).degree() > max_degree) out.matrix.col(static_cast<Eigen::Index>(col)).setZero();
  }
  out.provenance += "|deg<=" + std::to_string(max_degree);
  return out;
}

unsigned OracleKind::required_margin() const {
  switch (type) {
    case Type::self_comm:
    case Type::cross_comm:
      return 1;
    case Type::q_power:
    case Type::bq:
      return order;
  }
  return 1;
}

std::string OracleKind::label() const {
  switch (type) {
    case Type::self_comm:
      return "self_comm(" + std::to_string(j + 1) + ")";
    case Type::cross_comm:
      return "cross_comm(" + std::to_string(j + 1) + "," + std::to_string(l + 1) + ")";
    case Type::q_power:
      return "q_power(" + std::to_string(order) + ")";
    case Type::bq:
      return "bq(" + std::to_string(order) + ")";
  }
  return "?";
}

OracleSuite::OracleSuite(const SphericalShift& shift, unsigned max_degree)
    : shift_(shift), basis_(shift.arity(), max_degree), tuple_(build_tuple(shift, basis_)) {}

const DenseOperator& OracleSuite::q_power(unsigned power) {
  while (q_powers_.size() <= power) q_powers_.push_back(q_power_bruteforce(tuple_, static_cast<unsigned>(q_powers_.size())));
  return q_powers_[power];
}

const DenseOperator& OracleSuite::build(const OracleKind& kind) {
  const std::string key = kind.label();
  if (auto it = built_.find(key); it != built_.end()) return it->second;
  const std::size_t m = shift_.arity();
  if ((kind.type == OracleKind::Type::self_comm || kind.type == OracleKind::Type::cross_comm) && kind.j >= m)
    throw std::out_of_range("axis out of range");
  if (kind.type == OracleKind::Type::cross_comm && (kind.l >= m || kind.l == kind.j))
    throw std::invalid_argument("cross_comm needs two distinct axes");
  DenseOperator op;
  switch (kind.type) {
    case OracleKind::Type::self_comm:
      op = commutator(adjoint(tuple_[kind.j]), tuple_[kind.j]);
      break;
    case OracleKind::Type::cross_comm:
      op = commutator(adjoint(tuple_[kind.j]), tuple_[kind.l]);
      break;
    case OracleKind::Type::q_power:
      op = q_power(kind.order);
      break;
    case OracleKind::Type::bq: {
      const auto dim = static_cast<Eigen::Index>(basis_.dimension());
      op = DenseOperator{Eigen::MatrixXd::Zero(dim, dim), "B_" + std::to_string(kind.order)};
      for (unsigned s = 0; s <= kind.order; ++s) {
        const double c = to_double(binomial(kind.order, s));
        op.matrix += (s % 2 == 0 ? c : -c) * q_power(s).matrix;
      }
      break;
    }
  }
  return built_.emplace(key, std::move(op)).first->second;
}

OracleComparison OracleSuite::compare(const OracleKind& kind, unsigned margin) {
  const unsigned max_degree = basis_.max_degree();
  if (margin < kind.required_margin())
    throw MarginError(kind.label() + " needs margin >= " + std::to_string(kind.required_margin()) + ", got " +
                      std::to_string(margin));
  if (margin > max_degree) throw MarginError("margin exceeds the truncation degree");
  const DenseOperator& op = build(kind);

  OracleComparison result;
  const auto dim = static_cast<Eigen::Index>(basis_.dimension());
  Eigen::VectorXd expected(dim);
  for (std::size_t col = 0; col < basis_.dimension(); ++col) {
    const MultiIndex& n = basis_.at(col);
    if (n.degree() + margin > max_degree) continue;
    expected.setZero();
    switch (kind.type) {
      case OracleKind::Type::self_comm:
        expected(static_cast<Eigen::Index>(col)) = shift_.self_comm_coeff(kind.j, n);
        break;
      case OracleKind::Type::cross_comm:
        if (auto entry = shift_.cross_comm_coeff(kind.j, kind.l, n))
          expected(static_cast<Eigen::Index>(basis_.index_of(entry->target))) = entry->coefficient;
        break;
      case OracleKind::Type::q_power:
        expected(static_cast<Eigen::Index>(col)) = shift_.q_diag(n.degree(), kind.order);
        break;
      case OracleKind::Type::bq:
        expected(static_cast<Eigen::Index>(col)) = shift_.bq_diag(n.degree(), kind.order);
        break;
    }
    const double dev = (op.matrix.col(static_cast<Eigen::Index>(col)) - expected).cwiseAbs().maxCoeff();
    result.max_deviation = std::max(result.max_deviation, dev);
    ++result.compared_columns;
  }
  return result;
}

OracleComparison compare_with_closed_form(const SphericalShift& shift, const OracleKind& kind, unsigned max_degree,
                                          unsigned margin) {
  OracleSuite suite(shift, max_degree);
  return suite.compare(kind, margin);
}

std::vector<double> gram_diagonal_singular_values(const DenseOperator& c, double tolerance) {
  const Eigen::MatrixXd gram = c.matrix.transpose() * c.matrix;
  const Eigen::Index dim = gram.rows();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (i != j && std::abs(gram(i, j)) > tolerance)
        throw StructureError("C^*C of " + c.provenance + " is not diagonal: entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") = " + std::to_string(gram(i, j)));
    }
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) values.push_back(std::sqrt(std::max(0.0, gram(i, i))));
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

}  // namespace sphshift
