// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/shift.hpp"

#include <cmath>
#include <stdexcept>

#include "sphshift/numeric.hpp"

namespace sphshift {

Rational sphere_monomial_norm2(const MultiIndex& n) {
  const std::size_t m = n.arity();
  BigInt num = factorial(m - 1);
  for (auto c : n.components()) num *= factorial(c);
  return Rational(num, factorial(m - 1 + n.degree()));
}

SphericalShift::SphericalShift(std::size_t arity, ScalarSequence sequence)
    : arity_(arity), sequence_(std::move(sequence)) {
  if (arity_ == 0) throw std::invalid_argument("shift arity must be at least 1");
}

void SphericalShift::check(const MultiIndex& n) const {
  if (n.arity() != arity_) throw std::invalid_argument("multi-index arity does not match the shift");
}

double SphericalShift::weight(std::size_t axis, const MultiIndex& n) const {
  check(n);
  if (axis >= arity_) throw std::out_of_range("axis out of range");
  const double k = static_cast<double>(n.degree());
  return std::sqrt(sequence_.delta2(n.degree()) * (n[axis] + 1.0) / (k + static_cast<double>(arity_)));
}

std::optional<Rational> SphericalShift::weight2_exact(std::size_t axis, const MultiIndex& n) const {
  check(n);
  if (axis >= arity_) throw std::out_of_range("axis out of range");
  auto d2 = sequence_.delta2_exact(n.degree());
  if (!d2) return std::nullopt;
  return *d2 * Rational(n[axis] + 1, static_cast<long long>(n.degree() + arity_));
}

double SphericalShift::log_beta_norm(const MultiIndex& n) const {
  check(n);
  const double m = static_cast<double>(arity_);
  double log_sphere = std::lgamma(m) - std::lgamma(m + static_cast<double>(n.degree()));
  for (auto c : n.components()) log_sphere += std::lgamma(c + 1.0);
  return sequence_.log_bbeta(n.degree()) + 0.5 * log_sphere;
}

double SphericalShift::beta_norm(const MultiIndex& n) const { return std::exp(log_beta_norm(n)); }

double SphericalShift::log_q_diag(std::uint64_t level, unsigned power) const {
  long double log_sum = 0.0L;
  for (unsigned s = 0; s < power; ++s) log_sum += std::log(static_cast<long double>(sequence_.delta2(level + s)));
  return static_cast<double>(log_sum);
}

double SphericalShift::q_diag(std::uint64_t level, unsigned power) const { return std::exp(log_q_diag(level, power)); }

std::optional<Rational> SphericalShift::q_diag_exact(std::uint64_t level, unsigned power) const {
  if (!sequence_.has_exact()) return std::nullopt;
  Rational product = 1;
  for (unsigned s = 0; s < power; ++s) product *= *sequence_.delta2_exact(level + s);
  return product;
}

double SphericalShift::bq_diag(std::uint64_t level, unsigned order) const {
  if (order == 0) throw std::invalid_argument("B_q needs q >= 1");
  CompensatedSum acc;
  double coeff = 1.0;
  for (unsigned s = 0; s <= order; ++s) {
    const double term = coeff * q_diag(level, s);
    acc.add(s % 2 == 0 ? term : -term);
    coeff = coeff * (order - s) / (s + 1);
  }
  return acc.value();
}

std::optional<Rational> SphericalShift::bq_diag_exact(std::uint64_t level, unsigned order) const {
  if (order == 0) throw std::invalid_argument("B_q needs q >= 1");
  if (!sequence_.has_exact()) return std::nullopt;
  Rational acc = 0;
  Rational product = 1;  // Q^s eigenvalue, built incrementally
  BigInt coeff = 1;
  for (unsigned s = 0; s <= order; ++s) {
    if (s > 0) product *= *sequence_.delta2_exact(level + s - 1);
    if (s % 2 == 0) {
      acc += Rational(coeff) * product;
    } else {
      acc -= Rational(coeff) * product;
    }
    coeff = coeff * (order - s) / (s + 1);
  }
  return acc;
}

double SphericalShift::self_comm_coeff(std::size_t axis, const MultiIndex& n) const {
  check(n);
  if (axis >= arity_) throw std::out_of_range("axis out of range");
  const double k = static_cast<double>(n.degree());
  const double m = static_cast<double>(arity_);
  const double nj = n[axis];
  const double up = (nj + 1.0) * sequence_.delta2(n.degree()) / (k + m);
  if (n[axis] == 0) return up;
  return up - nj * sequence_.delta2(n.degree() - 1) / (k + m - 1.0);
}

std::optional<Rational> SphericalShift::self_comm_coeff_exact(std::size_t axis, const MultiIndex& n) const {
  check(n);
  if (axis >= arity_) throw std::out_of_range("axis out of range");
  if (!sequence_.has_exact()) return std::nullopt;
  const long long k = static_cast<long long>(n.degree());
  const long long m = static_cast<long long>(arity_);
  const long long nj = n[axis];
  Rational up = Rational(nj + 1, k + m) * *sequence_.delta2_exact(n.degree());
  if (nj == 0) return up;
  return up - Rational(nj, k + m - 1) * *sequence_.delta2_exact(n.degree() - 1);
}

double SphericalShift::cross_level_factor(std::uint64_t level) const {
  if (level == 0) throw std::invalid_argument("cross-commutator level factor needs k >= 1");
  const double k = static_cast<double>(level);
  const double m = static_cast<double>(arity_);
  if (auto a = sequence_.delta2_exact(level)) {
    // rational path avoids cancellation between the two nearly equal quotients
    const long long kk = static_cast<long long>(level);
    const long long mm = static_cast<long long>(arity_);
    const Rational diff = *a / Rational(kk + mm) - *sequence_.delta2_exact(level - 1) / Rational(kk + mm - 1);
    return to_double(diff);
  }
  return sequence_.delta2(level) / (k + m) - sequence_.delta2(level - 1) / (k + m - 1.0);
}

std::optional<CrossEntry> SphericalShift::cross_comm_coeff(std::size_t j, std::size_t l, const MultiIndex& n) const {
  check(n);
  if (j >= arity_ || l >= arity_) throw std::out_of_range("axis out of range");
  if (j == l) throw std::invalid_argument("cross-commutator needs distinct axes");
  if (n[j] == 0) return std::nullopt;
  const double scale = std::sqrt(static_cast<double>(n[j]) * (n[l] + 1.0));
  MultiIndex target = n.sub_unit(j)->add_unit(l);
  return CrossEntry{scale * cross_level_factor(n.degree()), std::move(target)};
}

}  // namespace sphshift
