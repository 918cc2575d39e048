// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/scalarseq.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sphshift/numeric.hpp"

namespace sphshift {

struct ScalarSequence::LogCache {
  std::mutex mutex;
  // prefix[k] = sum_{i<k} ln delta_i^2 = 2 log bbeta_k, Neumaier-compensated
  std::vector<long double> prefix{0.0L};
  long double sum = 0.0L;
  long double carry = 0.0L;
};

ScalarSequence::ScalarSequence(std::string name, Delta2Fn delta2, ExactFn exact, SequenceTraits traits,
                               std::optional<std::uint64_t> domain_end)
    : name_(std::move(name)),
      delta2_(std::move(delta2)),
      exact_(std::move(exact)),
      traits_(std::move(traits)),
      domain_end_(domain_end),
      cache_(std::make_shared<LogCache>()) {
  if (!delta2_) throw std::invalid_argument("sequence '" + name_ + "' has no delta^2 evaluator");
}

void ScalarSequence::check_domain(std::uint64_t k) const {
  if (domain_end_ && k >= *domain_end_)
    throw OutOfRangeError("sequence '" + name_ + "' is tabulated only for k < " + std::to_string(*domain_end_) +
                          " (requested k = " + std::to_string(k) + "); supply a tail rule to extend it");
}

double ScalarSequence::delta2(std::uint64_t k) const {
  check_domain(k);
  const double v = delta2_(k);
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error("sequence '" + name_ + "' has non-positive delta^2 at k = " + std::to_string(k));
  return v;
}

std::optional<Rational> ScalarSequence::delta2_exact(std::uint64_t k) const {
  if (!exact_) return std::nullopt;
  check_domain(k);
  Rational v = exact_(k);
  if (v <= 0) throw std::domain_error("sequence '" + name_ + "' has non-positive delta^2 at k = " + std::to_string(k));
  return v;
}

long double ScalarSequence::log_bbeta_extended(std::uint64_t k) const {
  std::lock_guard lock(cache_->mutex);
  auto& prefix = cache_->prefix;
  while (prefix.size() <= k) {
    const std::uint64_t i = prefix.size() - 1;
    const long double term = std::log(static_cast<long double>(delta2(i)));
    long double& sum = cache_->sum;
    const long double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      cache_->carry += (sum - t) + term;
    } else {
      cache_->carry += (term - t) + sum;
    }
    sum = t;
    prefix.push_back(sum + cache_->carry);
  }
  return prefix[k] / 2.0L;
}

double ScalarSequence::log_bbeta(std::uint64_t k) const { return static_cast<double>(log_bbeta_extended(k)); }

std::vector<double> ScalarSequence::log_bbeta_table(std::uint64_t count) const {
  std::vector<double> out;
  if (count == 0) return out;
  log_bbeta_extended(count - 1);
  std::lock_guard lock(cache_->mutex);
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(static_cast<double>(cache_->prefix[k] / 2.0L));
  return out;
}

double ScalarSequence::gamma(std::uint64_t k) const {
  return static_cast<double>(std::exp(2.0L * log_bbeta_extended(k)));
}

std::optional<Rational> ScalarSequence::gamma_exact(std::uint64_t k) const {
  if (!exact_) return std::nullopt;
  Rational g = 1;
  for (std::uint64_t i = 0; i < k; ++i) g *= *delta2_exact(i);
  return g;
}

std::vector<Rational> ScalarSequence::gamma_exact_table(std::uint64_t count) const {
  std::vector<Rational> out;
  if (!exact_ || count == 0) return out;
  out.reserve(count);
  out.emplace_back(1);
  for (std::uint64_t k = 1; k < count; ++k) out.push_back(out.back() * *delta2_exact(k - 1));
  return out;
}

Rational forward_difference(const std::vector<Rational>& f, std::uint64_t k, unsigned q) {
  if (k + q >= f.size()) throw std::out_of_range("forward difference needs f up to index k + q");
  Rational acc = 0;
  BigInt coeff = 1;  // binom(q, s)
  for (unsigned s = 0; s <= q; ++s) {
    if ((q - s) % 2 == 0) {
      acc += Rational(coeff) * f[k + s];
    } else {
      acc -= Rational(coeff) * f[k + s];
    }
    coeff = coeff * (q - s) / (s + 1);
  }
  return acc;
}

double ScalarSequence::nabla_gamma(std::uint64_t k, unsigned q) const {
  CompensatedSum acc;
  double coeff = 1.0;
  for (unsigned s = 0; s <= q; ++s) {
    const double term = coeff * gamma(k + s);
    acc.add((q - s) % 2 == 0 ? term : -term);
    coeff = coeff * (q - s) / (s + 1);
  }
  return acc.value();
}

std::optional<Rational> ScalarSequence::nabla_gamma_exact(std::uint64_t k, unsigned q) const {
  if (!exact_) return std::nullopt;
  std::vector<Rational> table = gamma_exact_table(k + q + 1);
  return forward_difference(table, k, q);
}

double ScalarSequence::kernel_coefficient(std::uint64_t k, std::size_t arity) const {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  return composition_count(k, arity) * static_cast<double>(std::exp(-2.0L * log_bbeta_extended(k)));
}

BoundedVerdict ScalarSequence::is_bounded(std::uint64_t horizon) const {
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  BoundedVerdict verdict;
  if (traits_.sup_delta2) {
    verdict.status = BoundedStatus::family_declared;
    verdict.sup_delta2 = to_double(*traits_.sup_delta2);
    verdict.horizon = 0;
    return verdict;
  }
  std::uint64_t end = horizon;
  if (domain_end_) end = std::min(end, *domain_end_);
  double first_half = 0.0;
  double second_half = 0.0;
  for (std::uint64_t k = 0; k < end; ++k) {
    double& slot = k < end / 2 ? first_half : second_half;
    slot = std::max(slot, delta2(k));
  }
  verdict.sup_delta2 = std::max(first_half, second_half);
  verdict.horizon = end;
  verdict.status = second_half <= first_half || domain_end_ ? BoundedStatus::yes : BoundedStatus::no_evidence;
  return verdict;
}

ScalarSequence ScalarSequence::scaled(const Rational& factor) const {
  if (factor <= 0) throw std::invalid_argument("scaling factor must be positive");
  const double f = to_double(factor);
  Delta2Fn d = [inner = delta2_, f](std::uint64_t k) { return f * inner(k); };
  ExactFn e;
  if (exact_) e = [inner = exact_, factor](std::uint64_t k) { return Rational(factor * inner(k)); };
  SequenceTraits t = traits_;
  auto scale = [f](std::optional<double>& v) {
    if (v) *v *= f;
  };
  scale(t.limit_delta2);
  scale(t.liminf_delta2);
  scale(t.limsup_delta2);
  scale(t.first_order);
  if (t.sup_delta2) *t.sup_delta2 *= factor;
  if (t.jumps) {
    auto inner = t.jumps->log2_magnitude;
    const double shift = std::log2(f);
    t.jumps->log2_magnitude = [inner, shift](int l) { return inner(l) + shift; };
  }
  return ScalarSequence(name_ + "*" + to_string(factor), std::move(d), std::move(e), std::move(t), domain_end_);
}

}  // namespace sphshift
