// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sphshift {

/// Neumaier-compensated running sum. Summation order is the call order.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Number of ways to write `total` as an ordered sum of `parts` non-negative
/// integers, binom(total + parts - 1, parts - 1), in floating point.
/// parts == 0 gives 1 for total == 0 and 0 otherwise.
double composition_count(std::uint64_t total, std::uint64_t parts);

/// Least-squares slope of y against x (centred). NaN for fewer than two
/// points or constant x.
double linear_slope(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of ln(y) against ln(x). Points with y <= 0 are skipped;
/// returns NaN when fewer than two usable points remain.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Fits a_j = c0 + c1 ln(j)/j + c2/j + c3/j^2 over the given (j, a_j) pairs
/// and returns c0, the j -> infinity limit. Returns NaN when underdetermined.
double extrapolate_limit(std::span<const double> j, std::span<const double> a);

}  // namespace sphshift
