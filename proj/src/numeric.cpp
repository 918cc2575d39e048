// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace sphshift {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

double composition_count(std::uint64_t total, std::uint64_t parts) {
  if (parts == 0) return total == 0 ? 1.0 : 0.0;
  // binom(total + parts - 1, parts - 1) with the smaller of the two factors looped
  const std::uint64_t n = total + parts - 1;
  std::uint64_t k = parts - 1;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i);
    result /= static_cast<double>(i);
  }
  // every partial product is itself a binomial coefficient, so rounding is exact below 2^53
  return result < 9.0e15 ? std::round(result) : result;
}

double linear_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t count = std::min(x.size(), y.size());
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_slope(lx, ly);
}

double extrapolate_limit(std::span<const double> j, std::span<const double> a) {
  const std::size_t rows = std::min(j.size(), a.size());
  constexpr int cols = 4;
  if (rows < static_cast<std::size_t>(cols) + 2) return std::numeric_limits<double>::quiet_NaN();
  Eigen::MatrixXd design(static_cast<Eigen::Index>(rows), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const double x = j[r];
    const auto i = static_cast<Eigen::Index>(r);
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x) / x;
    design(i, 2) = 1.0 / x;
    design(i, 3) = 1.0 / (x * x);
    rhs(i) = a[r];
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);
  return coeffs(0);
}

}  // namespace sphshift
