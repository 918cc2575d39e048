// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sphshift {

/// Arbitrary-precision integer used for all combinatorial counts.
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational; the exact path of every sequence evaluation.
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(std::uint64_t n);
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Parses "3", "-2", "7/4", "1.25", "2.5e-3" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);
double to_double(const BigInt& value);

/// ln(value) for a strictly positive rational, accurate even when the
/// numerator or denominator overflows a double.
double log_of(const Rational& value);

std::string to_string(const Rational& value);

Rational pow(const Rational& base, std::uint64_t exponent);

}  // namespace sphshift
