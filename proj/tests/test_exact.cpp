// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "generators.hpp"
#include "sphshift/exact.hpp"

using namespace sphshift;

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(factorial(25) == BigInt("15511210043330985984000000"));
  CHECK(binomial(8, 2) == 28);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("binomial satisfies Pascal's rule") {
  auto g = testing::engine(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = testing::uniform(g, 1, 120);
    const auto k = testing::uniform(g, 1, n);
    CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2") == -2);
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational(" 3/2 ") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("."), std::invalid_argument);
}

TEST_CASE("to_string round-trips through parse_rational") {
  auto g = testing::engine(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational x = testing::positive_rational(g, 1000) - testing::positive_rational(g, 1000);
    CHECK(parse_rational(to_string(x)) == x);
  }
}

TEST_CASE("log_of survives values outside double range") {
  const Rational huge = pow(Rational(3, 2), 4000);
  CHECK(log_of(huge) == doctest::Approx(4000 * std::log(1.5)).epsilon(1e-12));
  CHECK(log_of(1 / huge) == doctest::Approx(-4000 * std::log(1.5)).epsilon(1e-12));
  CHECK(log_of(Rational(1)) == 0.0);
  CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pow") {
  CHECK(pow(Rational(2, 3), 0) == 1);
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow(Rational(-1), 5) == -1);
}
