// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "sphshift/families.hpp"
#include "sphshift/scalarseq.hpp"

using namespace sphshift;

namespace {

ScalarSequence hp(std::size_t m, Rational p) { return make_sequence(HpSpace{m, p}); }

}  // namespace

TEST_CASE("H_p delta^2") {
  const auto szego = hp(2, 2);
  for (std::uint64_t k : {0u, 1u, 7u, 1000u}) CHECK(szego.delta2_exact(k) == 1);
  CHECK(hp(2, 1).delta2_exact(0) == 2);
  CHECK(hp(3, Rational(1, 2)).delta2_exact(4) == Rational(14, 9));
}

TEST_CASE("rho-eta delta^2 unrolls the recursion") {
  const auto s = make_sequence(RhoEta{});
  const std::vector<Rational> head = {1, 1, 1, 2, 2, Rational(5, 2)};
  for (std::uint64_t k = 0; k < head.size(); ++k) CHECK(s.delta2_exact(k) == head[k]);
  CHECK(s.delta2_exact(16) == Rational(5, 2));
  CHECK(s.delta2_exact(17) == Rational(11, 4));
  CHECK(s.delta2_exact(257) == Rational(23, 8));
  CHECK(s.delta2(65537) == doctest::Approx(2.9375));
  for (std::uint64_t k = 1; k < 300; ++k) CHECK(*s.delta2_exact(k) >= *s.delta2_exact(k - 1));
}

TEST_CASE("alternating-twelve") {
  const auto s = make_sequence(AlternatingTwelve{});
  CHECK(s.delta2_exact(0) == Rational(1, 3));
  CHECK(s.delta2_exact(1) == Rational(1, 4));
  CHECK(s.delta2_exact(40) == Rational(1, 3));
  CHECK(s.gamma_exact(2) == Rational(1, 12));
  CHECK(s.gamma_exact(3) == Rational(1, 36));
  CHECK(s.nabla_gamma_exact(0, 1) == Rational(-2, 3));
}

TEST_CASE("gamma") {
  const auto szego = hp(2, 2);
  const auto da = hp(2, 1);
  const auto bergman = hp(2, 3);
  for (std::uint64_t k = 0; k <= 30; ++k) {
    CHECK(szego.gamma_exact(k) == 1);
    CHECK(da.gamma_exact(k) == static_cast<long long>(k + 1));
    CHECK(bergman.gamma_exact(k) == Rational(2, static_cast<long long>(k + 2)));
    CHECK(da.gamma(k) == doctest::Approx(static_cast<double>(k + 1)).epsilon(1e-13));
    CHECK(bergman.gamma(k) == doctest::Approx(2.0 / static_cast<double>(k + 2)).epsilon(1e-13));
  }
}

TEST_CASE("nabla gamma") {
  const auto szego = hp(3, 3);
  const auto da = hp(2, 1);
  for (std::uint64_t k = 0; k < 20; ++k) {
    for (unsigned q = 1; q <= 4; ++q) CHECK(szego.nabla_gamma_exact(k, q) == 0);
    CHECK(da.nabla_gamma_exact(k, 1) == 1);
    CHECK(da.nabla_gamma_exact(k, 2) == 0);
    CHECK(da.nabla_gamma(k, 1) == doctest::Approx(1.0));
  }
}

TEST_CASE("kernel coefficients") {
  const auto szego = hp(2, 2);
  const auto da = hp(2, 1);
  for (std::uint64_t k = 0; k < 25; ++k) {
    CHECK(szego.kernel_coefficient(k, 2) == doctest::Approx(static_cast<double>(k + 1)));
    CHECK(da.kernel_coefficient(k, 2) == doctest::Approx(1.0));
  }
  auto g = testing::engine(31);
  for (const auto& f : registry(3)) CHECK(make_sequence(f.spec).kernel_coefficient(0, 3) == 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(make_sequence(testing::tabulated(g, 5)).kernel_coefficient(0, 2) == 1.0);
  }
}

TEST_CASE("bounded verdicts") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (Rational p : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(5)}) {
      const auto v = hp(m, p).is_bounded(1000);
      CHECK(v.status == BoundedStatus::family_declared);
      CHECK(v.sup_delta2 == doctest::Approx(std::max(1.0, static_cast<double>(m) / to_double(p))));
    }
  }
  const auto c = make_sequence(ConstantDelta{Rational(3, 4)}).is_bounded(100);
  CHECK(c.status == BoundedStatus::family_declared);
  CHECK(c.sup_delta2 == doctest::Approx(9.0 / 16.0));
  const auto r = make_sequence(RhoEta{}).is_bounded(100);
  CHECK(r.status == BoundedStatus::family_declared);
  CHECK(r.sup_delta2 == doctest::Approx(3.0));
}

TEST_CASE("tabulated tails") {
  Tabulated t{{2, 3}, TailError{}};
  const auto strict = make_sequence(t);
  CHECK(strict.delta2_exact(1) == 3);
  CHECK_THROWS_AS(strict.delta2(2), OutOfRangeError);
  CHECK_THROWS_AS(strict.log_bbeta(5), OutOfRangeError);
  CHECK(strict.log_bbeta(2) == doctest::Approx(0.5 * std::log(6.0)));

  t.tail = TailLastValue{};
  CHECK(make_sequence(t).delta2_exact(10) == 3);
  t.tail = TailConstant{Rational(1, 2)};
  CHECK(make_sequence(t).delta2_exact(10) == Rational(1, 2));
}

TEST_CASE("polynomial gamma is normalised at zero") {
  const auto s = make_sequence(PolynomialGamma{{1, 4, 6, 4, 1}});
  for (std::uint64_t k = 0; k < 30; ++k) {
    const long long v = static_cast<long long>(k + 1);
    CHECK(s.gamma_exact(k) == Rational(v * v * v * v));
  }
  const auto shifted = make_sequence(PolynomialGamma{{2, 1}});
  CHECK(shifted.gamma_exact(0) == 1);
  CHECK(shifted.gamma_exact(4) == 3);
}

TEST_CASE("family parsing") {
  CHECK(describe(parse_family({{"family", "bergman"}}, 3)) == describe(FamilySpec{HpSpace{3, 4}}));
  CHECK(describe(parse_family({{"family", "hp"}, {"m", "2"}, {"p", "3/2"}}, 2)) ==
        describe(FamilySpec{HpSpace{2, Rational(3, 2)}}));
  CHECK_THROWS_AS(parse_family({{"family", "nonesuch"}}, 2), FamilyError);
  CHECK_THROWS_AS(make_sequence(parse_family({{"family", "hp"}, {"p", "-1"}}, 2)), FamilyError);
  CHECK_THROWS_AS(parse_family({{"family", "poly-gamma"}}, 2), FamilyError);
  CHECK_THROWS_AS(make_sequence(parse_family({{"family", "constant"}, {"c", "0"}}, 2)), FamilyError);
  CHECK_THROWS_AS(parse_family({{"family", "hp"}, {"m", "0"}, {"p", "1"}}, 2), FamilyError);

  std::istringstream column("delta2\n# comment\n1\n\n3/2\n0.25\n");
  const auto values = read_delta2_column(column);
  REQUIRE(values.size() == 3);
  CHECK(values[1] == Rational(3, 2));
  CHECK(values[2] == Rational(1, 4));
}

TEST_CASE("log bbeta matches exact gamma on random tabulated families") {
  auto g = testing::engine(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = make_sequence(testing::tabulated(g, testing::uniform(g, 1, 30)));
    const auto table = s.gamma_exact_table(60);
    const auto logs = s.log_bbeta_table(60);
    for (std::uint64_t k = 0; k < 60; ++k) {
      CHECK(2.0 * logs[k] == doctest::Approx(log_of(table[k])).epsilon(1e-12).scale(1.0));
      CHECK(s.log_bbeta(k) == logs[k]);
    }
  }
}

TEST_CASE("scaling multiplies gamma_k by factor^k") {
  auto g = testing::engine(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto base = make_sequence(testing::hp_space(g, 2));
    const Rational f = testing::positive_rational(g, 6);
    const auto s = base.scaled(f);
    for (std::uint64_t k = 0; k < 15; ++k) CHECK(*s.gamma_exact(k) == *base.gamma_exact(k) * pow(f, k));
  }
}

TEST_CASE("forward differences obey the recursion") {
  auto g = testing::engine(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = make_sequence(testing::tabulated(g, 12));
    const auto f = s.gamma_exact_table(30);
    for (std::uint64_t k = 0; k < 20; ++k) {
      for (unsigned q = 1; q <= 5; ++q) {
        CHECK(forward_difference(f, k, q) == forward_difference(f, k + 1, q - 1) - forward_difference(f, k, q - 1));
        CHECK(s.nabla_gamma_exact(k, q) == forward_difference(f, k, q));
      }
    }
  }
}

TEST_CASE("evaluation order does not change cached values") {
  const auto a = make_sequence(HpSpace{2, Rational(3, 2)});
  const auto b = make_sequence(HpSpace{2, Rational(3, 2)});
  const double far = a.log_bbeta(50000);
  for (std::uint64_t k = 0; k <= 50000; k += 997) CHECK(b.log_bbeta(k) == a.log_bbeta(k));
  CHECK(b.log_bbeta(50000) == far);
}
