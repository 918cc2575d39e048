// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "doctest.h"
#include "generators.hpp"
#include "sphshift/families.hpp"
#include "sphshift/schatten.hpp"

using namespace sphshift;

namespace {

ScalarSequence hp(std::size_t m, Rational p) { return make_sequence(HpSpace{m, p}); }

ScalarSequence compact_tabulated() {
  for (const auto& f : registry(2))
    if (f.name == "compact-tabulated") return make_sequence(f.spec);
  throw std::logic_error("missing family");
}

std::vector<SeriesVerdict> verdicts(const CutoffReport& r) {
  std::vector<SeriesVerdict> out;
  for (const auto& v : r.verdicts) out.push_back(v.verdict);
  return out;
}

}  // namespace

TEST_CASE("criterion terms") {
  const auto szego = hp(3, 3);
  for (std::uint64_t k : {1u, 9u, 500u}) {
    for (double p : {1.0, 2.5}) {
      const auto t = criterion_terms(szego, 3, p, k);
      CHECK(t.t1 == doctest::Approx(std::pow(static_cast<double>(k), 3.0 - p - 1.0)));
      CHECK(t.t2 == 0.0);
    }
  }
  const auto alt = make_sequence(AlternatingTwelve{});
  for (std::uint64_t k = 1; k < 50; ++k) CHECK(criterion_terms(alt, 2, 2.0, k).t2 == doctest::Approx(k / 144.0));
  CHECK_THROWS_AS(criterion_terms(alt, 2, 0.5, 3), ExponentError);
  CHECK_THROWS_AS(criterion_terms(alt, 2, 1.0, 0), std::invalid_argument);
}

TEST_CASE("rho-eta differences sit one step after 2^(2^l)") {
  const auto rho = make_sequence(RhoEta{});
  CHECK(criterion_terms(rho, 2, 1.0, 3).t2 == doctest::Approx(3.0));
  CHECK(criterion_terms(rho, 2, 1.0, 4).t2 == 0.0);
  CHECK(criterion_terms(rho, 2, 1.0, 5).t2 == doctest::Approx(2.5));
  CHECK(criterion_terms(rho, 2, 1.0, 17).t2 == doctest::Approx(17.0 / 4.0));
}

TEST_CASE("decide") {
  const auto bergman = hp(2, 3);
  CHECK(decide(bergman, 2, 2.0, 100000).verdict == SeriesVerdict::diverges);
  CHECK(decide(bergman, 2, 2.5, 100000).verdict == SeriesVerdict::converges);
  CHECK(decide(bergman, 2, 2.5, 100000).method == DecisionMethod::analytic);

  const auto rho = make_sequence(RhoEta{});
  for (double p : {1.0, 2.0, 4.0, 8.0, 30.0}) CHECK(decide(rho, 2, p, 10000).verdict == SeriesVerdict::diverges);

  const auto compact = decide(compact_tabulated(), 2, 1.0, 100000);
  CHECK(compact.verdict == SeriesVerdict::converges);
  CHECK(compact.compact);

  CHECK_THROWS_AS(decide(bergman, 2, 0.99, 100000), ExponentError);
  CHECK_THROWS_AS(decide(bergman, 2, 2.0, 999), std::invalid_argument);

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(decide(bergman, 2, inf, 10000).verdict == SeriesVerdict::converges);
  CHECK(decide(make_sequence(AlternatingTwelve{}), 2, inf, 10000).verdict == SeriesVerdict::diverges);
  CHECK(decide(make_sequence(AlternatingTwelve{}), 2, inf, 10000).method == DecisionMethod::essential_normality);
}

TEST_CASE("compact partial sums stabilise") {
  const auto v = decide(compact_tabulated(), 2, 1.0, 1000000);
  REQUIRE(v.checkpoints.back() == 1000000);
  // increments over successive doublings of k shrink geometrically
  for (const auto* sums : {&v.partial_t1, &v.partial_t2}) {
    for (std::size_t i = 12; i + 1 < sums->size() - 1; ++i) {
      const double late = (*sums)[i + 1] - (*sums)[i];
      const double early = (*sums)[i] - (*sums)[i - 1];
      CHECK(late <= 0.6 * early);
    }
    CHECK(sums->back() - (*sums)[sums->size() - 2] < 1e-5);
  }
}

TEST_CASE("sampled and analytic readings agree on H_p away from the boundary") {
  for (std::size_t m : {2u, 3u}) {
    for (double p : {1.0, static_cast<double>(m) + 1.0}) {
      const auto v = decide(hp(m, static_cast<long long>(m + 1)), m, p, 100000);
      CHECK(v.method == DecisionMethod::analytic);
      CHECK(v.sampled_verdict == v.verdict);
    }
  }
}

TEST_CASE("cut-off") {
  CHECK(verdicts(cutoff_check(hp(2, 4), 2, {1, 1.5, 2, 2.25, 3}, 100000)) ==
        std::vector<SeriesVerdict>{SeriesVerdict::diverges, SeriesVerdict::diverges, SeriesVerdict::diverges,
                                   SeriesVerdict::converges, SeriesVerdict::converges});
  const auto hardy3 = cutoff_check(hp(3, 3), 3, {3.5, 2, 3, 3}, 100000);
  CHECK(verdicts(hardy3) ==
        std::vector<SeriesVerdict>{SeriesVerdict::diverges, SeriesVerdict::diverges, SeriesVerdict::converges});
  CHECK(hardy3.transition == 3.5);
  CHECK(hardy3.last_diverging == 3.0);
  CHECK(hardy3.consistent);

  const auto skipped = cutoff_check(compact_tabulated(), 2, {1, 2, 3}, 100000);
  CHECK(skipped.skipped);
  CHECK(skipped.verdicts.empty());
}

TEST_CASE("closed-form norms") {
  const SphericalShift szego(2, hp(2, 2));
  CHECK(closed_form_norm(szego, 0, 0, 1.0, 1) == doctest::Approx(1.0));
  CHECK(level_norm(szego, 0, 1, 1.0, 1) == doctest::Approx(1.0 / 6.0));

  // pure zero branch: level 1 with n_j = 0 only contributes nothing for j != l
  const SphericalShift t(3, make_sequence(RhoEta{}));
  for (const auto& n : Level(3, 4)) {
    if (n[0] == 0) CHECK_FALSE(t.cross_comm_coeff(0, 1, n).has_value());
  }
}

TEST_CASE("level norms from composition counts match enumeration") {
  auto g = testing::engine(81);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t m = testing::uniform(g, 2, 4);
    const SphericalShift t(m, make_sequence(testing::tabulated(g, 20)));
    const double p = 1.0 + static_cast<double>(testing::uniform(g, 0, 6)) / 2.0;
    for (std::uint64_t k : {0u, 1u, 2u, 7u, 19u, 50u}) {
      for (std::size_t l = 0; l < m; ++l) {
        const double fast = level_norm(t, 0, l, p, k);
        const double slow = level_norm_enumerated(t, 0, l, p, k);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("Szego cross-commutator level sums") {
  const SphericalShift szego(2, hp(2, 2));
  for (std::uint64_t k = 1; k <= 50; ++k) {
    const double d = std::abs(1.0 / (k + 2.0) - 1.0 / (k + 1.0));
    double expected = 0.0;
    for (std::uint64_t t = 1; t <= k; ++t) expected += std::pow(t * (k - t + 1.0), 1.0) * d;
    CHECK(level_norm(szego, 0, 1, 2.0, k) == doctest::Approx(expected * d).epsilon(1e-12));
  }
}

TEST_CASE("norm symmetries") {
  auto g = testing::engine(82);
  for (int trial = 0; trial < 10; ++trial) {
    const SphericalShift t(3, make_sequence(testing::tabulated(g, 10)));
    const double p = 1.0 + static_cast<double>(testing::uniform(g, 0, 3));
    const double self = closed_form_norm(t, 0, 0, p, 30);
    CHECK(closed_form_norm(t, 1, 1, p, 30) == doctest::Approx(self).epsilon(1e-13));
    CHECK(closed_form_norm(t, 2, 2, p, 30) == doctest::Approx(self).epsilon(1e-13));
    CHECK(closed_form_norm(t, 0, 2, p, 30) == doctest::Approx(closed_form_norm(t, 2, 0, p, 30)).epsilon(1e-13));
    CHECK(closed_form_norm(t, 0, 1, p, 30) == doctest::Approx(closed_form_norm(t, 1, 2, p, 30)).epsilon(1e-13));
  }
}

TEST_CASE("closed-form norms match the gram oracle, and S^p norms fall with p") {
  auto g = testing::engine(83);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t m = testing::uniform(g, 2, 3);
    const unsigned N = 8;
    const SphericalShift t(m, make_sequence(testing::tabulated(g, 6)));
    const TruncationBasis basis(m, N);
    const auto tuple = build_tuple(t, basis);
    const auto c = restrict_columns(commutator(adjoint(tuple[0]), tuple[1]), basis, N - 1);
    double previous = std::numeric_limits<double>::infinity();
    for (double p : {1.0, 2.0, 4.0}) {
      const double closed = closed_form_norm(t, 0, 1, p, N - 1);
      CHECK(gram_schatten_sum(c, p) == doctest::Approx(closed).epsilon(1e-8));
      const double norm = std::pow(closed, 1.0 / p);
      CHECK(norm <= previous * (1 + 1e-12));
      previous = norm;
    }
  }
}

TEST_CASE("divergence witness") {
  const auto rho = make_sequence(RhoEta{});
  for (double p : {1.0, 2.0, 4.0, 8.0}) {
    const auto w = divergence_witness(rho, 2, p, 4);
    REQUIRE(w.size() == 5);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i].partial_sum > w[i - 1].partial_sum);
    for (const auto& pt : w) {
      if (pt.level >= 1) CHECK(pt.partial_sum >= std::exp2(std::exp2(pt.level) - pt.level * p));
    }
    CHECK(w.back().k == 65537);
  }
  CHECK_THROWS_AS(divergence_witness(hp(2, 3), 2, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(divergence_witness(rho, 2, 1.0, 6), std::invalid_argument);
}

TEST_CASE("lemma sums against enumeration") {
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::uint64_t k = 0; k <= 25; ++k) {
      for (double p : {1.0, 2.0, 3.0}) {
        double pair = 0.0;
        double shift = 0.0;
        for (const auto& n : Level(m, k)) {
          if (n[0] > 0) pair += std::pow(n[0], p / 2) * std::pow(n[1], p / 2);
          shift += std::pow(std::abs(0.25 * n[0] - 1.0), p);
        }
        CHECK(lemma_pair_sum(m, p, k) == doctest::Approx(pair).epsilon(1e-12));
        CHECK(lemma_shift_sum(m, p, 0.25, k) == doctest::Approx(shift).epsilon(1e-12));
      }
    }
  }
  for (std::uint64_t k = 1; k <= 200; ++k) {
    const double closed = 1.0 + static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
    CHECK(lemma_shift_sum(2, 1.0, 1.0, k) == closed);
  }
}

TEST_CASE("lemma ratio windows") {
  const auto w = asymptotic_lemma_check(2, 2.0, 100, 1000);
  REQUIRE(w.front().lemma == "pair-sum");
  CHECK(w.front().spread() <= 3.0);
  for (std::size_t m : {2u, 3u, 4u}) {
    for (const auto& win : asymptotic_lemma_check(m, 1.0, 1000, 10000, 5)) {
      if (win.lemma == "shift-sum" && win.s_label == "0")
        CHECK(win.ratios.back() == doctest::Approx(1.0 / std::tgamma(static_cast<double>(m))).epsilon(0.01));
    }
  }
}
