// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphshift/scalarseq.hpp"
#include "sphshift/shift.hpp"
#include "sphshift/truncation.hpp"

namespace sphshift {

struct CriterionTerms {
  double t1 = 0.0;  ///< (delta^2_k)^p k^{m-p-1}
  double t2 = 0.0;  ///< |delta^2_k - delta^2_{k-1}|^p k^{m-1}
};

/// Terms of the two series whose joint convergence is equivalent to the
/// cross-commutators lying in S^p. Needs k >= 1 and p >= 1.
CriterionTerms criterion_terms(const ScalarSequence& seq, std::size_t arity, double p, std::uint64_t k);

enum class SeriesVerdict { converges, diverges, inconclusive };
enum class DecisionMethod { analytic, sampled, essential_normality };

std::string to_string(SeriesVerdict v);
std::string to_string(DecisionMethod m);

struct SeriesFit {
  double exponent = 0.0;  ///< log-log slope of the terms over [K/2, K]; NaN when too sparse
  double nonzero_fraction = 0.0;
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
};

struct SchattenVerdict {
  double p = 1.0;
  std::size_t arity = 2;
  std::uint64_t horizon = 0;
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  DecisionMethod method = DecisionMethod::sampled;
  SeriesVerdict sampled_verdict = SeriesVerdict::inconclusive;  ///< always computed
  SeriesFit fit_t1;
  SeriesFit fit_t2;
  std::vector<std::uint64_t> checkpoints;  ///< powers of two, then K
  std::vector<double> partial_t1;
  std::vector<double> partial_t2;
  bool compact = false;
  bool cutoff_consistent = true;
  std::string reason;
};

/// Thrown for p < 1.
class ExponentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// S^p membership of the cross-commutators. Families declaring the asymptotics
/// of delta^2 are decided analytically; otherwise the terms are fitted over
/// [K/2, K] with a +-0.1 band around exponent -1. p = +inf is decided by the
/// essential-normality test.
SchattenVerdict decide(const ScalarSequence& seq, std::size_t arity, double p, std::uint64_t K);

/// sum over n with |n| = k of |coefficient|^p for [T_j^*, T_l] (axes 0-based),
/// from composition counts.
double level_norm(const SphericalShift& shift, std::size_t j, std::size_t l, double p, std::uint64_t k);

/// The same level sum by enumerating the level (oracle for level_norm).
double level_norm_enumerated(const SphericalShift& shift, std::size_t j, std::size_t l, double p, std::uint64_t k);

/// p-th power of the S^p norm of [T_j^*, T_l] restricted to levels 0..K.
double closed_form_norm(const SphericalShift& shift, std::size_t j, std::size_t l, double p, std::uint64_t K);

/// sum of s^p over the singular values of a weighted-shift-type matrix, read
/// off the diagonal of C^*C.
double gram_schatten_sum(const DenseOperator& c, double p);

struct CutoffReport {
  bool compact = false;
  bool skipped = false;  ///< compact families fall outside the cut-off
  std::vector<SchattenVerdict> verdicts;
  std::optional<double> transition;      ///< smallest grid p with a converges verdict
  std::optional<double> last_diverging;  ///< largest grid p with a diverges verdict
  bool consistent = true;            ///< no converges verdict at any p <= m
};

CutoffReport cutoff_check(const ScalarSequence& seq, std::size_t arity, const std::vector<double>& grid, std::uint64_t K);

struct WitnessPoint {
  int level = 0;
  std::uint64_t k = 0;        ///< K_l, the jump position
  double partial_sum = 0.0;   ///< sum of t2 up to K_l
  double log2_bound = 0.0;    ///< log2 of the spike term h_l^p K_l^{m-1}
};

/// Partial sums of the second criterion series at the jump positions of a
/// lacunary family, levels first_level..max_level.
std::vector<WitnessPoint> divergence_witness(const ScalarSequence& seq, std::size_t arity, double p, int max_level);

struct LemmaWindow {
  std::string lemma;  ///< "pair-sum" or "shift-sum"
  std::string s_label;
  std::size_t arity = 2;
  double p = 1.0;
  std::vector<std::uint64_t> ks;
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread() const { return max_ratio / min_ratio; }
};

/// sum over |n| = k, n_j > 0 of n_j^{p/2} n_l^{p/2} (j != l).
double lemma_pair_sum(std::size_t arity, double p, std::uint64_t k);

/// sum over |n| = k of |s n_j - 1|^p.
double lemma_shift_sum(std::size_t arity, double p, double s, std::uint64_t k);

/// Ratios of both lemma sums to their claimed orders over a geometric grid of
/// k in [k_lo, k_hi]: one window for the pair sum, and one per s in {0, 1, 1/k, 6/k}.
std::vector<LemmaWindow> asymptotic_lemma_check(std::size_t arity, double p, std::uint64_t k_lo, std::uint64_t k_hi,
                                                unsigned points = 25);

}  // namespace sphshift
