// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphshift/exact.hpp"
#include "sphshift/scalarseq.hpp"

namespace sphshift {

/// Where a verdict comes from. `exact` covers k <= horizon in rational
/// arithmetic; `sampled` is a floating-point reading at the horizon.
enum class VerdictSource { analytic, exact, sampled };

std::string to_string(VerdictSource source);

struct Verdict {
  bool value = false;
  VerdictSource source = VerdictSource::sampled;
  std::uint64_t horizon = 0;              ///< 0 for analytic verdicts
  std::optional<std::uint64_t> witness_k;  ///< first offending index, when one exists
  std::string note;
};

/// delta_k -> 0.
Verdict is_compact(const ScalarSequence& seq, std::uint64_t horizon);

struct EssentialNormality {
  Verdict verdict;
  /// For a negative verdict on the exact path: the smallest |delta^2_{k+1} - delta^2_k|
  /// over 0 <= k < horizon, a uniform lower bound witnessing non-compact commutators.
  std::optional<Rational> min_difference;
  /// Largest |delta^2_k - delta^2_{k-1}| over the sampled tail window.
  double tail_max_difference = 0.0;
};

/// delta^2_k - delta^2_{k-1} -> 0. `window` is the tail length used by the
/// sampled reading (default horizon / 10).
EssentialNormality is_essentially_normal(const ScalarSequence& seq, std::uint64_t horizon, std::uint64_t window = 0);

/// delta_k nondecreasing for k <= horizon.
Verdict is_hyponormal(const ScalarSequence& seq, std::uint64_t horizon);

/// delta^2_k = 1 for k <= horizon.
Verdict is_szego(const ScalarSequence& seq, std::uint64_t horizon);

struct QIsometryOrder {
  std::optional<unsigned> order;
  bool definitive = false;  ///< true only on the exact path
  std::uint64_t horizon = 0;
};

/// Smallest q <= qmax with nabla^q gamma_k = 0 for all k <= horizon.
QIsometryOrder q_isometry_order(const ScalarSequence& seq, unsigned qmax, std::uint64_t horizon);

/// (-1)^q nabla^q gamma_k <= 0 for all k <= horizon.
Verdict is_q_expansion(const ScalarSequence& seq, unsigned q, std::uint64_t horizon);

/// Largest q0 <= qmax with q-expansion for every q = 1..q0.
unsigned complete_hyperexpansion_up_to(const ScalarSequence& seq, unsigned qmax, std::uint64_t horizon);

/// Rejected: the rescaling needs a finite sup delta.
class UnboundedSequenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SubnormalConsistency {
  bool passed = false;
  unsigned order = 0;  ///< P
  std::uint64_t horizon = 0;
  bool exact = false;
  std::string scale;  ///< sup delta^2 used for the rescale
  struct Witness {
    unsigned p;
    std::uint64_t k;
    std::string value;  ///< (-1)^p nabla^p gamma~_k, strictly negative
    double value_approx;
  };
  std::optional<Witness> witness;
};

/// After rescaling delta^2 by 1 / sup delta^2, checks (-1)^p nabla^p gamma~_k >= 0
/// for p = 1..P and k <= horizon. A pass is consistency only; a failure carries
/// the first (p, k) found, scanning p upward and k upward.
SubnormalConsistency subnormal_consistency(const ScalarSequence& seq, unsigned max_order, std::uint64_t horizon);

struct Classification {
  BoundedVerdict bounded;
  Verdict compact;
  EssentialNormality essentially_normal;
  Verdict szego;
  Verdict hyponormal;
  QIsometryOrder q_isometry;
  std::vector<std::pair<unsigned, Verdict>> q_expansion;  ///< q = 1..Q
  unsigned complete_hyperexpansion_up_to = 0;
  SubnormalConsistency subnormal;
};

struct ClassifyOptions {
  unsigned max_subnormal_order = 8;  ///< P
  unsigned max_q = 6;                ///< Q
  std::uint64_t exact_horizon = 200;
  std::uint64_t sampled_horizon = 100000;
};

Classification classify(const ScalarSequence& seq, const ClassifyOptions& options);

}  // namespace sphshift
