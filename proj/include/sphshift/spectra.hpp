// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphshift/classify.hpp"
#include "sphshift/scalarseq.hpp"

namespace sphshift {

/// How a limit was obtained: declared by the family, extrapolated from a
/// stabilised sampled sequence, or neither (the sampled data is still reported).
enum class EstimateTier { analytic, extrapolated, inconclusive };

std::string to_string(EstimateTier tier);

struct RadiusEstimate {
  double value = 0.0;  ///< +inf when the sequence looks unbounded
  EstimateTier tier = EstimateTier::inconclusive;
  bool unbounded = false;
  /// Sampled values indexed from j = 1 (radii) or the sampled tail points (r).
  std::vector<double> sequence;
  /// Extrapolated / tail estimates whose spread decides the tier.
  std::vector<double> stabilisation;
  double spread = 0.0;
  std::uint64_t horizon = 0;
  std::string note;
};

struct InnerRadiusEstimate : RadiusEstimate {
  /// inf_k over k <= check_horizon of q_diag(k, j)^{1/2j}, j = 1..J.
  std::vector<double> m_infinity_sequence;
  /// The inf-formula on the same k-range, from log bbeta differences.
  std::vector<double> inner_check_sequence;
  double m_infinity = 0.0;  ///< sup over j of m_infinity_sequence
  double m_infinity_max_rel_deviation = 0.0;
  std::uint64_t check_horizon = 0;
};

struct SpectraOptions {
  unsigned J = 60;
  std::uint64_t K = 100000;
  std::uint64_t window = 0;  ///< 0 means K / 10
  /// k-range of the m_infinity cross-check (each point costs j delta^2 evaluations).
  std::uint64_t m_infinity_horizon = 10000;
};

/// R = lim_j sup_k (bbeta_{k+j}/bbeta_k)^{1/j}, sup over k <= K.
RadiusEstimate outer_radius(const ScalarSequence& seq, unsigned J, std::uint64_t K);

/// r = liminf_j bbeta_j^{1/j}, read over j in [K/2, K].
RadiusEstimate convergence_radius(const ScalarSequence& seq, std::uint64_t K);

/// i = lim_j inf_k (bbeta_{k+j}/bbeta_k)^{1/j}, plus the m_infinity cross-check
/// sup_j inf_k <Q^j e_n, e_n>^{1/2j} through SphericalShift::q_diag.
InnerRadiusEstimate inner_radius(const ScalarSequence& seq, std::size_t arity, unsigned J, std::uint64_t K,
                                 std::uint64_t m_infinity_horizon = 10000);

/// Refusal of the essential shell when the commutators are not compact.
class NotEssentiallyNormalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EssentialShell {
  double inner = 0.0;
  double outer = 0.0;
  EstimateTier tier = EstimateTier::inconclusive;
  VerdictSource gate = VerdictSource::sampled;
  std::uint64_t window_start = 0;
  std::uint64_t window_end = 0;
};

/// (liminf delta_k, limsup delta_k) over [K - window, K], or the family's
/// declared values. Throws NotEssentiallyNormalError when the gate fails.
EssentialShell essential_shell(const ScalarSequence& seq, std::uint64_t K, std::uint64_t window);

enum class PointSpectrumBoundary { open_ball, closed_ball, inconclusive };

std::string to_string(PointSpectrumBoundary b);

struct PointSpectrumResult {
  PointSpectrumBoundary boundary = PointSpectrumBoundary::inconclusive;
  double tail_exponent = 0.0;        ///< fitted over [K/2, K]
  double early_tail_exponent = 0.0;  ///< fitted over [K/4, K/2], consistency check
  double r = 0.0;
};

/// Tests convergence of sum_k binom(m-1+k, k) r^{2k} / gamma_k by a log-log
/// tail fit: closed ball below exponent -1.1, open ball above -0.9.
PointSpectrumResult point_spectrum_boundary(const ScalarSequence& seq, std::size_t arity, double r, std::uint64_t K);

/// rho_{kj} = [(k+2)...(k+j+1)] / [(k+m+1)...(k+j+m)] and its 1/2j-th power.
double lemma_rho_root(std::size_t arity, std::uint64_t k, unsigned j);

struct SpectralReport {
  RadiusEstimate R;
  RadiusEstimate r;
  InnerRadiusEstimate i;
  bool ordering_holds = false;  ///< i <= r <= R, up to 1e-9 relative plus the spreads of sampled estimates
  EssentialNormality essential_normality;
  std::optional<EssentialShell> essential;
  std::string essential_refusal;
  PointSpectrumResult point_spectrum;
};

SpectralReport spectral_report(const ScalarSequence& seq, std::size_t arity, const SpectraOptions& options);

}  // namespace sphshift
