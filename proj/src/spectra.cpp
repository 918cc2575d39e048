// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "sphshift/numeric.hpp"
#include "sphshift/shift.hpp"

namespace sphshift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_horizons(unsigned J, std::uint64_t K) {
  if (J == 0 || K == 0) throw std::invalid_argument("J and K must be at least 1");
}

std::uint64_t usable_end(const ScalarSequence& seq, std::uint64_t wanted) {
  if (seq.domain_end() && *seq.domain_end() < wanted)
    throw OutOfRangeError("sequence '" + seq.name() + "' is tabulated only up to k = " +
                          std::to_string(*seq.domain_end() - 1) + "; the estimate needs " + std::to_string(wanted));
  return wanted;
}

// No declared sup and delta^2 at least doubled between the two halves of [0, K].
bool looks_unbounded(const ScalarSequence& seq, std::uint64_t K) {
  if (seq.traits().sup_delta2 || seq.traits().limit_delta2 || seq.traits().limsup_delta2) return false;
  double head = 0.0, tail = 0.0;
  for (std::uint64_t k = 0; k <= K; ++k) {
    double& slot = k < K / 2 ? head : tail;
    slot = std::max(slot, seq.delta2(k));
  }
  return tail >= 2.0 * head;
}

// S_j = (sup or inf over k <= K) of (L_{k+j} - L_k) / j, j = 1..J, in log space.
std::vector<double> log_ratio_extremes(const std::vector<double>& logs, unsigned J, std::uint64_t K, bool take_sup) {
  std::vector<double> out;
  out.reserve(J);
  for (unsigned j = 1; j <= J; ++j) {
    double best = take_sup ? -kInf : kInf;
    for (std::uint64_t k = 0; k <= K; ++k) {
      const double v = logs[k + j] - logs[k];
      best = take_sup ? std::max(best, v) : std::min(best, v);
    }
    out.push_back(best / j);
  }
  return out;
}

// Limit fits over j in [J'/2, J'] for the last five J'; spread decides the tier.
void extrapolate_into(RadiusEstimate& est, const std::vector<double>& log_values, double tolerance, bool upper) {
  const unsigned J = static_cast<unsigned>(log_values.size());
  for (unsigned top = J >= 4 ? J - 4 : 1; top <= J; ++top) {
    std::vector<double> xs, ys;
    for (unsigned j = std::max(1u, top / 2); j <= top; ++j) {
      xs.push_back(j);
      ys.push_back(log_values[j - 1]);
    }
    const double c0 = extrapolate_limit(xs, ys);
    if (std::isfinite(c0)) est.stabilisation.push_back(std::exp(c0));
  }
  for (double v : log_values) est.sequence.push_back(std::exp(v));
  if (est.stabilisation.size() == 5) {
    const auto [lo, hi] = std::minmax_element(est.stabilisation.begin(), est.stabilisation.end());
    est.spread = *hi - *lo;
    if (est.spread <= tolerance) {
      est.tier = EstimateTier::extrapolated;
      est.value = est.stabilisation.back();
      return;
    }
  }
  // S_j is subadditive (I_j superadditive), so min_j S_j / j bounds R from above
  // and max_j I_j / j bounds i from below
  est.tier = EstimateTier::inconclusive;
  if (log_values.empty()) {
    est.value = 0.0;
  } else {
    const auto [lo, hi] = std::minmax_element(log_values.begin(), log_values.end());
    est.value = std::exp(upper ? *lo : *hi);
  }
  est.note = std::string("j-sequence has not stabilised; value is the ") +
             (upper ? "upper bound min_j" : "lower bound max_j") + " over the sampled terms";
}

RadiusEstimate ratio_radius(const ScalarSequence& seq, unsigned J, std::uint64_t K, bool take_sup) {
  check_horizons(J, K);
  RadiusEstimate est;
  est.horizon = K;
  usable_end(seq, K + J + 1);
  if (looks_unbounded(seq, K + J)) {
    est.unbounded = true;
    est.value = kInf;
    est.tier = EstimateTier::inconclusive;
    est.note = "delta^2 keeps growing up to the horizon";
    return est;
  }
  const std::vector<double> logs = seq.log_bbeta_table(K + J + 1);
  extrapolate_into(est, log_ratio_extremes(logs, J, K, take_sup), 1e-4, take_sup);
  if (const auto& limit = seq.traits().limit_delta2) {
    est.value = std::sqrt(*limit);
    est.tier = EstimateTier::analytic;
    est.note = "declared lim delta^2";
  }
  return est;
}

}  // namespace

std::string to_string(EstimateTier tier) {
  switch (tier) {
    case EstimateTier::analytic:
      return "analytic";
    case EstimateTier::extrapolated:
      return "extrapolated";
    case EstimateTier::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(PointSpectrumBoundary b) {
  switch (b) {
    case PointSpectrumBoundary::open_ball:
      return "open-ball";
    case PointSpectrumBoundary::closed_ball:
      return "closed-ball";
    case PointSpectrumBoundary::inconclusive:
      return "inconclusive";
  }
  return "?";
}

RadiusEstimate outer_radius(const ScalarSequence& seq, unsigned J, std::uint64_t K) {
  return ratio_radius(seq, J, K, true);
}

RadiusEstimate convergence_radius(const ScalarSequence& seq, std::uint64_t K) {
  if (K < 4) throw std::invalid_argument("K must be at least 4");
  usable_end(seq, K + 1);
  RadiusEstimate est;
  est.horizon = K;
  const std::vector<double> logs = seq.log_bbeta_table(K + 1);
  auto tail_min = [&](std::uint64_t from, std::uint64_t to) {
    double best = kInf;
    for (std::uint64_t j = from; j <= to; ++j) best = std::min(best, logs[j] / static_cast<double>(j));
    return best;
  };
  const double early = tail_min(K / 4, K / 2);
  const double late = tail_min(K / 2, K);
  // windowed minima sit O(1/j) below the liminf; one Richardson step removes the leading term
  const double corrected = std::isfinite(early) && std::isfinite(late) ? 2.0 * late - early : late;
  est.sequence = {std::exp(early), std::exp(late)};
  est.stabilisation = {std::exp(early), std::exp(late), std::exp(corrected)};
  est.spread = std::abs(std::exp(late) - std::exp(early));
  est.value = std::exp(corrected);
  est.tier = est.spread <= 1e-3 ? EstimateTier::extrapolated : EstimateTier::inconclusive;
  if (const auto& limit = seq.traits().limit_delta2) {
    est.value = std::sqrt(*limit);
    est.tier = EstimateTier::analytic;
    est.note = "declared lim delta^2";
  }
  return est;
}

InnerRadiusEstimate inner_radius(const ScalarSequence& seq, std::size_t arity, unsigned J, std::uint64_t K,
                                 std::uint64_t m_infinity_horizon) {
  InnerRadiusEstimate est;
  static_cast<RadiusEstimate&>(est) = ratio_radius(seq, J, K, false);
  if (est.unbounded) return est;

  const SphericalShift shift(arity, seq);
  est.check_horizon = std::min(K, m_infinity_horizon);
  const std::vector<double> logs = seq.log_bbeta_table(est.check_horizon + J + 1);
  const std::vector<double> inner_logs = log_ratio_extremes(logs, J, est.check_horizon, false);
  for (unsigned j = 1; j <= J; ++j) {
    double best = kInf;
    for (std::uint64_t k = 0; k <= est.check_horizon; ++k) best = std::min(best, shift.log_q_diag(k, j));
    const double m_j = std::exp(best / (2.0 * j));
    const double inner_j = std::exp(inner_logs[j - 1]);
    est.m_infinity_sequence.push_back(m_j);
    est.inner_check_sequence.push_back(inner_j);
    est.m_infinity = std::max(est.m_infinity, m_j);
    est.m_infinity_max_rel_deviation = std::max(est.m_infinity_max_rel_deviation, std::abs(m_j - inner_j) / inner_j);
  }
  return est;
}

EssentialShell essential_shell(const ScalarSequence& seq, std::uint64_t K, std::uint64_t window) {
  if (window == 0) window = std::max<std::uint64_t>(1, K / 10);
  if (window > K) throw std::invalid_argument("window exceeds K");
  const EssentialNormality gate = is_essentially_normal(seq, K, window);
  if (!gate.verdict.value) {
    std::string why = "not essentially normal (" + to_string(gate.verdict.source) + ")";
    if (gate.min_difference) why += ": |delta^2_{k+1} - delta^2_k| >= " + to_string(*gate.min_difference);
    throw NotEssentiallyNormalError(why);
  }
  EssentialShell shell;
  shell.gate = gate.verdict.source;
  shell.window_start = K - window;
  shell.window_end = K;
  const auto& t = seq.traits();
  if (t.limit_delta2) {
    shell.inner = shell.outer = std::sqrt(*t.limit_delta2);
    shell.tier = EstimateTier::analytic;
    return shell;
  }
  if (t.liminf_delta2 && t.limsup_delta2) {
    shell.inner = std::sqrt(*t.liminf_delta2);
    shell.outer = std::sqrt(*t.limsup_delta2);
    shell.tier = EstimateTier::analytic;
    return shell;
  }
  usable_end(seq, K + 1);
  double lo = kInf, hi = 0.0;
  for (std::uint64_t k = K - window; k <= K; ++k) {
    const double d = seq.delta2(k);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  shell.inner = std::sqrt(lo);
  shell.outer = std::sqrt(hi);
  shell.tier = EstimateTier::extrapolated;
  return shell;
}

PointSpectrumResult point_spectrum_boundary(const ScalarSequence& seq, std::size_t arity, double r, std::uint64_t K) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  if (K < 8) throw std::invalid_argument("K must be at least 8");
  PointSpectrumResult out;
  out.r = r;
  if (!(r > 0.0) || !std::isfinite(r)) return out;
  usable_end(seq, K + 1);
  const std::vector<double> logs = seq.log_bbeta_table(K + 1);
  const double m = static_cast<double>(arity);
  const double log_r = std::log(r);
  auto fit = [&](std::uint64_t from, std::uint64_t to) {
    std::vector<double> x, y;
    for (std::uint64_t k = from; k <= to; ++k) {
      const double kd = static_cast<double>(k);
      const double log_binom = std::lgamma(m + kd) - std::lgamma(m) - std::lgamma(kd + 1.0);
      x.push_back(std::log(kd));
      y.push_back(log_binom + 2.0 * kd * log_r - 2.0 * logs[k]);
    }
    return linear_slope(x, y);
  };
  out.tail_exponent = fit(K / 2, K);
  out.early_tail_exponent = fit(K / 4, K / 2);
  auto classify_slope = [](double s) {
    if (s < -1.1) return PointSpectrumBoundary::closed_ball;
    if (s > -0.9) return PointSpectrumBoundary::open_ball;
    return PointSpectrumBoundary::inconclusive;
  };
  const auto late = classify_slope(out.tail_exponent);
  out.boundary = late == classify_slope(out.early_tail_exponent) ? late : PointSpectrumBoundary::inconclusive;
  return out;
}

double lemma_rho_root(std::size_t arity, std::uint64_t k, unsigned j) {
  if (j == 0) throw std::invalid_argument("j must be at least 1");
  const double kd = static_cast<double>(k);
  const double m = static_cast<double>(arity);
  double log_rho = 0.0;
  for (unsigned i = 1; i <= j; ++i) log_rho += std::log((kd + i + 1.0) / (kd + i + m));
  return std::exp(log_rho / (2.0 * j));
}

SpectralReport spectral_report(const ScalarSequence& seq, std::size_t arity, const SpectraOptions& options) {
  SpectralReport report;
  const std::uint64_t window = options.window == 0 ? std::max<std::uint64_t>(1, options.K / 10) : options.window;
  report.R = outer_radius(seq, options.J, options.K);
  report.r = convergence_radius(seq, options.K);
  report.i = inner_radius(seq, arity, options.J, options.K, options.m_infinity_horizon);
  // equal radii reach here through different log-space sums; sampled estimates
  // are compared within their own reported spreads
  double slack = 1e-9 * std::max(1.0, std::isinf(report.R.value) ? 1.0 : report.R.value);
  for (const RadiusEstimate* e : std::initializer_list<const RadiusEstimate*>{&report.R, &report.r, &report.i}) {
    if (e->tier != EstimateTier::analytic && std::isfinite(e->spread)) slack += e->spread;
  }
  report.ordering_holds = report.i.value <= report.r.value + slack && report.r.value <= report.R.value + slack;
  report.essential_normality = is_essentially_normal(seq, options.K, window);
  try {
    report.essential = essential_shell(seq, options.K, window);
  } catch (const NotEssentiallyNormalError& e) {
    report.essential_refusal = e.what();
  }
  report.point_spectrum = point_spectrum_boundary(seq, arity, report.r.value, options.K);
  return report;
}

}  // namespace sphshift
