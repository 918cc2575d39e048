// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "sphshift/classify.hpp"
#include "sphshift/multiindex.hpp"
#include "sphshift/numeric.hpp"

namespace sphshift {

namespace {

constexpr double kBand = 0.1;

void check_exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw ExponentError("Schatten exponent must be >= 1 (got " + std::to_string(p) + ")");
}

SeriesVerdict from_exponent(double e) {
  if (e < -1.0 - kBand) return SeriesVerdict::converges;
  if (e > -1.0 + kBand) return SeriesVerdict::diverges;
  return SeriesVerdict::inconclusive;
}

SeriesVerdict combine(SeriesVerdict a, SeriesVerdict b) {
  if (a == SeriesVerdict::diverges || b == SeriesVerdict::diverges) return SeriesVerdict::diverges;
  if (a == SeriesVerdict::converges && b == SeriesVerdict::converges) return SeriesVerdict::converges;
  return SeriesVerdict::inconclusive;
}

SeriesFit fit_window(const std::vector<double>& ks, const std::vector<double>& terms) {
  SeriesFit fit;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (terms[i] > 0.0) {
      x.push_back(std::log(ks[i]));
      y.push_back(std::log(terms[i]));
    }
  }
  fit.nonzero_fraction = ks.empty() ? 0.0 : static_cast<double>(x.size()) / static_cast<double>(ks.size());
  if (x.empty()) {
    fit.exponent = -std::numeric_limits<double>::infinity();
    fit.verdict = SeriesVerdict::converges;
    return fit;
  }
  if (fit.nonzero_fraction < 0.5) {
    fit.exponent = std::numeric_limits<double>::quiet_NaN();
    fit.verdict = SeriesVerdict::inconclusive;
    return fit;
  }
  fit.exponent = linear_slope(x, y);
  fit.verdict = std::isnan(fit.exponent) ? SeriesVerdict::inconclusive : from_exponent(fit.exponent);
  return fit;
}

struct AnalyticReading {
  std::optional<SeriesVerdict> t1;
  std::optional<SeriesVerdict> t2;
  std::string reason;
};

AnalyticReading analytic_reading(const SequenceTraits& t, double m, double p) {
  AnalyticReading a;
  if (!t.limit_delta2 || *t.limit_delta2 <= 0.0) return a;
  const double e1 = m - p - 1.0;
  a.t1 = e1 < -1.0 ? SeriesVerdict::converges : SeriesVerdict::diverges;
  a.reason = "t1 ~ L^p k^" + std::to_string(e1);
  if (t.differences_second_order) {
    const double e2 = m - 1.0 - 2.0 * p;
    if (e2 < -1.0) a.t2 = SeriesVerdict::converges;
    a.reason += "; t2 = O(k^" + std::to_string(e2) + ")";
  } else if (t.jumps) {
    const auto& jumps = *t.jumps;
    auto log2_spike = [&](int l) { return p * jumps.log2_magnitude(l) + (m - 1.0) * jumps.log2_position(l); };
    const int lo = jumps.first_level + 50;
    const int hi = jumps.first_level + 60;
    if (log2_spike(hi) > log2_spike(lo) && log2_spike(hi) > 0.0) {
      a.t2 = SeriesVerdict::diverges;
      a.reason += "; t2 spikes grow without bound (log2 spike at level " + std::to_string(hi) + " = " +
                  std::to_string(log2_spike(hi)) + ")";
    } else {
      bool summable = true;
      for (int l = lo; l <= hi; ++l) summable = summable && log2_spike(l) <= -static_cast<double>(l);
      if (summable) a.t2 = SeriesVerdict::converges;
    }
  }
  return a;
}

double self_level_coefficient(const ScalarSequence& seq, double m, std::uint64_t t, std::uint64_t k) {
  const double kd = static_cast<double>(k);
  const double up = (static_cast<double>(t) + 1.0) * seq.delta2(k) / (kd + m);
  if (t == 0) return up;
  return up - static_cast<double>(t) * seq.delta2(k - 1) / (kd + m - 1.0);
}

}  // namespace

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::converges:
      return "converges";
    case SeriesVerdict::diverges:
      return "diverges";
    case SeriesVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(DecisionMethod m) {
  switch (m) {
    case DecisionMethod::analytic:
      return "analytic";
    case DecisionMethod::sampled:
      return "sampled";
    case DecisionMethod::essential_normality:
      return "essential-normality";
  }
  return "?";
}

CriterionTerms criterion_terms(const ScalarSequence& seq, std::size_t arity, double p, std::uint64_t k) {
  check_exponent(p);
  if (k == 0) throw std::invalid_argument("criterion terms start at k = 1");
  const double m = static_cast<double>(arity);
  const double kd = static_cast<double>(k);
  const double d = seq.delta2(k);
  const double prev = seq.delta2(k - 1);
  CriterionTerms out;
  out.t1 = std::pow(d, p) * std::pow(kd, m - p - 1.0);
  const double diff = std::abs(d - prev);
  out.t2 = diff == 0.0 ? 0.0 : std::pow(diff, p) * std::pow(kd, m - 1.0);
  return out;
}

SchattenVerdict decide(const ScalarSequence& seq, std::size_t arity, double p, std::uint64_t K) {
  check_exponent(p);
  if (K < 1000) throw std::invalid_argument("decide needs K >= 1000");
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
  SchattenVerdict v;
  v.p = p;
  v.arity = arity;
  v.horizon = K;
  v.compact = is_compact(seq, K).value;
  const double m = static_cast<double>(arity);

  if (std::isinf(p)) {
    const EssentialNormality en = is_essentially_normal(seq, K);
    v.method = DecisionMethod::essential_normality;
    v.verdict = en.verdict.value ? SeriesVerdict::converges : SeriesVerdict::diverges;
    v.sampled_verdict = v.verdict;
    v.reason = "S^inf = compact operators: commutators compact iff essentially normal (" +
               to_string(en.verdict.source) + ")";
    return v;
  }

  CompensatedSum s1, s2;
  std::vector<double> window_k, window_t1, window_t2;
  std::uint64_t next_checkpoint = 1;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const CriterionTerms t = criterion_terms(seq, arity, p, k);
    s1.add(t.t1);
    s2.add(t.t2);
    if (k == next_checkpoint || k == K) {
      v.checkpoints.push_back(k);
      v.partial_t1.push_back(s1.value());
      v.partial_t2.push_back(s2.value());
      if (k == next_checkpoint) next_checkpoint *= 2;
    }
    if (k >= K / 2) {
      window_k.push_back(static_cast<double>(k));
      window_t1.push_back(t.t1);
      window_t2.push_back(t.t2);
    }
  }
  v.fit_t1 = fit_window(window_k, window_t1);
  v.fit_t2 = fit_window(window_k, window_t2);
  v.sampled_verdict = combine(v.fit_t1.verdict, v.fit_t2.verdict);

  const AnalyticReading a = analytic_reading(seq.traits(), m, p);
  const bool analytic_diverges = a.t1 == SeriesVerdict::diverges || a.t2 == SeriesVerdict::diverges;
  const bool analytic_converges = a.t1 == SeriesVerdict::converges && a.t2 == SeriesVerdict::converges;
  if (analytic_diverges || analytic_converges) {
    v.method = DecisionMethod::analytic;
    v.verdict = analytic_diverges ? SeriesVerdict::diverges : SeriesVerdict::converges;
    v.reason = a.reason;
  } else {
    v.method = DecisionMethod::sampled;
    v.verdict = v.sampled_verdict;
    v.reason = "tail exponents over [K/2, K]: t1 " + std::to_string(v.fit_t1.exponent) + ", t2 " +
               std::to_string(v.fit_t2.exponent);
  }
  v.cutoff_consistent = v.compact || v.verdict != SeriesVerdict::converges || p > m;
  return v;
}

double level_norm(const SphericalShift& shift, std::size_t j, std::size_t l, double p, std::uint64_t k) {
  check_exponent(p);
  const std::size_t arity = shift.arity();
  if (j >= arity || l >= arity) throw std::out_of_range("axis out of range");
  const ScalarSequence& seq = shift.sequence();
  const double m = static_cast<double>(arity);
  CompensatedSum acc;
  if (j == l) {
    for (std::uint64_t t = 0; t <= k; ++t) {
      const double count = composition_count(k - t, arity - 1);
      if (count == 0.0) continue;
      acc.add(count * std::pow(std::abs(self_level_coefficient(seq, m, t, k)), p));
    }
    return acc.value();
  }
  if (k == 0) return 0.0;
  const double factor = std::pow(std::abs(shift.cross_level_factor(k)), p);
  if (factor == 0.0) return 0.0;
  for (std::uint64_t t = 1; t <= k; ++t) {
    for (std::uint64_t u = 0; u + t <= k; ++u) {
      const double count = composition_count(k - t - u, arity - 2);
      if (count == 0.0) continue;
      acc.add(count * std::pow(static_cast<double>(t) * static_cast<double>(u + 1), p / 2.0));
    }
  }
  return factor * acc.value();
}

double level_norm_enumerated(const SphericalShift& shift, std::size_t j, std::size_t l, double p, std::uint64_t k) {
  check_exponent(p);
  if (j >= shift.arity() || l >= shift.arity()) throw std::out_of_range("axis out of range");
  CompensatedSum acc;
  for (const MultiIndex& n : Level(shift.arity(), k)) {
    if (j == l) {
      acc.add(std::pow(std::abs(shift.self_comm_coeff(j, n)), p));
    } else if (auto entry = shift.cross_comm_coeff(j, l, n)) {
      acc.add(std::pow(std::abs(entry->coefficient), p));
    }
  }
  return acc.value();
}

double closed_form_norm(const SphericalShift& shift, std::size_t j, std::size_t l, double p, std::uint64_t K) {
  CompensatedSum acc;
  for (std::uint64_t k = 0; k <= K; ++k) acc.add(level_norm(shift, j, l, p, k));
  return acc.value();
}

double gram_schatten_sum(const DenseOperator& c, double p) {
  check_exponent(p);
  CompensatedSum acc;
  for (double s : gram_diagonal_singular_values(c)) acc.add(std::pow(s, p));
  return acc.value();
}

CutoffReport cutoff_check(const ScalarSequence& seq, std::size_t arity, const std::vector<double>& grid,
                          std::uint64_t K) {
  CutoffReport report;
  report.compact = is_compact(seq, K).value;
  if (report.compact) {
    report.skipped = true;
    return report;
  }
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const double m = static_cast<double>(arity);
  for (double p : sorted) {
    report.verdicts.push_back(decide(seq, arity, p, K));
    const SchattenVerdict& v = report.verdicts.back();
    if (v.verdict == SeriesVerdict::diverges) report.last_diverging = p;
    if (v.verdict == SeriesVerdict::converges) {
      if (!report.transition) report.transition = p;
      if (p <= m) report.consistent = false;
    }
  }
  return report;
}

std::vector<WitnessPoint> divergence_witness(const ScalarSequence& seq, std::size_t arity, double p, int max_level) {
  check_exponent(p);
  const auto& jumps = seq.traits().jumps;
  if (!jumps) throw std::invalid_argument("sequence '" + seq.name() + "' declares no lacunary jumps");
  const double m = static_cast<double>(arity);
  std::vector<WitnessPoint> points;
  for (int l = jumps->first_level; l <= max_level; ++l) {
    const double log2_pos = jumps->log2_position(l);
    if (log2_pos > 40.0) throw std::invalid_argument("jump level " + std::to_string(l) + " is out of reach");
    points.push_back({l, static_cast<std::uint64_t>(std::llround(std::exp2(log2_pos))), 0.0,
                      p * jumps->log2_magnitude(l) + (m - 1.0) * log2_pos});
  }
  CompensatedSum acc;
  std::uint64_t k = 1;
  for (auto& point : points) {
    for (; k <= point.k; ++k) acc.add(criterion_terms(seq, arity, p, k).t2);
    point.partial_sum = acc.value();
  }
  return points;
}

double lemma_pair_sum(std::size_t arity, double p, std::uint64_t k) {
  if (arity < 2) throw std::invalid_argument("the pair sum needs m >= 2");
  const double a = p / 2.0;
  CompensatedSum acc;
  if (arity == 2) {
    for (std::uint64_t t = 1; t < k; ++t) acc.add(std::pow(static_cast<double>(t), a) * std::pow(static_cast<double>(k - t), a));
    return acc.value();
  }
  if (arity == 3) {
    // sum_t t^a P(k - t), P(x) = sum_{u <= x} u^a
    std::vector<double> prefix(k + 1, 0.0);
    CompensatedSum running;
    for (std::uint64_t u = 0; u <= k; ++u) {
      running.add(u == 0 ? 0.0 : std::pow(static_cast<double>(u), a));
      prefix[u] = running.value();
    }
    for (std::uint64_t t = 1; t <= k; ++t) acc.add(std::pow(static_cast<double>(t), a) * prefix[k - t]);
    return acc.value();
  }
  for (std::uint64_t t = 1; t <= k; ++t) {
    for (std::uint64_t u = 1; u + t <= k; ++u) {
      acc.add(std::pow(static_cast<double>(t) * static_cast<double>(u), a) * composition_count(k - t - u, arity - 2));
    }
  }
  return acc.value();
}

double lemma_shift_sum(std::size_t arity, double p, double s, std::uint64_t k) {
  if (arity < 1) throw std::invalid_argument("arity must be at least 1");
  CompensatedSum acc;
  for (std::uint64_t t = 0; t <= k; ++t) {
    const double count = composition_count(k - t, arity - 1);
    if (count == 0.0) continue;
    acc.add(count * std::pow(std::abs(s * static_cast<double>(t) - 1.0), p));
  }
  return acc.value();
}

std::vector<LemmaWindow> asymptotic_lemma_check(std::size_t arity, double p, std::uint64_t k_lo, std::uint64_t k_hi,
                                                unsigned points) {
  if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("need 1 <= k_lo <= k_hi");
  if (points < 2) points = 2;
  std::vector<std::uint64_t> ks;
  for (unsigned i = 0; i < points; ++i) {
    const double x = static_cast<double>(k_lo) *
                     std::pow(static_cast<double>(k_hi) / static_cast<double>(k_lo), static_cast<double>(i) / (points - 1));
    const auto k = static_cast<std::uint64_t>(std::llround(x));
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  const double m = static_cast<double>(arity);

  struct Scale {
    std::string label;
    double (*s)(double k);
  };
  const std::vector<Scale> scales = {
      {"0", [](double) { return 0.0; }},
      {"1", [](double) { return 1.0; }},
      {"1/k", [](double k) { return 1.0 / k; }},
      {"6/k", [](double k) { return 6.0 / k; }},
  };

  std::vector<LemmaWindow> windows;
  auto finish = [&](LemmaWindow w) {
    w.min_ratio = *std::min_element(w.ratios.begin(), w.ratios.end());
    w.max_ratio = *std::max_element(w.ratios.begin(), w.ratios.end());
    windows.push_back(std::move(w));
  };

  if (arity >= 2) {
    LemmaWindow w{"pair-sum", "-", arity, p, ks, {}, 0.0, 0.0};
    for (auto k : ks) w.ratios.push_back(lemma_pair_sum(arity, p, k) / std::pow(static_cast<double>(k), p + m - 1.0));
    finish(std::move(w));
  }
  for (const auto& scale : scales) {
    LemmaWindow w{"shift-sum", scale.label, arity, p, ks, {}, 0.0, 0.0};
    for (auto k : ks) {
      const double kd = static_cast<double>(k);
      const double s = scale.s(kd);
      const double order = std::pow(kd, p + m - 1.0) * std::pow(std::abs(s), p) + std::pow(kd, m - 1.0);
      w.ratios.push_back(lemma_shift_sum(arity, p, s, k) / order);
    }
    finish(std::move(w));
  }
  return windows;
}

}  // namespace sphshift
