// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/classify.hpp"

#include <algorithm>
#include <cmath>

#include "sphshift/numeric.hpp"

namespace sphshift {

namespace {

// Exact scans for the essential-normality witness stop here.
constexpr std::uint64_t kExactDifferenceScan = 4096;

// Largest usable k when indices up to k + extra must exist.
std::uint64_t clip(const ScalarSequence& seq, std::uint64_t horizon, std::uint64_t extra) {
  if (!seq.domain_end()) return horizon;
  const std::uint64_t end = *seq.domain_end();
  if (end <= extra) throw OutOfRangeError("sequence '" + seq.name() + "' is too short for this check");
  return std::min(horizon, end - 1 - extra);
}

// table[q][k] = nabla^q f_k for k <= horizon, q = 0..qmax.
template <typename T>
std::vector<std::vector<T>> difference_tables(std::vector<T> f, unsigned qmax) {
  std::vector<std::vector<T>> tables;
  tables.push_back(std::move(f));
  for (unsigned q = 1; q <= qmax; ++q) {
    const auto& prev = tables.back();
    std::vector<T> next;
    next.reserve(prev.size() - 1);
    for (std::size_t k = 0; k + 1 < prev.size(); ++k) next.push_back(prev[k + 1] - prev[k]);
    tables.push_back(std::move(next));
  }
  return tables;
}

std::vector<std::vector<Rational>> exact_differences(const ScalarSequence& seq, unsigned qmax, std::uint64_t horizon) {
  return difference_tables(seq.gamma_exact_table(horizon + qmax + 1), qmax);
}

std::vector<std::vector<double>> float_differences(const ScalarSequence& seq, unsigned qmax, std::uint64_t horizon) {
  std::vector<double> g;
  for (std::uint64_t k = 0; k <= horizon + qmax; ++k) g.push_back(seq.gamma(k));
  return difference_tables(std::move(g), qmax);
}

// Relative tolerance for floating sign tests on nabla^q gamma.
double float_scale(const std::vector<double>& gamma) {
  double s = 0.0;
  for (double g : gamma) s = std::max(s, std::abs(g));
  return 1e-12 * s;
}

Verdict expansion_from(const std::vector<std::vector<Rational>>& d, unsigned q, std::uint64_t horizon) {
  Verdict v{true, VerdictSource::exact, horizon, std::nullopt, ""};
  for (std::uint64_t k = 0; k <= horizon; ++k) {
    const Rational& x = d[q][k];
    const bool ok = q % 2 == 0 ? x <= 0 : x >= 0;
    if (!ok) {
      v.value = false;
      v.witness_k = k;
      v.note = "(-1)^" + std::to_string(q) + " nabla^" + std::to_string(q) + " gamma_" + std::to_string(k) + " = " +
               to_string(Rational(q % 2 == 0 ? x : Rational(-x)));
      break;
    }
  }
  return v;
}

Verdict expansion_from(const std::vector<std::vector<double>>& d, unsigned q, std::uint64_t horizon) {
  Verdict v{true, VerdictSource::sampled, horizon, std::nullopt, ""};
  const double tol = float_scale(d[0]);
  for (std::uint64_t k = 0; k <= horizon; ++k) {
    const double signed_value = q % 2 == 0 ? d[q][k] : -d[q][k];
    if (signed_value > tol) {
      v.value = false;
      v.witness_k = k;
      break;
    }
  }
  return v;
}

}  // namespace

std::string to_string(VerdictSource source) {
  switch (source) {
    case VerdictSource::analytic:
      return "analytic";
    case VerdictSource::exact:
      return "exact";
    case VerdictSource::sampled:
      return "sampled";
  }
  return "?";
}

Verdict is_compact(const ScalarSequence& seq, std::uint64_t horizon) {
  const auto& t = seq.traits();
  if (t.limit_delta2) return {*t.limit_delta2 == 0.0, VerdictSource::analytic, 0, std::nullopt, "declared limit"};
  if (t.limsup_delta2) return {*t.limsup_delta2 == 0.0, VerdictSource::analytic, 0, std::nullopt, "declared limsup"};
  const std::uint64_t end = clip(seq, horizon, 0) + 1;
  const std::uint64_t tail_start = end - std::max<std::uint64_t>(1, end / 10);
  double head = 0.0, tail = 0.0;
  for (std::uint64_t k = 0; k < end; ++k) {
    double& slot = k < tail_start ? head : tail;
    slot = std::max(slot, seq.delta2(k));
  }
  // a negligible tail, or a clear power-law decay over [K/2, K]
  std::vector<double> ks, values;
  for (std::uint64_t k = std::max<std::uint64_t>(1, end / 2); k < end; ++k) {
    ks.push_back(static_cast<double>(k));
    values.push_back(seq.delta2(k));
  }
  const double slope = loglog_slope(ks, values);
  const double scale = std::max(head, tail);
  const bool negligible = tail <= 1e-6 * scale;
  const bool decaying = !std::isnan(slope) && slope <= -0.5 && tail <= 1e-2 * scale;
  Verdict v{negligible || decaying, VerdictSource::sampled, end - 1, std::nullopt, ""};
  v.note = "tail max delta^2 = " + std::to_string(tail) + ", tail log-log slope = " + std::to_string(slope);
  return v;
}

EssentialNormality is_essentially_normal(const ScalarSequence& seq, std::uint64_t horizon, std::uint64_t window) {
  EssentialNormality out;
  const std::uint64_t last = clip(seq, horizon, 0);
  if (window == 0) window = std::max<std::uint64_t>(1, last / 10);
  const std::uint64_t start = last > window ? last - window : 1;
  double prev = seq.delta2(start - 1);
  for (std::uint64_t k = start; k <= last; ++k) {
    const double cur = seq.delta2(k);
    out.tail_max_difference = std::max(out.tail_max_difference, std::abs(cur - prev));
    prev = cur;
  }

  const auto& t = seq.traits();
  if (t.essentially_normal) {
    out.verdict = {*t.essentially_normal, VerdictSource::analytic, 0, std::nullopt, "declared by the family"};
  } else {
    out.verdict = {out.tail_max_difference <= 1e-3, VerdictSource::sampled, last, std::nullopt, ""};
    out.verdict.note = "tail max |delta^2_k - delta^2_{k-1}| = " + std::to_string(out.tail_max_difference) +
                       " over k in [" + std::to_string(start) + ", " + std::to_string(last) + "]";
  }

  if (!out.verdict.value && seq.has_exact()) {
    const std::uint64_t scan = std::min(last, kExactDifferenceScan);
    Rational prev_exact = *seq.delta2_exact(0);
    for (std::uint64_t k = 1; k <= scan; ++k) {
      Rational cur = *seq.delta2_exact(k);
      Rational diff = abs(Rational(cur - prev_exact));
      if (!out.min_difference || diff < *out.min_difference) {
        out.min_difference = diff;
        out.verdict.witness_k = k - 1;
      }
      prev_exact = std::move(cur);
    }
  }
  return out;
}

Verdict is_hyponormal(const ScalarSequence& seq, std::uint64_t horizon) {
  const std::uint64_t last = clip(seq, horizon, 0);
  if (seq.has_exact()) {
    Verdict v{true, VerdictSource::exact, last, std::nullopt, ""};
    Rational prev = *seq.delta2_exact(0);
    for (std::uint64_t k = 1; k <= last; ++k) {
      Rational cur = *seq.delta2_exact(k);
      if (cur < prev) {
        v.value = false;
        v.witness_k = k - 1;
        v.note = "delta^2 drops from " + to_string(prev) + " to " + to_string(cur);
        break;
      }
      prev = std::move(cur);
    }
    return v;
  }
  if (const auto& mono = seq.traits().monotonicity) {
    return {*mono != Monotonicity::nonincreasing, VerdictSource::analytic, 0, std::nullopt, "declared monotonicity"};
  }
  Verdict v{true, VerdictSource::sampled, last, std::nullopt, ""};
  double prev = seq.delta2(0);
  for (std::uint64_t k = 1; k <= last; ++k) {
    const double cur = seq.delta2(k);
    if (cur < prev) {
      v.value = false;
      v.witness_k = k - 1;
      break;
    }
    prev = cur;
  }
  return v;
}

Verdict is_szego(const ScalarSequence& seq, std::uint64_t horizon) {
  const std::uint64_t last = clip(seq, horizon, 0);
  const bool exact = seq.has_exact();
  Verdict v{true, exact ? VerdictSource::exact : VerdictSource::sampled, last, std::nullopt, ""};
  for (std::uint64_t k = 0; k <= last; ++k) {
    const bool one = exact ? *seq.delta2_exact(k) == 1 : seq.delta2(k) == 1.0;
    if (!one) {
      v.value = false;
      v.witness_k = k;
      break;
    }
  }
  return v;
}

QIsometryOrder q_isometry_order(const ScalarSequence& seq, unsigned qmax, std::uint64_t horizon) {
  if (qmax == 0) throw std::invalid_argument("qmax must be at least 1");
  QIsometryOrder out;
  out.horizon = clip(seq, horizon, qmax);
  if (seq.has_exact()) {
    out.definitive = true;
    const auto d = exact_differences(seq, qmax, out.horizon);
    for (unsigned q = 1; q <= qmax && !out.order; ++q) {
      if (std::all_of(d[q].begin(), d[q].begin() + static_cast<std::ptrdiff_t>(out.horizon) + 1,
                      [](const Rational& x) { return x == 0; }))
        out.order = q;
    }
    return out;
  }
  const auto d = float_differences(seq, qmax, out.horizon);
  const double tol = float_scale(d[0]);
  for (unsigned q = 1; q <= qmax && !out.order; ++q) {
    if (std::all_of(d[q].begin(), d[q].begin() + static_cast<std::ptrdiff_t>(out.horizon) + 1,
                    [tol](double x) { return std::abs(x) <= tol; }))
      out.order = q;
  }
  return out;
}

Verdict is_q_expansion(const ScalarSequence& seq, unsigned q, std::uint64_t horizon) {
  if (q == 0) throw std::invalid_argument("q must be at least 1");
  const std::uint64_t last = clip(seq, horizon, q);
  if (seq.has_exact()) return expansion_from(exact_differences(seq, q, last), q, last);
  return expansion_from(float_differences(seq, q, last), q, last);
}

unsigned complete_hyperexpansion_up_to(const ScalarSequence& seq, unsigned qmax, std::uint64_t horizon) {
  if (qmax == 0) return 0;
  const std::uint64_t last = clip(seq, horizon, qmax);
  unsigned reached = 0;
  if (seq.has_exact()) {
    const auto d = exact_differences(seq, qmax, last);
    while (reached < qmax && expansion_from(d, reached + 1, last).value) ++reached;
  } else {
    const auto d = float_differences(seq, qmax, last);
    while (reached < qmax && expansion_from(d, reached + 1, last).value) ++reached;
  }
  return reached;
}

SubnormalConsistency subnormal_consistency(const ScalarSequence& seq, unsigned max_order, std::uint64_t horizon) {
  if (max_order == 0) throw std::invalid_argument("order must be at least 1");
  SubnormalConsistency out;
  out.order = max_order;
  out.horizon = clip(seq, horizon, max_order);
  const std::uint64_t count = out.horizon + max_order + 1;

  if (seq.has_exact()) {
    Rational scale;
    if (seq.traits().sup_delta2) {
      scale = *seq.traits().sup_delta2;
    } else {
      const BoundedVerdict b = seq.is_bounded(std::max<std::uint64_t>(count, horizon));
      if (b.status == BoundedStatus::no_evidence)
        throw UnboundedSequenceError("sequence '" + seq.name() + "' shows no sign of a finite sup delta");
      scale = 0;
      for (std::uint64_t k = 0; k + 1 < count; ++k) scale = std::max(scale, *seq.delta2_exact(k));
    }
    out.exact = true;
    out.scale = to_string(scale);
    std::vector<Rational> g = seq.gamma_exact_table(count);
    Rational factor = 1;
    for (auto& x : g) {
      x /= factor;
      factor *= scale;
    }
    const auto d = difference_tables(std::move(g), max_order);
    for (unsigned p = 1; p <= max_order && !out.witness; ++p) {
      for (std::uint64_t k = 0; k <= out.horizon; ++k) {
        const Rational signed_value = p % 2 == 0 ? d[p][k] : Rational(-d[p][k]);
        if (signed_value < 0) {
          out.witness = SubnormalConsistency::Witness{p, k, to_string(signed_value), to_double(signed_value)};
          break;
        }
      }
    }
  } else {
    const BoundedVerdict b = seq.is_bounded(std::max<std::uint64_t>(count, horizon));
    if (b.status == BoundedStatus::no_evidence)
      throw UnboundedSequenceError("sequence '" + seq.name() + "' shows no sign of a finite sup delta");
    const double scale = b.sup_delta2;
    out.scale = std::to_string(scale);
    std::vector<double> g;
    for (std::uint64_t k = 0; k < count; ++k)
      g.push_back(std::exp(2.0 * seq.log_bbeta(k) - static_cast<double>(k) * std::log(scale)));
    const double tol = float_scale(g);
    const auto d = difference_tables(std::move(g), max_order);
    for (unsigned p = 1; p <= max_order && !out.witness; ++p) {
      for (std::uint64_t k = 0; k <= out.horizon; ++k) {
        const double signed_value = p % 2 == 0 ? d[p][k] : -d[p][k];
        if (signed_value < -tol) {
          out.witness = SubnormalConsistency::Witness{p, k, std::to_string(signed_value), signed_value};
          break;
        }
      }
    }
  }
  out.passed = !out.witness;
  return out;
}

Classification classify(const ScalarSequence& seq, const ClassifyOptions& options) {
  Classification c;
  c.bounded = seq.is_bounded(options.sampled_horizon);
  c.compact = is_compact(seq, options.sampled_horizon);
  c.essentially_normal = is_essentially_normal(seq, options.sampled_horizon);
  c.szego = is_szego(seq, options.exact_horizon);
  c.hyponormal = is_hyponormal(seq, options.exact_horizon);
  c.q_isometry = q_isometry_order(seq, options.max_q, options.exact_horizon);
  for (unsigned q = 1; q <= options.max_q; ++q) c.q_expansion.emplace_back(q, is_q_expansion(seq, q, options.exact_horizon));
  c.complete_hyperexpansion_up_to = complete_hyperexpansion_up_to(seq, options.max_q, options.exact_horizon);
  c.subnormal = subnormal_consistency(seq, options.max_subnormal_order, options.exact_horizon);
  return c;
}

}  // namespace sphshift
