// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sphshift/classify.hpp"
#include "sphshift/families.hpp"
#include "sphshift/schatten.hpp"
#include "sphshift/spectra.hpp"
#include "sphshift/verify.hpp"

namespace {

using namespace sphshift;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && seconds > limit_seconds) {
    std::ostringstream s;
    s << "runtime " << seconds << " s over " << limit_seconds << " s";
    out.require(false, s.str());
  }
  if (!out.ok) ++failures;
  std::printf("%s [%2d] %s (%.2f s)", out.ok ? "PASS" : "FAIL", id, title.c_str(), seconds);
  std::string d = out.detail.str();
  while (!d.empty() && (d.back() == ' ' || d.back() == ';')) d.pop_back();
  if (!d.empty()) std::printf(" -- %s", d.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

ScalarSequence hp(std::size_t m, Rational p) { return make_sequence(HpSpace{m, p}); }

ScalarSequence undeclared(const ScalarSequence& s) {
  return ScalarSequence(s.name() + "-undeclared", [s](std::uint64_t k) { return s.delta2(k); }, nullptr, {});
}

bool is_integer(const Rational& p) { return denominator(p) == 1; }

void oracle_equivalence(Outcome& out) {
  std::size_t rows = 0;
  double worst = 0.0;
  for (std::size_t m : {2, 3}) {
    VerificationOptions o;
    o.exponents.clear();
    const auto report = run_verification(m, o);
    for (const auto& row : report.oracle) {
      ++rows;
      worst = std::max(worst, row.max_deviation);
      out.require(row.passed && row.max_deviation <= 1e-10,
                  row.family + " m=" + std::to_string(m) + " " + row.kind + " deviation " + fmt(row.max_deviation));
    }
  }
  out.require(rows > 0, "no oracle rows");
  if (out.ok) out.detail << rows << " comparisons, max abs deviation " << fmt(worst);
}

void schatten_oracle(Outcome& out) {
  std::size_t rows = 0;
  double worst = 0.0;
  for (std::size_t m : {2, 3}) {
    VerificationOptions o;
    o.exponents = {1.0, 2.0, 4.0};
    const auto report = run_verification(m, o);
    for (const auto& row : report.schatten) {
      ++rows;
      worst = std::max(worst, row.rel_deviation);
      out.require(row.passed && row.rel_deviation <= 1e-8, row.family + " m=" + std::to_string(m) + " p=" +
                                                                fmt(row.p) + " rel deviation " + fmt(row.rel_deviation));
    }
  }
  out.require(rows > 0, "no schatten rows");
  if (out.ok) out.detail << rows << " comparisons, max rel deviation " << fmt(worst);
}

void cutoff_reproduction(Outcome& out) {
  std::size_t verdicts = 0, sampled_agree = 0;
  for (std::size_t m : {2, 3}) {
    const double md = static_cast<double>(m);
    const std::vector<double> grid{1.0, md / 2 + 0.5, md - 0.5, md, md + 0.25, md + 1.0};
    for (std::size_t offset : {0, 1, 2}) {
      const auto seq = hp(m, Rational(static_cast<long>(m + offset)));
      for (double p : grid) {
        const auto v = decide(seq, m, p, 100000);
        ++verdicts;
        if (v.sampled_verdict == v.verdict) ++sampled_agree;
        const std::string where = seq.name() + " p=" + fmt(p);
        if (p <= md) out.require(v.verdict == SeriesVerdict::diverges, where + " gave " + to_string(v.verdict));
        if (p >= md + 0.25) out.require(v.verdict == SeriesVerdict::converges, where + " gave " + to_string(v.verdict));
      }
    }
  }
  out.detail << verdicts << " verdicts; sampled reading agrees on " << sampled_agree;
}

void classification_table(Outcome& out) {
  const std::uint64_t horizon = 200;
  std::size_t cells = 0;
  for (std::size_t m : {2, 3}) {
    const Rational mr(static_cast<long>(m));
    std::vector<Rational> grid{mr - Rational(3, 2), mr - 1, mr - Rational(1, 2), mr + Rational(1, 2), mr + 1};
    for (std::size_t a = 1; a <= m; ++a) grid.push_back(Rational(static_cast<long>(a)));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const Rational& p : grid) {
      if (p <= 0) continue;
      const auto seq = hp(m, p);
      const std::string where = seq.name();

      const Verdict hypo = is_hyponormal(seq, horizon);
      out.require(hypo.source == VerdictSource::exact, where + " hyponormal not exact");
      out.require(hypo.value == (p >= mr), where + " hyponormal=" + (hypo.value ? "true" : "false"));

      const Verdict exp2 = is_q_expansion(seq, 2, horizon);
      out.require(exp2.source == VerdictSource::exact, where + " 2-expansion not exact");
      const bool want2 = mr - 1 <= p && p <= mr;
      out.require(exp2.value == want2, where + " 2-expansion=" + (exp2.value ? "true" : "false"));

      const auto iso = q_isometry_order(seq, static_cast<unsigned>(m) + 2, horizon);
      if (is_integer(p) && p <= mr) {
        const auto want = static_cast<unsigned>(m) - static_cast<unsigned>(numerator(p).convert_to<long>()) + 1;
        out.require(iso.order && *iso.order == want && iso.definitive,
                    where + " q-isometry order " + (iso.order ? std::to_string(*iso.order) : "none") +
                        ", expected " + std::to_string(want));
      } else {
        out.require(!iso.order, where + " unexpected q-isometry order " + std::to_string(iso.order.value_or(0)));
      }
      ++cells;
    }
  }
  if (out.ok) out.detail << cells << " grid points, exact path at horizon " << horizon;
}

void rho_eta(Outcome& out) {
  const auto seq = make_sequence(RhoEta{});
  const std::uint64_t K = 65536;
  out.require(is_hyponormal(seq, K).value, "not hyponormal");
  out.require(is_essentially_normal(seq, K).verdict.value, "not essentially normal");
  out.require(!is_compact(seq, K).value, "compact");
  for (double p : {1.0, 2.0, 4.0, 8.0}) {
    const auto v = decide(seq, 2, p, K);
    out.require(v.verdict == SeriesVerdict::diverges, "p=" + fmt(p) + " gave " + to_string(v.verdict));
    const auto points = divergence_witness(seq, 2, p, 4);
    double previous = -1.0;
    int checked = 0;
    for (const auto& w : points) {
      if (w.level < 1) {
        previous = w.partial_sum;
        continue;
      }
      const double bound = std::exp2(std::exp2(w.level) - w.level * p);
      out.require(w.partial_sum > previous, "p=" + fmt(p) + " partial sum not increasing at l=" + std::to_string(w.level));
      out.require(w.partial_sum >= bound, "p=" + fmt(p) + " l=" + std::to_string(w.level) + " sum " +
                                              fmt(w.partial_sum) + " below " + fmt(bound));
      previous = w.partial_sum;
      ++checked;
    }
    out.require(checked == 4, "p=" + fmt(p) + " witness covers " + std::to_string(checked) + " levels");
  }
}

void alternating_twelve(Outcome& out) {
  const auto seq = make_sequence(AlternatingTwelve{});
  const std::uint64_t horizon = 200;
  const auto en = is_essentially_normal(seq, horizon);
  out.require(!en.verdict.value, "reported essentially normal");
  out.require(en.min_difference && *en.min_difference == Rational(1, 12), "min difference is not 1/12");
  for (std::uint64_t k = 0; k < horizon; ++k) {
    Rational d = *seq.delta2_exact(k + 1) - *seq.delta2_exact(k);
    if (d < 0) d = -d;
    if (d != Rational(1, 12)) {
      out.require(false, "|delta2 difference| at k=" + std::to_string(k) + " is " + to_string(d));
      break;
    }
  }
  if (out.ok) out.detail << "|delta2_{k+1} - delta2_k| = 1/12 for k < " << horizon;
}

void spectral_radii(Outcome& out) {
  const std::uint64_t K = 100000;
  for (std::size_t m : {2, 3}) {
    std::vector<ScalarSequence> families;
    for (const auto& f : registry(m))
      if (std::holds_alternative<HpSpace>(f.spec)) families.push_back(make_sequence(f.spec));
    for (std::size_t offset : {1, 2}) families.push_back(hp(m, Rational(static_cast<long>(m + offset))));
    for (const auto& seq : families) {
      const auto R = outer_radius(seq, 60, K);
      const auto r = convergence_radius(seq, K);
      const auto i = inner_radius(seq, m, 60, K, 1000);
      for (const RadiusEstimate* e : {&R, &r, static_cast<const RadiusEstimate*>(&i)})
        out.require(e->tier == EstimateTier::analytic && e->value == 1.0,
                    seq.name() + " analytic radius " + fmt(e->value) + " (" + to_string(e->tier) + ")");

      const auto s = undeclared(seq);
      const auto Rs = outer_radius(s, 60, K);
      const auto rs = convergence_radius(s, K);
      const auto is = inner_radius(s, m, 60, K, 1000);
      for (const auto& [label, e] : {std::pair<const char*, const RadiusEstimate*>{"R", &Rs}, {"r", &rs}, {"i", &is}})
        out.require(e->tier == EstimateTier::extrapolated && std::abs(e->value - 1.0) <= 1e-3,
                    s.name() + " m=" + std::to_string(m) + " sampled " + label + "=" + fmt(e->value) + " (" +
                        to_string(e->tier) + ")");
    }

    for (const Rational& c : {Rational(3, 4), Rational(2), Rational(5, 3)}) {
      const auto seq = make_sequence(ConstantDelta{c});
      SpectraOptions o;
      o.K = 20000;
      o.m_infinity_horizon = 1000;
      const auto rep = spectral_report(seq, m, o);
      const double want = to_double(c);
      out.require(rep.R.value == want && rep.r.value == want && rep.i.value == want,
                  seq.name() + " radii " + fmt(rep.R.value) + "," + fmt(rep.r.value) + "," + fmt(rep.i.value));
    }

    double worst_m_inf = 0.0;
    for (const auto& f : registry(m)) {
      const auto seq = make_sequence(f.spec);
      SpectraOptions o;
      o.K = 20000;
      o.m_infinity_horizon = 2000;
      const auto rep = spectral_report(seq, m, o);
      out.require(rep.ordering_holds, f.name + " m=" + std::to_string(m) + " violates i <= r <= R (" +
                                          fmt(rep.i.value) + ", " + fmt(rep.r.value) + ", " + fmt(rep.R.value) + ")");
      out.require(rep.i.m_infinity_sequence.size() == rep.i.inner_check_sequence.size() &&
                      !rep.i.m_infinity_sequence.empty(),
                  f.name + " m_infinity sequence missing");
      out.require(rep.i.m_infinity_max_rel_deviation <= 1e-9,
                  f.name + " m_infinity deviation " + fmt(rep.i.m_infinity_max_rel_deviation));
      worst_m_inf = std::max(worst_m_inf, rep.i.m_infinity_max_rel_deviation);
    }
    if (out.ok) out.detail << "m=" << m << " max m_infinity rel deviation " << fmt(worst_m_inf) << "; ";
  }
}

void essential_shell_check(Outcome& out) {
  for (std::size_t m : {2, 3}) {
    const auto bergman = hp(m, Rational(static_cast<long>(m + 1)));
    const auto shell = essential_shell(undeclared(bergman), 100000, 10000);
    out.require(std::abs(shell.inner - 1.0) <= 1e-3 && std::abs(shell.outer - 1.0) <= 1e-3,
                "sampled bergman m=" + std::to_string(m) + " shell (" + fmt(shell.inner) + ", " + fmt(shell.outer) + ")");
    const auto declared = essential_shell(bergman, 100000, 10000);
    out.require(std::abs(declared.inner - 1.0) <= 1e-3 && std::abs(declared.outer - 1.0) <= 1e-3,
                "bergman m=" + std::to_string(m) + " shell (" + fmt(declared.inner) + ", " + fmt(declared.outer) + ")");
  }
  bool refused = false;
  try {
    essential_shell(make_sequence(AlternatingTwelve{}), 100000, 10000);
  } catch (const NotEssentiallyNormalError&) {
    refused = true;
  }
  out.require(refused, "alternating-twelve was not refused");
}

void lemma_windows(Outcome& out) {
  double worst = 0.0;
  std::string pooled;
  for (std::size_t m : {2, 3}) {
    for (double p : {1.0, 2.0}) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (const auto& w : asymptotic_lemma_check(m, p, 100, 10000)) {
        const std::string where = w.lemma + " m=" + std::to_string(m) + " p=" + fmt(p) + " s=" + w.s_label;
        out.require(w.min_ratio > 0.0 && std::isfinite(w.max_ratio), where + " degenerate window");
        out.require(w.spread() <= 5.0, where + " max/min " + fmt(w.spread()));
        worst = std::max(worst, w.spread());
        if (w.lemma == "shift-sum") {
          lo = std::min(lo, w.min_ratio);
          hi = std::max(hi, w.max_ratio);
        }
      }
      pooled += " m=" + std::to_string(m) + ",p=" + fmt(p) + ":" + fmt(hi / lo);
    }
  }
  out.detail << "worst per-window max/min " << fmt(worst) << "; shift-sum pooled over s (info):" << pooled;
}

void subnormality(Outcome& out) {
  for (std::size_t m : {2, 3}) {
    const Rational mr(static_cast<long>(m));
    for (const Rational& p : {mr, Rational(mr + 1)}) {
      const auto c = subnormal_consistency(hp(m, p), 8, 200);
      out.require(c.passed && c.exact && !c.witness, hp(m, p).name() + " failed subnormal consistency");
    }
    const auto da = subnormal_consistency(hp(m, 1), 8, 200);
    out.require(!da.passed && da.witness, "drury-arveson m=" + std::to_string(m) + " has no witness");
    if (da.witness)
      out.detail << "m=" << m << " DA witness p=" << da.witness->p << " k=" << da.witness->k << " value "
                 << da.witness->value << "; ";
  }
}

}  // namespace

int main() {
  criterion(1, "closed form vs matrix oracles, all families, m in {2,3}, N=10", 10.0, oracle_equivalence);
  criterion(2, "Schatten sums vs gram singular values, p in {1,2,4}", 10.0, schatten_oracle);
  criterion(3, "S^p cut-off for H_p, p_space in {m,m+1,m+2}, K=1e5", 30.0, cutoff_reproduction);
  criterion(4, "H_p classification table, exact", 0.0, classification_table);
  criterion(5, "rho-eta: hyponormal, essentially normal, not compact, no S^p", 60.0, rho_eta);
  criterion(6, "alternating-twelve: not essentially normal, jumps of 1/12", 0.0, alternating_twelve);
  criterion(7, "spectral radii i = r = R and m_infinity cross-check", 0.0, spectral_radii);
  criterion(8, "essential shell and its gate", 0.0, essential_shell_check);
  criterion(9, "pair-sum and shift-sum windows, max/min <= 5", 30.0, lemma_windows);
  criterion(10, "subnormal consistency to P=8, K=200", 0.0, subnormality);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
