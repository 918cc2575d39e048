// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/report.hpp"

#include <cmath>

namespace sphshift {

namespace {

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

template <typename T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(const Verdict& v) {
  Json j;
  j["value"] = v.value;
  j["source"] = to_string(v.source);
  j["horizon"] = v.horizon;
  j["witness_k"] = optional_json(v.witness_k);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const BoundedVerdict& v) {
  Json j;
  switch (v.status) {
    case BoundedStatus::family_declared:
      j["status"] = "declared";
      break;
    case BoundedStatus::yes:
      j["status"] = "sampled-bounded";
      break;
    case BoundedStatus::no_evidence:
      j["status"] = "no-evidence";
      break;
  }
  j["sup_delta2"] = number(v.sup_delta2);
  j["horizon"] = v.horizon;
  return j;
}

Json to_json(const EssentialNormality& e) {
  Json j = to_json(e.verdict);
  j["min_difference"] = e.min_difference ? Json(to_string(*e.min_difference)) : Json(nullptr);
  j["tail_max_difference"] = number(e.tail_max_difference);
  return j;
}

Json to_json(const QIsometryOrder& q) {
  Json j;
  j["order"] = optional_json(q.order);
  j["definitive"] = q.definitive;
  j["horizon"] = q.horizon;
  return j;
}

Json to_json(const SubnormalConsistency& s) {
  Json j;
  j["passed"] = s.passed;
  j["order"] = s.order;
  j["horizon"] = s.horizon;
  j["exact"] = s.exact;
  j["scale_delta2"] = s.scale;
  if (s.witness) {
    j["witness"] = {{"p", s.witness->p}, {"k", s.witness->k}, {"value", s.witness->value},
                    {"value_approx", number(s.witness->value_approx)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["bounded"] = to_json(c.bounded);
  j["compact"] = to_json(c.compact);
  j["essentially_normal"] = to_json(c.essentially_normal);
  j["szego"] = to_json(c.szego);
  j["hyponormal"] = to_json(c.hyponormal);
  j["q_isometry"] = to_json(c.q_isometry);
  Json expansions = Json::array();
  for (const auto& [q, v] : c.q_expansion) {
    Json e = to_json(v);
    e["q"] = q;
    expansions.push_back(std::move(e));
  }
  j["q_expansion"] = std::move(expansions);
  j["complete_hyperexpansion_up_to"] = c.complete_hyperexpansion_up_to;
  j["subnormal"] = to_json(c.subnormal);
  return j;
}

Json to_json(const RadiusEstimate& r, bool with_sequences) {
  Json j;
  j["value"] = number(r.value);
  j["tier"] = to_string(r.tier);
  j["unbounded"] = r.unbounded;
  j["horizon"] = r.horizon;
  j["spread"] = number(r.spread);
  j["stabilisation"] = numbers(r.stabilisation);
  if (with_sequences) j["sequence"] = numbers(r.sequence);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const InnerRadiusEstimate& r, bool with_sequences) {
  Json j = to_json(static_cast<const RadiusEstimate&>(r), with_sequences);
  Json m;
  m["value"] = number(r.m_infinity);
  m["check_horizon"] = r.check_horizon;
  m["max_rel_deviation"] = number(r.m_infinity_max_rel_deviation);
  if (with_sequences) {
    m["sequence"] = numbers(r.m_infinity_sequence);
    m["inner_sequence"] = numbers(r.inner_check_sequence);
  }
  j["m_infinity"] = std::move(m);
  return j;
}

Json to_json(const EssentialShell& s) {
  Json j;
  j["inner"] = number(s.inner);
  j["outer"] = number(s.outer);
  j["tier"] = to_string(s.tier);
  j["gate"] = to_string(s.gate);
  j["window"] = {s.window_start, s.window_end};
  return j;
}

Json to_json(const PointSpectrumResult& p) {
  Json j;
  j["boundary"] = to_string(p.boundary);
  j["heuristic"] = true;
  j["r"] = number(p.r);
  j["tail_exponent"] = number(p.tail_exponent);
  j["early_tail_exponent"] = number(p.early_tail_exponent);
  return j;
}

Json to_json(const SpectralReport& s, bool with_sequences) {
  Json j;
  j["R"] = to_json(s.R, with_sequences);
  j["r"] = to_json(s.r, with_sequences);
  j["i"] = to_json(s.i, with_sequences);
  j["ordering_holds"] = s.ordering_holds;
  j["essentially_normal"] = to_json(s.essential_normality);
  j["essential_shell"] = s.essential ? to_json(*s.essential) : Json(nullptr);
  if (!s.essential_refusal.empty()) j["essential_refusal"] = s.essential_refusal;
  j["point_spectrum"] = to_json(s.point_spectrum);
  return j;
}

Json to_json(const SchattenVerdict& v) {
  Json j;
  j["p"] = number(v.p);
  j["m"] = v.arity;
  j["horizon"] = v.horizon;
  j["verdict"] = to_string(v.verdict);
  j["method"] = to_string(v.method);
  j["sampled_verdict"] = to_string(v.sampled_verdict);
  j["tail_exponent"] = {{"t1", number(v.fit_t1.exponent)}, {"t2", number(v.fit_t2.exponent)}};
  j["nonzero_fraction"] = {{"t1", number(v.fit_t1.nonzero_fraction)}, {"t2", number(v.fit_t2.nonzero_fraction)}};
  Json partial = Json::array();
  for (std::size_t i = 0; i < v.checkpoints.size(); ++i)
    partial.push_back({{"k", v.checkpoints[i]}, {"t1", number(v.partial_t1[i])}, {"t2", number(v.partial_t2[i])}});
  j["partial_sums"] = std::move(partial);
  j["compact"] = v.compact;
  j["cutoff_consistent"] = v.cutoff_consistent;
  j["reason"] = v.reason;
  return j;
}

Json to_json(const CutoffReport& c) {
  Json j;
  j["compact"] = c.compact;
  j["skipped"] = c.skipped;
  if (c.skipped) j["tag"] = "compact";
  j["transition"] = c.transition ? number(*c.transition) : Json(nullptr);
  j["last_diverging"] = c.last_diverging ? number(*c.last_diverging) : Json(nullptr);
  j["consistent"] = c.consistent;
  Json vs = Json::array();
  for (const auto& v : c.verdicts) {
    vs.push_back({{"p", number(v.p)}, {"verdict", to_string(v.verdict)}, {"method", to_string(v.method)},
                  {"sampled_verdict", to_string(v.sampled_verdict)}});
  }
  j["verdicts"] = std::move(vs);
  return j;
}

Json to_json(const WitnessPoint& w) {
  return {{"level", w.level}, {"k", w.k}, {"partial_sum", number(w.partial_sum)}, {"log2_bound", number(w.log2_bound)}};
}

Json to_json(const LemmaWindow& w) {
  Json j;
  j["sum"] = w.lemma;
  j["s"] = w.s_label;
  j["m"] = w.arity;
  j["p"] = number(w.p);
  j["min_ratio"] = number(w.min_ratio);
  j["max_ratio"] = number(w.max_ratio);
  j["spread"] = number(w.spread());
  Json samples = Json::array();
  for (std::size_t i = 0; i < w.ks.size(); ++i) samples.push_back({w.ks[i], number(w.ratios[i])});
  j["samples"] = std::move(samples);
  return j;
}

Json report_envelope(const std::string& command, const Json& request) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["request"] = request;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sphshift
