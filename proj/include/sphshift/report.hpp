// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sphshift/classify.hpp"
#include "sphshift/schatten.hpp"
#include "sphshift/spectra.hpp"

namespace sphshift {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kReportSchema = "sphshift.report/1";

/// Finite doubles as numbers; inf / nan as the strings "inf", "-inf", "nan".
Json number(double x);

Json to_json(const Verdict& v);
Json to_json(const BoundedVerdict& v);
Json to_json(const EssentialNormality& e);
Json to_json(const QIsometryOrder& q);
Json to_json(const SubnormalConsistency& s);
Json to_json(const Classification& c);

/// `with_sequences` controls whether the per-j sampled sequences are embedded.
Json to_json(const RadiusEstimate& r, bool with_sequences = true);
Json to_json(const InnerRadiusEstimate& r, bool with_sequences = true);
Json to_json(const EssentialShell& s);
Json to_json(const PointSpectrumResult& p);
Json to_json(const SpectralReport& s, bool with_sequences = true);

Json to_json(const SchattenVerdict& v);
Json to_json(const CutoffReport& c);
Json to_json(const WitnessPoint& w);
Json to_json(const LemmaWindow& w);

/// Envelope shared by every CLI report: schema, tool version, the request echo.
Json report_envelope(const std::string& command, const Json& request);

/// Pretty-printed with a trailing newline; byte-identical for identical input.
std::string dump(const Json& j);

}  // namespace sphshift
