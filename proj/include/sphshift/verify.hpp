// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sphshift/report.hpp"

namespace sphshift {

struct OracleRow {
  std::string family;
  std::size_t arity = 2;
  std::string kind;
  double max_deviation = 0.0;
  std::size_t compared_columns = 0;
  bool passed = false;
};

struct SchattenOracleRow {
  std::string family;
  std::size_t arity = 2;
  std::string kind;
  double p = 1.0;
  double closed_form = 0.0;
  double gram_sum = 0.0;
  double rel_deviation = 0.0;
  bool passed = false;
};

struct VerificationOptions {
  unsigned N = 10;
  double abs_tolerance = 1e-10;
  double rel_tolerance = 1e-8;
  std::vector<double> exponents{1.0, 2.0, 4.0};
  unsigned max_order = 3;  ///< Q_T^k and B_q for k, q <= max_order
};

struct VerificationReport {
  std::vector<OracleRow> oracle;
  std::vector<SchattenOracleRow> schatten;
  bool passed = true;
};

/// Every registered family at arity m against the matrix oracles on the
/// truncation |n| <= N: commutators, Q_T^k, B_q, and the S^p sums of the
/// commutators restricted to levels <= N - 1.
VerificationReport run_verification(std::size_t arity, const VerificationOptions& options);

Json to_json(const VerificationReport& r);

}  // namespace sphshift
