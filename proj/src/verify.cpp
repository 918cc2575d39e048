// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/verify.hpp"

#include <algorithm>
#include <cmath>

#include "sphshift/families.hpp"
#include "sphshift/numeric.hpp"
#include "sphshift/schatten.hpp"
#include "sphshift/truncation.hpp"

namespace sphshift {

VerificationReport run_verification(std::size_t arity, const VerificationOptions& options) {
  if (options.N < options.max_order + 1) throw std::invalid_argument("N must exceed the largest oracle order");
  VerificationReport report;
  for (const auto& family : registry(arity)) {
    const SphericalShift shift(arity, make_sequence(family.spec));
    OracleSuite suite(shift, options.N);

    std::vector<OracleKind> kinds;
    for (std::size_t j = 0; j < arity; ++j) kinds.push_back({OracleKind::Type::self_comm, j, j, 1});
    for (std::size_t j = 0; j < arity; ++j) {
      for (std::size_t l = 0; l < arity; ++l) {
        if (j != l) kinds.push_back({OracleKind::Type::cross_comm, j, l, 1});
      }
    }
    for (unsigned k = 1; k <= options.max_order; ++k) kinds.push_back({OracleKind::Type::q_power, 0, 0, k});
    for (unsigned q = 1; q <= options.max_order; ++q) kinds.push_back({OracleKind::Type::bq, 0, 0, q});

    for (const auto& kind : kinds) {
      const OracleComparison c = suite.compare(kind, kind.required_margin());
      OracleRow row{family.name, arity, kind.label(), c.max_deviation, c.compared_columns,
                    c.max_deviation <= options.abs_tolerance};
      report.passed = report.passed && row.passed;
      report.oracle.push_back(std::move(row));

      if (kind.type != OracleKind::Type::self_comm && kind.type != OracleKind::Type::cross_comm) continue;
      const DenseOperator interior = restrict_columns(suite.build(kind), suite.basis(), options.N - 1);
      const std::vector<double> singular = gram_diagonal_singular_values(interior);
      for (double p : options.exponents) {
        CompensatedSum gram;
        for (double s : singular) gram.add(std::pow(s, p));
        const double closed = closed_form_norm(shift, kind.j, kind.l, p, options.N - 1);
        const double scale = std::max(std::abs(closed), std::abs(gram.value()));
        const double rel = scale == 0.0 ? 0.0 : std::abs(closed - gram.value()) / scale;
        SchattenOracleRow srow{family.name, arity, kind.label(), p, closed, gram.value(), rel,
                               rel <= options.rel_tolerance};
        report.passed = report.passed && srow.passed;
        report.schatten.push_back(std::move(srow));
      }
    }
  }
  return report;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["passed"] = r.passed;
  Json oracle = Json::array();
  for (const auto& row : r.oracle) {
    oracle.push_back({{"family", row.family}, {"m", row.arity}, {"kind", row.kind},
                      {"max_deviation", number(row.max_deviation)}, {"columns", row.compared_columns},
                      {"passed", row.passed}});
  }
  j["oracle"] = std::move(oracle);
  Json schatten = Json::array();
  for (const auto& row : r.schatten) {
    schatten.push_back({{"family", row.family}, {"m", row.arity}, {"kind", row.kind}, {"p", number(row.p)},
                        {"closed_form", number(row.closed_form)}, {"gram_sum", number(row.gram_sum)},
                        {"rel_deviation", number(row.rel_deviation)}, {"passed", row.passed}});
  }
  j["schatten"] = std::move(schatten);
  return j;
}

}  // namespace sphshift
