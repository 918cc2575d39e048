// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sphshift/exact.hpp"
#include "sphshift/scalarseq.hpp"

namespace sphshift {

/// delta^2_k = (k + m) / (k + p): multiplication by z on the space with
/// kernel (1 - <z,w>)^{-p}. p = m is Hardy, p = m + 1 Bergman, p = 1 Drury-Arveson.
struct HpSpace {
  std::size_t m = 2;
  Rational p = 1;
};

/// delta_k = c for all k.
struct ConstantDelta {
  Rational c = 1;
};

/// gamma_k = S(k) / S(0) for a polynomial S, coefficients in increasing degree.
struct PolynomialGamma {
  std::vector<Rational> coefficients;
};

/// delta^2_k = rho_k with rho_0 = 1, rho_{k+1} = rho_k + eta_k and
/// eta_k = 2^{-l} when k = 2^{2^l}, zero otherwise.
struct RhoEta {};

/// gamma_{2k} = 12^{-k}, gamma_{2k+1} = 12^{-k} / 3.
struct AlternatingTwelve {};

struct TailError {};
struct TailConstant {
  Rational delta2;
};
struct TailLastValue {};
/// Tail given by a closed form for k >= table size. Traits describe the tail.
struct TailFormula {
  std::string label;
  std::function<double(std::uint64_t)> delta2;
  std::function<Rational(std::uint64_t)> exact;  ///< optional
  SequenceTraits traits;
};
using TailRule = std::variant<TailError, TailConstant, TailLastValue, TailFormula>;

struct Tabulated {
  std::vector<Rational> delta2;
  TailRule tail = TailError{};
};

using FamilySpec = std::variant<HpSpace, ConstantDelta, PolynomialGamma, RhoEta, AlternatingTwelve, Tabulated>;

ScalarSequence make_sequence(const FamilySpec& spec);

/// Short machine-readable label ("hp(m=2,p=3)", "rho-eta", ...).
std::string describe(const FamilySpec& spec);

struct RegisteredFamily {
  std::string name;
  FamilySpec spec;
};

/// The named families exercised by the verification suite, instantiated for arity m.
std::vector<RegisteredFamily> registry(std::size_t m);

/// One delta^2 value per line; blank lines and lines starting with '#' are
/// skipped, and a first line that does not parse as a number is taken as a header.
std::vector<Rational> read_delta2_column(std::istream& in);
std::vector<Rational> read_delta2_column(const std::filesystem::path& path);

/// Error raised for unknown family names or bad parameters.
class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds a FamilySpec from flat key/value parameters:
///   family = hp | constant | poly-gamma | rho-eta | alternating-twelve | tabulated | hardy | bergman | drury-arveson
///   m, p, c, gamma-coeffs (comma separated), table (path), tail (error | last | constant:<v>)
FamilySpec parse_family(const std::map<std::string, std::string>& params, std::size_t default_m);

/// Reads a "key = value" family definition file ('#' comments allowed).
std::map<std::string, std::string> read_family_file(const std::filesystem::path& path);

}  // namespace sphshift
