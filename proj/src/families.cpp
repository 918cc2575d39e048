// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sphshift/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sphshift {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::optional<Monotonicity> table_monotonicity(const std::vector<Rational>& values, std::optional<Rational> tail) {
  bool up = true;
  bool down = true;
  std::vector<Rational> all = values;
  if (tail) all.push_back(*tail);
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i] < all[i - 1]) up = false;
    if (all[i] > all[i - 1]) down = false;
  }
  if (up && down) return Monotonicity::constant;
  if (up) return Monotonicity::nondecreasing;
  if (down) return Monotonicity::nonincreasing;
  return std::nullopt;
}

ScalarSequence make(const HpSpace& f) {
  if (f.m == 0) throw FamilyError("hp family needs m >= 1");
  if (f.p <= 0) throw FamilyError("hp family needs p > 0");
  const double m = static_cast<double>(f.m);
  const double p = to_double(f.p);
  const Rational mr(static_cast<long long>(f.m));
  SequenceTraits t;
  t.limit_delta2 = 1.0;
  t.first_order = m - p;
  t.differences_second_order = true;
  t.sup_delta2 = std::max(Rational(1), Rational(mr / f.p));
  t.essentially_normal = true;
  if (f.p > mr) {
    t.monotonicity = Monotonicity::nondecreasing;
  } else if (f.p < mr) {
    t.monotonicity = Monotonicity::nonincreasing;
  } else {
    t.monotonicity = Monotonicity::constant;
  }
  Rational p_exact = f.p;
  return ScalarSequence(
      describe(FamilySpec{f}),
      [m, p](std::uint64_t k) { return (static_cast<double>(k) + m) / (static_cast<double>(k) + p); },
      [mr, p_exact](std::uint64_t k) {
        const Rational kr(static_cast<long long>(k));
        return Rational((kr + mr) / (kr + p_exact));
      },
      std::move(t));
}

ScalarSequence make(const ConstantDelta& f) {
  if (f.c <= 0) throw FamilyError("constant family needs c > 0");
  const Rational c2 = f.c * f.c;
  const double c2d = to_double(c2);
  SequenceTraits t;
  t.limit_delta2 = c2d;
  t.first_order = 0.0;
  t.differences_second_order = true;
  t.sup_delta2 = c2;
  t.monotonicity = Monotonicity::constant;
  t.essentially_normal = true;
  return ScalarSequence(
      describe(FamilySpec{f}), [c2d](std::uint64_t) { return c2d; }, [c2](std::uint64_t) { return c2; },
      std::move(t));
}

ScalarSequence make(const PolynomialGamma& f) {
  std::vector<Rational> coeffs = f.coefficients;
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) throw FamilyError("poly-gamma family needs a non-zero polynomial");
  if (coeffs.front() <= 0) throw FamilyError("poly-gamma family needs S(0) > 0");
  if (coeffs.back() <= 0) throw FamilyError("poly-gamma family needs a positive leading coefficient");
  std::vector<double> dcoeffs;
  for (const auto& c : coeffs) dcoeffs.push_back(to_double(c));
  auto eval_exact = [coeffs](std::uint64_t k) {
    const Rational x(static_cast<long long>(k));
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  auto eval = [dcoeffs](double x) {
    double acc = 0;
    for (auto it = dcoeffs.rbegin(); it != dcoeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  for (std::uint64_t k = 0; k <= 1000; ++k) {
    if (eval_exact(k) <= 0) throw FamilyError("poly-gamma polynomial is not positive at k = " + std::to_string(k));
  }
  SequenceTraits t;
  t.limit_delta2 = 1.0;
  t.first_order = static_cast<double>(coeffs.size() - 1);
  t.differences_second_order = true;
  t.essentially_normal = true;
  if (coeffs.size() == 1) {
    t.monotonicity = Monotonicity::constant;
    t.sup_delta2 = Rational(1);
  }
  return ScalarSequence(
      describe(FamilySpec{f}),
      [eval](std::uint64_t k) {
        const double x = static_cast<double>(k);
        return eval(x + 1.0) / eval(x);
      },
      [eval_exact](std::uint64_t k) { return Rational(eval_exact(k + 1) / eval_exact(k)); }, std::move(t));
}

// rho_k = 1 + sum of 2^{-l} over the jump positions 2^{2^l} <= k - 1
Rational rho_exact(std::uint64_t k) {
  Rational rho = 1;
  Rational step = 1;
  for (int l = 0; l < 6; ++l) {
    const std::uint64_t position = std::uint64_t{1} << (std::uint64_t{1} << l);
    if (k >= 1 && position <= k - 1) rho += step;
    step /= 2;
  }
  return rho;
}

double rho(std::uint64_t k) {
  double value = 1.0;
  double step = 1.0;
  for (int l = 0; l < 6; ++l) {
    const std::uint64_t position = std::uint64_t{1} << (std::uint64_t{1} << l);
    if (k >= 1 && position <= k - 1) value += step;
    step /= 2.0;
  }
  return value;
}

ScalarSequence make(const RhoEta&) {
  SequenceTraits t;
  t.limit_delta2 = 3.0;
  t.sup_delta2 = Rational(3);
  t.monotonicity = Monotonicity::nondecreasing;
  t.essentially_normal = true;
  // delta^2_k - delta^2_{k-1} = eta_{k-1}: magnitude 2^{-l} at k = 2^{2^l} + 1
  LacunaryJumps jumps;
  jumps.first_level = 0;
  jumps.log2_position = [](int l) {
    const double e = std::ldexp(1.0, l);
    return e + std::log2(1.0 + std::exp2(-e));
  };
  jumps.log2_magnitude = [](int l) { return -static_cast<double>(l); };
  t.jumps = std::move(jumps);
  return ScalarSequence("rho-eta", rho, rho_exact, std::move(t));
}

ScalarSequence make(const AlternatingTwelve&) {
  SequenceTraits t;
  t.liminf_delta2 = 0.25;
  t.limsup_delta2 = 1.0 / 3.0;
  t.sup_delta2 = Rational(1, 3);
  t.essentially_normal = false;
  return ScalarSequence(
      "alternating-twelve", [](std::uint64_t k) { return k % 2 == 0 ? 1.0 / 3.0 : 0.25; },
      [](std::uint64_t k) { return k % 2 == 0 ? Rational(1, 3) : Rational(1, 4); }, std::move(t));
}

ScalarSequence make(const Tabulated& f) {
  if (f.delta2.empty()) throw FamilyError("tabulated family needs at least one value");
  for (std::size_t i = 0; i < f.delta2.size(); ++i) {
    if (f.delta2[i] <= 0) throw FamilyError("tabulated delta^2 must be positive (entry " + std::to_string(i) + ")");
  }
  const std::vector<Rational> table = f.delta2;
  std::vector<double> dtable;
  for (const auto& v : table) dtable.push_back(to_double(v));
  const std::uint64_t size = table.size();
  const Rational table_max = *std::max_element(table.begin(), table.end());
  const std::string name = describe(FamilySpec{f});

  auto constant_tail = [&](const Rational& c) {
    if (c <= 0) throw FamilyError("tabulated tail value must be positive");
    const double cd = to_double(c);
    SequenceTraits t;
    t.limit_delta2 = cd;
    t.first_order = 0.0;
    t.differences_second_order = true;
    t.sup_delta2 = std::max(table_max, c);
    t.essentially_normal = true;
    t.monotonicity = table_monotonicity(table, c);
    return ScalarSequence(
        name, [dtable, size, cd](std::uint64_t k) { return k < size ? dtable[k] : cd; },
        [table, size, c](std::uint64_t k) { return k < size ? table[k] : c; }, std::move(t));
  };

  return std::visit(
      [&](const auto& tail) -> ScalarSequence {
        using T = std::decay_t<decltype(tail)>;
        if constexpr (std::is_same_v<T, TailError>) {
          SequenceTraits t;
          t.sup_delta2 = table_max;
          t.monotonicity = table_monotonicity(table, std::nullopt);
          return ScalarSequence(
              name, [dtable](std::uint64_t k) { return dtable.at(k); },
              [table](std::uint64_t k) { return table.at(k); }, std::move(t), size);
        } else if constexpr (std::is_same_v<T, TailConstant>) {
          return constant_tail(tail.delta2);
        } else if constexpr (std::is_same_v<T, TailLastValue>) {
          return constant_tail(table.back());
        } else {
          if (!tail.delta2) throw FamilyError("formula tail needs a delta^2 evaluator");
          auto fd = tail.delta2;
          ScalarSequence::ExactFn fe;
          if (tail.exact) {
            fe = [table, size, ex = tail.exact](std::uint64_t k) { return k < size ? table[k] : ex(k); };
          }
          return ScalarSequence(
              name, [dtable, size, fd](std::uint64_t k) { return k < size ? dtable[k] : fd(k); }, std::move(fe),
              tail.traits);
        }
      },
      f.tail);
}

}  // namespace

ScalarSequence make_sequence(const FamilySpec& spec) {
  return std::visit([](const auto& f) { return make(f); }, spec);
}

std::string describe(const FamilySpec& spec) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HpSpace>) {
          return "hp(m=" + std::to_string(f.m) + ",p=" + to_string(f.p) + ")";
        } else if constexpr (std::is_same_v<T, ConstantDelta>) {
          return "constant(c=" + to_string(f.c) + ")";
        } else if constexpr (std::is_same_v<T, PolynomialGamma>) {
          std::string s = "poly-gamma(";
          for (std::size_t i = 0; i < f.coefficients.size(); ++i) s += (i ? "," : "") + to_string(f.coefficients[i]);
          return s + ")";
        } else if constexpr (std::is_same_v<T, RhoEta>) {
          return "rho-eta";
        } else if constexpr (std::is_same_v<T, AlternatingTwelve>) {
          return "alternating-twelve";
        } else {
          std::string tail = std::visit(
              [](const auto& r) -> std::string {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, TailError>) return "error";
                else if constexpr (std::is_same_v<R, TailConstant>) return "constant:" + to_string(r.delta2);
                else if constexpr (std::is_same_v<R, TailLastValue>) return "last";
                else return "formula:" + r.label;
              },
              f.tail);
          return "tabulated(n=" + std::to_string(f.delta2.size()) + ",tail=" + tail + ")";
        }
      },
      spec);
}

namespace {

Tabulated compact_tabulated() {
  Tabulated t;
  for (long long k = 0; k < 4; ++k) t.delta2.emplace_back(1, (k + 1) * (k + 1));
  TailFormula tail;
  tail.label = "1/(k+1)^2";
  tail.delta2 = [](std::uint64_t k) {
    const double x = static_cast<double>(k) + 1.0;
    return 1.0 / (x * x);
  };
  tail.exact = [](std::uint64_t k) {
    const long long x = static_cast<long long>(k) + 1;
    return Rational(1, x * x);
  };
  tail.traits.limit_delta2 = 0.0;
  tail.traits.first_order = 0.0;
  tail.traits.differences_second_order = true;
  tail.traits.sup_delta2 = Rational(1);
  tail.traits.monotonicity = Monotonicity::nonincreasing;
  tail.traits.essentially_normal = true;
  t.tail = std::move(tail);
  return t;
}

}  // namespace

std::vector<RegisteredFamily> registry(std::size_t m) {
  const Rational mr(static_cast<long long>(m));
  std::vector<RegisteredFamily> out;
  out.push_back({"hardy", HpSpace{m, mr}});
  out.push_back({"bergman", HpSpace{m, mr + 1}});
  out.push_back({"drury-arveson", HpSpace{m, 1}});
  out.push_back({"hp-3/2", HpSpace{m, Rational(3, 2)}});
  out.push_back({"constant-3/4", ConstantDelta{Rational(3, 4)}});
  out.push_back({"poly-gamma", PolynomialGamma{{1, 4, 6, 4, 1}}});
  out.push_back({"rho-eta", RhoEta{}});
  out.push_back({"alternating-twelve", AlternatingTwelve{}});
  out.push_back({"compact-tabulated", compact_tabulated()});
  out.push_back({"tabulated-steps", Tabulated{{1, 4, 1, 4, 1, 4}, TailConstant{1}}});
  return out;
}

std::vector<Rational> read_delta2_column(std::istream& in) {
  std::vector<Rational> values;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string cell = trim(line);
    if (auto comma = cell.find(','); comma != std::string::npos) cell = trim(cell.substr(0, comma));
    if (cell.empty() || cell.front() == '#') continue;
    try {
      values.push_back(parse_rational(cell));
    } catch (const std::invalid_argument&) {
      if (first) {
        first = false;
        continue;
      }
      throw FamilyError("table line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
    }
    first = false;
  }
  if (values.empty()) throw FamilyError("table contains no delta^2 values");
  return values;
}

std::vector<Rational> read_delta2_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FamilyError("cannot open table file '" + path.string() + "'");
  return read_delta2_column(in);
}

std::map<std::string, std::string> read_family_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FamilyError("cannot open family file '" + path.string() + "'");
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find_first_of("=:");
    if (eq == std::string::npos)
      throw FamilyError("family file line " + std::to_string(line_no) + ": expected 'key = value'");
    out[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  if (!out.contains("family")) throw FamilyError("family file has no 'family' key");
  if (out.contains("table")) {
    std::filesystem::path table = out["table"];
    if (table.is_relative()) out["table"] = (path.parent_path() / table).string();
  }
  return out;
}

namespace {

Rational require_rational(const std::map<std::string, std::string>& params, const std::string& key,
                          const std::string& family) {
  auto it = params.find(key);
  if (it == params.end()) throw FamilyError("family '" + family + "' requires parameter '" + key + "'");
  try {
    return parse_rational(it->second);
  } catch (const std::invalid_argument& e) {
    throw FamilyError("parameter '" + key + "': " + e.what());
  }
}

TailRule parse_tail(const std::string& text) {
  if (text.empty() || text == "error") return TailError{};
  if (text == "last") return TailLastValue{};
  if (text.rfind("constant:", 0) == 0) {
    try {
      return TailConstant{parse_rational(text.substr(9))};
    } catch (const std::invalid_argument& e) {
      throw FamilyError(std::string("tail constant: ") + e.what());
    }
  }
  throw FamilyError("unknown tail rule '" + text + "' (expected error, last or constant:<value>)");
}

}  // namespace

FamilySpec parse_family(const std::map<std::string, std::string>& params, std::size_t default_m) {
  auto it = params.find("family");
  if (it == params.end()) throw FamilyError("no family given");
  const std::string family = it->second;
  std::size_t m = default_m;
  if (auto mi = params.find("m"); mi != params.end()) {
    try {
      m = std::stoul(mi->second);
    } catch (const std::exception&) {
      throw FamilyError("parameter 'm' must be a positive integer");
    }
  }
  if (m == 0) throw FamilyError("parameter 'm' must be a positive integer");
  const Rational mr(static_cast<long long>(m));

  if (family == "hp") return HpSpace{m, require_rational(params, "p", family)};
  if (family == "hardy" || family == "szego") return HpSpace{m, mr};
  if (family == "bergman") return HpSpace{m, mr + 1};
  if (family == "drury-arveson") return HpSpace{m, 1};
  if (family == "constant") return ConstantDelta{require_rational(params, "c", family)};
  if (family == "rho-eta") return RhoEta{};
  if (family == "alternating-twelve") return AlternatingTwelve{};
  if (family == "poly-gamma") {
    auto ci = params.find("gamma-coeffs");
    if (ci == params.end()) throw FamilyError("family 'poly-gamma' requires parameter 'gamma-coeffs'");
    PolynomialGamma f;
    std::stringstream ss(ci->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        f.coefficients.push_back(parse_rational(item));
      } catch (const std::invalid_argument& e) {
        throw FamilyError(std::string("gamma-coeffs: ") + e.what());
      }
    }
    return f;
  }
  if (family == "tabulated") {
    auto ti = params.find("table");
    if (ti == params.end()) throw FamilyError("family 'tabulated' requires parameter 'table'");
    Tabulated t;
    t.delta2 = read_delta2_column(std::filesystem::path(ti->second));
    if (auto tail = params.find("tail"); tail != params.end()) t.tail = parse_tail(tail->second);
    return t;
  }
  for (auto& entry : registry(m)) {
    if (entry.name == family) return entry.spec;
  }
  throw FamilyError("unknown family '" + family + "'");
}

}  // namespace sphshift
