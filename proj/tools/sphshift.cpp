// Copyright 2026 The sphshift Authors
// SPDX-License-Identifier: Apache-2.0
//
// sphshift: command-line front end for spherical multi-shift analysis.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sphshift/classify.hpp"
#include "sphshift/families.hpp"
#include "sphshift/report.hpp"
#include "sphshift/schatten.hpp"
#include "sphshift/shift.hpp"
#include "sphshift/spectra.hpp"
#include "sphshift/verify.hpp"

namespace {

using namespace sphshift;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kMaxArity = 8;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyArgs {
  std::string family = "hardy";
  std::string p_space;
  std::string c;
  std::string gamma_coeffs;
  std::string table;
  std::string tail;
  std::string family_file;
};

struct Common {
  std::size_t m = 2;
  std::string out;
  std::string format = "json";
  bool timings = false;
};

struct Horizons {
  std::uint64_t K = 100000;
  std::uint64_t K_exact = 200;
  unsigned J = 60;
  unsigned N = 10;
  unsigned P = 8;
  unsigned Q = 6;
  std::uint64_t window = 0;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.family, "family name (see `families`)");
  cmd->add_option("--p", f.p_space, "H_p space parameter (kernel (1 - <z,w>)^-p)");
  cmd->add_option("--c", f.c, "constant delta for --family constant");
  cmd->add_option("--gamma-coeffs", f.gamma_coeffs, "polynomial coefficients of gamma, increasing degree");
  cmd->add_option("--table", f.table, "one-column CSV of delta^2 values");
  cmd->add_option("--tail", f.tail, "tail rule for --table: error | last | constant:<v>");
  cmd->add_option("--family-file", f.family_file, "key = value family definition file");
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--m", c.m, "number of variables")->check(CLI::Range(std::size_t{1}, kMaxArity));
  cmd->add_option("--out", c.out, "write the report here (relative paths resolve against $SPHSHIFT_OUTPUT_DIR)");
  cmd->add_flag("--timings", c.timings, "include wall-clock timings (reports stop being byte-reproducible)");
}

std::map<std::string, std::string> family_params(const FamilyArgs& f, std::size_t m) {
  std::map<std::string, std::string> params;
  if (!f.family_file.empty()) {
    params = read_family_file(f.family_file);
    if (auto it = params.find("table"); it != params.end()) {
      const std::filesystem::path table(it->second);
      if (table.is_relative()) it->second = (std::filesystem::path(f.family_file).parent_path() / table).string();
    }
  }
  if (!params.count("family") || f.family != "hardy") params["family"] = f.family;
  if (!f.p_space.empty()) params["p"] = f.p_space;
  if (!f.c.empty()) params["c"] = f.c;
  if (!f.gamma_coeffs.empty()) params["gamma-coeffs"] = f.gamma_coeffs;
  if (!f.table.empty()) params["table"] = f.table;
  if (!f.tail.empty()) params["tail"] = f.tail;
  if (!params.count("m")) params["m"] = std::to_string(m);
  return params;
}

Json request_echo(const std::map<std::string, std::string>& params) {
  Json j;
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    double p = 0.0;
    if (item == "inf") {
      p = std::numeric_limits<double>::infinity();
    } else {
      p = to_double(parse_rational(item));
    }
    if (!(p >= 1.0)) throw ExponentError("p must be >= 1 (got " + item + ")");
    grid.push_back(p);
  }
  if (grid.empty()) throw UsageError("empty p-grid");
  return grid;
}

std::vector<double> default_grid(std::size_t m) {
  const double md = static_cast<double>(m);
  std::vector<double> grid{1.0, md / 2.0 + 0.5, md - 0.5, md, md + 0.25, md + 1.0};
  std::vector<double> out;
  for (double p : grid) {
    if (p >= 1.0 && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SPHSHIFT_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  return path;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  const auto path = resolve_output(c.out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

void require_json(const Common& c, const std::string& command) {
  if (c.format != "json") throw UsageError("`" + command + "` only emits json");
}

class Stopwatch {
 public:
  void mark(const std::string& label) {
    const auto now = std::chrono::steady_clock::now();
    laps_[label] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  Json json() const {
    Json j;
    for (const auto& [k, v] : laps_) j[k] = v;
    return j;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::map<std::string, double> laps_;
};

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

Json families_listing(std::size_t m) {
  Json list = Json::array();
  for (const auto& f : registry(m)) {
    const ScalarSequence seq = make_sequence(f.spec);
    const auto& t = seq.traits();
    Json j;
    j["name"] = f.name;
    j["spec"] = describe(f.spec);
    j["limit_delta2"] = t.limit_delta2 ? number(*t.limit_delta2) : Json(nullptr);
    j["sup_delta2"] = t.sup_delta2 ? Json(to_string(*t.sup_delta2)) : Json(nullptr);
    j["exact"] = seq.has_exact();
    list.push_back(std::move(j));
  }
  return list;
}

int run(int argc, char** argv) {
  CLI::App app{"Spherical multi-shift analysis: spectra, Schatten classes, structural classification."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  FamilyArgs fam;
  Horizons h;
  std::string exponent = "2";
  std::string grid_text;
  std::string k_range = "100:10000";
  std::string lemma_ps = "1,2";
  std::string plot_data;
  bool witness = false;
  double tolerance = 1e-10;
  double rel_tolerance = 1e-8;
  int witness_levels = 0;

  auto* families = app.add_subcommand("families", "list the registered families");
  add_common(families, common);

  auto* analyze = app.add_subcommand("analyze", "full report: classification, spectrum, Schatten cut-off, oracles");
  auto* spectrum = app.add_subcommand("spectrum", "radii R, r, i, essential shell, point-spectrum boundary");
  auto* schatten = app.add_subcommand("schatten", "S^p membership of the cross-commutators");
  auto* cutoff = app.add_subcommand("cutoff", "S^p verdicts across a p-grid");
  auto* classify_cmd = app.add_subcommand("classify", "structural classification");
  auto* verify = app.add_subcommand("verify", "closed forms against matrix oracles for every registered family");
  auto* lemmas = app.add_subcommand("lemmas", "asymptotic lemma ratio windows");
  auto* dump_seq = app.add_subcommand("dump-sequence", "CSV of delta^2, gamma, log bbeta, B_q eigenvalues");

  for (auto* cmd : {analyze, spectrum, schatten, cutoff, classify_cmd, dump_seq}) add_family_options(cmd, fam);
  for (auto* cmd : {analyze, spectrum, schatten, cutoff, classify_cmd, verify, lemmas, dump_seq}) {
    add_common(cmd, common);
    cmd->add_option("--format", common.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  }
  auto positive = CLI::PositiveNumber;
  for (auto* cmd : {analyze, spectrum, schatten, cutoff, classify_cmd, dump_seq})
    cmd->add_option("--K", h.K, "sampling horizon")->check(positive);
  for (auto* cmd : {analyze, spectrum}) {
    cmd->add_option("--J", h.J, "number of j terms in the radius limits")->check(positive);
    cmd->add_option("--window", h.window, "tail window for the essential shell (default K/10)");
  }
  for (auto* cmd : {analyze, classify_cmd}) {
    cmd->add_option("--P", h.P, "subnormality order")->check(positive);
    cmd->add_option("--Q", h.Q, "largest q for isometry / expansion checks")->check(positive);
    cmd->add_option("--K-exact", h.K_exact, "horizon of the exact rational checks")->check(positive);
  }
  for (auto* cmd : {analyze, verify}) cmd->add_option("--N", h.N, "truncation degree")->check(CLI::Range(4u, 30u));
  for (auto* cmd : {analyze, cutoff}) cmd->add_option("--grid", grid_text, "comma-separated Schatten exponents");
  dump_seq->add_option("--Q", h.Q, "largest q for the B_q columns")->check(positive);
  schatten->add_option("--exponent", exponent, "Schatten exponent p >= 1 (or inf)");
  schatten->add_option("--witness-levels", witness_levels, "divergence-witness levels for lacunary families");
  spectrum->add_option("--plot-data", plot_data, "write the j-sequences as CSV here");
  classify_cmd->add_flag("--witness", witness, "include failure indices");
  verify->add_option("--tol", tolerance, "absolute oracle tolerance");
  verify->add_option("--rel-tol", rel_tolerance, "relative Schatten oracle tolerance");
  lemmas->add_option("--k-range", k_range, "a:b with 100 <= a <= b <= 10000");
  lemmas->add_option("--ps", lemma_ps, "comma-separated exponents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Stopwatch clock;
  const std::size_t m = common.m;
  auto params = [&] { return family_params(fam, m); };
  auto finish = [&](Json report, int status) {
    if (common.timings) {
      clock.mark("total");
      report["timings_ms"] = clock.json();
    }
    emit(common, dump(report));
    return status;
  };

  if (families->parsed()) {
    Json report = report_envelope("families", {{"m", m}});
    report["families"] = families_listing(m);
    return finish(std::move(report), kExitOk);
  }

  if (verify->parsed()) {
    require_json(common, "verify");
    VerificationOptions options;
    options.N = h.N;
    options.abs_tolerance = tolerance;
    options.rel_tolerance = rel_tolerance;
    const VerificationReport result = run_verification(m, options);
    Json report = report_envelope("verify", {{"m", m}, {"N", h.N}, {"tol", tolerance}, {"rel_tol", rel_tolerance}});
    report["verification"] = to_json(result);
    if (!result.passed) {
      for (const auto& row : result.oracle) {
        if (!row.passed)
          std::cerr << "FAIL " << row.family << " " << row.kind << " deviation " << row.max_deviation << "\n";
      }
      for (const auto& row : result.schatten) {
        if (!row.passed)
          std::cerr << "FAIL " << row.family << " " << row.kind << " p=" << row.p << " rel " << row.rel_deviation << "\n";
      }
    }
    return finish(std::move(report), result.passed ? kExitOk : kExitVerification);
  }

  if (lemmas->parsed()) {
    const auto colon = k_range.find(':');
    if (colon == std::string::npos) throw UsageError("--k-range expects a:b");
    const auto lo = std::stoull(k_range.substr(0, colon));
    const auto hi = std::stoull(k_range.substr(colon + 1));
    if (lo < 100 || hi > 10000 || lo > hi) throw UsageError("--k-range must lie within [100, 10000]");
    std::vector<LemmaWindow> windows;
    for (double p : parse_grid(lemma_ps)) {
      for (auto& w : asymptotic_lemma_check(m, p, lo, hi)) windows.push_back(std::move(w));
    }
    if (common.format == "csv") {
      std::ostringstream s;
      s << "sum,s,m,p,k,ratio\n";
      for (const auto& w : windows) {
        for (std::size_t i = 0; i < w.ks.size(); ++i)
          s << w.lemma << "," << w.s_label << "," << w.arity << "," << csv_number(w.p) << "," << w.ks[i] << ","
            << csv_number(w.ratios[i]) << "\n";
      }
      emit(common, s.str());
      return kExitOk;
    }
    Json report = report_envelope("lemmas", {{"m", m}, {"k_range", k_range}, {"ps", lemma_ps}});
    Json ws = Json::array();
    for (const auto& w : windows) ws.push_back(to_json(w));
    report["windows"] = std::move(ws);
    return finish(std::move(report), kExitOk);
  }

  const auto p = params();
  const FamilySpec spec = parse_family(p, m);
  const ScalarSequence seq = make_sequence(spec);
  Json echo = request_echo(p);
  echo["spec"] = describe(spec);
  echo["K"] = h.K;
  clock.mark("setup");

  if (dump_seq->parsed()) {
    if (dump_seq->get_option("--format")->count() > 0 && common.format != "csv")
      throw UsageError("`dump-sequence` only emits csv");
    const SphericalShift shift(m, seq);
    const std::vector<double> logs = seq.log_bbeta_table(h.K + 1);
    std::ostringstream s;
    s << "k,delta2,gamma,log_bbeta";
    for (unsigned q = 1; q <= h.Q; ++q) s << ",bq_" << q;
    s << "\n";
    for (std::uint64_t k = 0; k <= h.K; ++k) {
      s << k << "," << csv_number(seq.delta2(k)) << "," << csv_number(seq.gamma(k)) << "," << csv_number(logs[k]);
      for (unsigned q = 1; q <= h.Q; ++q) s << "," << csv_number(shift.bq_diag(k, q));
      s << "\n";
    }
    emit(common, s.str());
    return kExitOk;
  }

  if (!cutoff->parsed()) require_json(common, app.get_subcommands().front()->get_name());

  ClassifyOptions copts;
  copts.max_subnormal_order = h.P;
  copts.max_q = h.Q;
  copts.exact_horizon = h.K_exact;
  copts.sampled_horizon = h.K;

  if (classify_cmd->parsed()) {
    echo["P"] = h.P;
    echo["Q"] = h.Q;
    echo["K_exact"] = h.K_exact;
    Json report = report_envelope("classify", echo);
    Json c = to_json(classify(seq, copts));
    if (!witness) {
      for (const char* key : {"compact", "essentially_normal", "szego", "hyponormal"}) c[key].erase("witness_k");
      for (auto& e : c["q_expansion"]) e.erase("witness_k");
    }
    report["classification"] = std::move(c);
    return finish(std::move(report), kExitOk);
  }

  SpectraOptions sopts;
  sopts.J = h.J;
  sopts.K = h.K;
  sopts.window = h.window;

  if (spectrum->parsed()) {
    echo["J"] = h.J;
    const SpectralReport sr = spectral_report(seq, m, sopts);
    if (!plot_data.empty()) {
      std::ostringstream s;
      s << "j,outer,inner,m_infinity,inner_check\n";
      for (std::size_t j = 0; j < sr.R.sequence.size(); ++j) {
        s << j + 1 << "," << csv_number(sr.R.sequence[j]) << "," << csv_number(sr.i.sequence[j]) << ","
          << csv_number(sr.i.m_infinity_sequence.at(j)) << "," << csv_number(sr.i.inner_check_sequence.at(j)) << "\n";
      }
      Common plot = common;
      plot.out = plot_data;
      emit(plot, s.str());
    }
    Json report = report_envelope("spectrum", echo);
    report["spectrum"] = to_json(sr);
    return finish(std::move(report), kExitOk);
  }

  if (schatten->parsed()) {
    const double pe = parse_grid(exponent).front();
    echo["exponent"] = number(pe);
    Json report = report_envelope("schatten", echo);
    report["schatten"] = to_json(decide(seq, m, pe, h.K));
    if (witness_levels > 0) {
      Json ws = Json::array();
      for (const auto& w : divergence_witness(seq, m, pe, witness_levels)) ws.push_back(to_json(w));
      report["divergence_witness"] = std::move(ws);
    }
    return finish(std::move(report), kExitOk);
  }

  const std::vector<double> grid = grid_text.empty() ? default_grid(m) : parse_grid(grid_text);
  Json grid_json = Json::array();
  for (double g : grid) grid_json.push_back(number(g));
  echo["grid"] = grid_json;

  if (cutoff->parsed()) {
    const CutoffReport cr = cutoff_check(seq, m, grid, h.K);
    if (common.format == "csv") {
      std::ostringstream s;
      s << "p,verdict,method,sampled_verdict\n";
      for (const auto& v : cr.verdicts)
        s << csv_number(v.p) << "," << to_string(v.verdict) << "," << to_string(v.method) << ","
          << to_string(v.sampled_verdict) << "\n";
      emit(common, s.str());
      return kExitOk;
    }
    Json report = report_envelope("cutoff", echo);
    report["cutoff"] = to_json(cr);
    return finish(std::move(report), kExitOk);
  }

  // analyze
  echo["J"] = h.J;
  echo["N"] = h.N;
  echo["P"] = h.P;
  echo["Q"] = h.Q;
  echo["K_exact"] = h.K_exact;
  Json report = report_envelope("analyze", echo);
  report["classification"] = to_json(classify(seq, copts));
  clock.mark("classify");
  report["spectrum"] = to_json(spectral_report(seq, m, sopts), false);
  clock.mark("spectrum");
  report["cutoff"] = to_json(cutoff_check(seq, m, grid, h.K));
  clock.mark("schatten");
  {
    const SphericalShift shift(m, seq);
    OracleSuite suite(shift, h.N);
    Json oracle = Json::array();
    bool ok = true;
    std::vector<OracleKind> kinds;
    for (std::size_t j = 0; j < m; ++j) kinds.push_back({OracleKind::Type::self_comm, j, j, 1});
    if (m > 1) kinds.push_back({OracleKind::Type::cross_comm, 0, 1, 1});
    for (unsigned k = 1; k <= 3; ++k) kinds.push_back({OracleKind::Type::q_power, 0, 0, k});
    for (unsigned q = 1; q <= 3; ++q) kinds.push_back({OracleKind::Type::bq, 0, 0, q});
    for (const auto& kind : kinds) {
      const auto c = suite.compare(kind, kind.required_margin());
      ok = ok && c.max_deviation <= 1e-10;
      oracle.push_back({{"kind", kind.label()}, {"max_deviation", number(c.max_deviation)}, {"columns", c.compared_columns}});
    }
    report["oracles"] = {{"N", h.N}, {"passed", ok}, {"rows", oracle}};
    clock.mark("oracles");
    return finish(std::move(report), ok ? kExitOk : kExitVerification);
  }
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const FamilyError& e) {
    std::cerr << "family error: " << e.what() << "\n";
  } catch (const OutOfRangeError& e) {
    std::cerr << "tabulated range overrun: " << e.what() << "\n";
  } catch (const ExponentError& e) {
    std::cerr << "invalid exponent: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
