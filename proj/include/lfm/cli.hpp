#pragma once

// Command-line interface: every module behind one binary with
// machine-readable output.
//
//   enumerate, symbol, gauss-check, lvalue, fe-check, constants,
//   identities, moment, scan, nonvanishing
//
// Exit codes: 0 success, 1 usage error, 2 residual above tolerance.
// All numeric output carries 15 significant digits; --seed pins every
// randomized sampling; --threads (or NUM_THREADS) sizes the worker pool.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dds.hpp"
#include "moment.hpp"

namespace lfm {

namespace cli_detail {

using nlohmann::json;

inline std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

inline std::string fmt15(std::complex<double> v) {
  std::string s = fmt15(v.real());
  s += v.imag() < 0 ? "-" : "+";
  s += fmt15(std::abs(v.imag()));
  s += "i";
  return s;
}

inline std::complex<double> parse_complex(const std::string& text) {
  // forms: "a", "a+bi", "a-bi" (whitespace ignored)
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw CLI::ValidationError("empty complex literal");
  std::size_t pos = 1;  // skip leading sign
  while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
  double re = std::stod(s.substr(0, pos));
  double im = 0.0;
  if (pos < s.size()) {
    std::string rest = s.substr(pos);
    if (rest.back() != 'i' && rest.back() != 'I')
      throw CLI::ValidationError("bad complex literal: " + text);
    rest.pop_back();
    if (rest == "+" || rest == "-") rest += "1";
    im = std::stod(rest);
  }
  return {re, im};
}

struct Output {
  std::ostream* os = &std::cout;
  std::ofstream file;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw CLI::ValidationError("cannot open output file: " + path);
    os = &file;
  }
  std::ostream& stream() { return *os; }
};

struct Common {
  unsigned threads = 0;  // 0: take NUM_THREADS or 1
  std::uint64_t seed = 12345;
  std::string format = "csv";
  std::string output_path;

  Par par() const {
    if (threads >= 1) return Par{threads};
    return Par::from_env(1);
  }
};

inline void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "worker threads (default: NUM_THREADS or 1)");
  cmd->add_option("--seed", c.seed, "seed for randomized samples");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", c.output_path, "write output to this file");
}

// ---------------------------------------------------------------- enumerate

inline int cmd_enumerate(int j, long long max_conductor, bool count_only,
                         const Common& c) {
  Output out;
  out.open(c.output_path);
  auto chars = enumerate_characters(j, max_conductor, c.par());
  if (count_only) {
    out.stream() << chars.size() << "\n";
    return 0;
  }
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& chi : chars)
      arr.push_back({{"conductor", chi.conductor},
                     {"n", format_qint(chi.modulus)},
                     {"parity", chi.parity()}});
    out.stream() << arr.dump(2) << "\n";
    return 0;
  }
  out.stream() << "conductor,n,parity\n";
  for (const auto& chi : chars)
    out.stream() << chi.conductor << "," << format_qint(chi.modulus) << ","
                 << chi.parity() << "\n";
  return 0;
}

// ------------------------------------------------------------------- symbol

inline int cmd_symbol(int j, const std::string& m_text,
                      const std::string& n_text, bool fast, const Common& c) {
  Output out;
  out.open(c.output_path);
  const Ring ring = ring_for_order(j);
  QInt m = parse_qint(m_text, ring);
  QInt n = parse_qint(n_text, ring);
  RootOfUnity v = fast ? residue_symbol_fast(m, n, j) : residue_symbol(m, n, j);
  if (v.is_zero())
    out.stream() << "0\n";
  else
    out.stream() << v.k << "\n";
  return 0;
}

// -------------------------------------------------------------- gauss-check

struct IdentityReport {
  std::string name;
  double max_residual = 0.0;
  long long instances = 0;
  double tolerance = 0.0;
  bool pass() const { return max_residual <= tolerance; }
};

inline std::vector<IdentityReport> run_gauss_checks(
    int j, long long max_norm, const std::vector<std::string>& which,
    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Ring ring = ring_for_order(j);
  auto mods = admissible_moduli(j, max_norm);
  auto small = admissible_moduli(j, std::min<long long>(max_norm, 150));
  if (mods.empty() || small.empty())
    throw std::invalid_argument("gauss-check: --max-norm too small");
  std::uniform_int_distribution<std::size_t> pick_mod(0, mods.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_small(0, small.size() - 1);
  std::uniform_int_distribution<long long> coord(-12, 12);
  auto rand_elem = [&] {
    while (true) {
      QInt x{coord(rng), coord(rng), ring};
      if (!x.is_zero()) return x;
    }
  };
  auto want = [&](const std::string& name) {
    for (const auto& w : which)
      if (w == "all" || w == name) return true;
    return false;
  };

  std::vector<IdentityReport> reports;

  if (want("modulus")) {
    IdentityReport r{"modulus", 0.0, 0, 1e-6};
    for (const QInt& n : mods) {
      r.max_residual = std::max(r.max_residual, residual_modulus_law(n, j));
      ++r.instances;
    }
    // non-square-free moduli must vanish
    long long added = 0;
    for (const QInt& n : small) {
      QInt n2 = n * n;
      if (norm(n2) > std::max<i128>(max_norm, 2000)) continue;
      QInt nn = normalize_primary(n2, primary_mode_for_order(j)).value;
      r.max_residual = std::max(
          r.max_residual,
          residual_modulus_law(nn, j) / std::sqrt(static_cast<double>(norm(nn))));
      ++r.instances;
      if (++added >= 200) break;
    }
    reports.push_back(r);
  }
  if (want("gmult")) {
    IdentityReport r{"gmult", 0.0, 0, 1e-8};
    for (int it = 0; it < 200; ++it) {
      QInt n = small[pick_small(rng)];
      QInt rr = rand_elem();
      QInt s = rand_elem();
      if (!coprime(s, n)) continue;
      r.max_residual = std::max(r.max_residual, residual_twist(rr, s, n, j));
      ++r.instances;
    }
    reports.push_back(r);
  }
  if (want("prod")) {
    IdentityReport r{"prod", 0.0, 0, 1e-8};
    for (int it = 0; it < 300 && r.instances < 100; ++it) {
      QInt n1 = small[pick_small(rng)];
      QInt n2 = small[pick_small(rng)];
      if (!coprime(n1, n2)) continue;
      if (norm(n1) * norm(n2) > 20000) continue;
      r.max_residual =
          std::max(r.max_residual, residual_product(rand_elem(), n1, n2, j));
      ++r.instances;
    }
    reports.push_back(r);
  }
  if (want("grel")) {
    IdentityReport r{"grel", 0.0, 0, 1e-8};
    for (const QInt& n : small) {
      if (norm(n) > 400) continue;
      for (long long d : {5LL, 7LL, 13LL, -7LL, -11LL, 10LL, 14LL}) {
        const QInt dq = from_int(d, ring);
        if (!passes_primary(dq, primary_mode_for_order(j))) continue;
        if (!coprime(dq, n)) continue;
        if (static_cast<i128>(d) * d * norm(n) > 30000) continue;
        r.max_residual = std::max(r.max_residual, residual_rational_split(d, n, j));
        ++r.instances;
      }
    }
    reports.push_back(r);
  }
  if (want("tauprim")) {
    IdentityReport r{"tauprim", 0.0, 0, 1e-8};
    auto chars = enumerate_characters(j, std::min<long long>(max_norm, 800));
    std::uniform_int_distribution<long long> hdist(-100, 100);
    for (const auto& chi : chars) {
      for (int it = 0; it < 3; ++it) {
        r.max_residual =
            std::max(r.max_residual, residual_tau_twist(hdist(rng), chi));
        ++r.instances;
      }
    }
    reports.push_back(r);
  }
  if (want("tauprim1")) {
    IdentityReport r{"tauprim1", 0.0, 0, 1e-8};
    auto chars = enumerate_characters(j, max_norm);
    for (const auto& chi : chars) {
      r.max_residual = std::max(r.max_residual, residual_tau_vs_gauss(chi));
      ++r.instances;
    }
    reports.push_back(r);
  }
  return reports;
}

inline int cmd_gauss_check(int j, long long max_norm,
                           const std::vector<std::string>& which,
                           const Common& c) {
  Output out;
  out.open(c.output_path);
  auto reports = run_gauss_checks(j, max_norm, which, c.seed);
  json obj;
  bool all_pass = true;
  for (const auto& r : reports) {
    obj[r.name] = {{"max_residual", r.max_residual},
                   {"instances", r.instances},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass()}};
    all_pass = all_pass && r.pass();
  }
  obj["pass"] = all_pass;
  out.stream() << obj.dump(2) << "\n";
  return all_pass ? 0 : 2;
}

// ------------------------------------------------------------------- lvalue

inline int cmd_lvalue(int j, long long conductor, long long index,
                      const std::string& s_text, const Common& c) {
  Output out;
  out.open(c.output_path);
  auto s = parse_complex(s_text);
  auto chars = enumerate_characters(j, conductor, c.par());
  std::vector<const PrimitiveCharacter*> at_q;
  for (const auto& chi : chars)
    if (chi.conductor == conductor) at_q.push_back(&chi);
  if (at_q.empty())
    throw CLI::ValidationError("no family character of this conductor");
  if (index < 0 || index >= static_cast<long long>(at_q.size()))
    throw CLI::ValidationError("character index out of range (have " +
                               std::to_string(at_q.size()) + ")");
  LValue v = dirichlet_L(s, *at_q[static_cast<std::size_t>(index)]);
  if (c.format == "json") {
    json obj{{"j", j},
             {"conductor", conductor},
             {"index", index},
             {"n", format_qint(at_q[static_cast<std::size_t>(index)]->modulus)},
             {"s", fmt15(s)},
             {"value_re", v.value.real()},
             {"value_im", v.value.imag()},
             {"error_bound", v.abs_error_bound}};
    out.stream() << obj.dump(2) << "\n";
  } else {
    out.stream() << "value_re,value_im,error_bound\n"
                 << fmt15(v.value.real()) << "," << fmt15(v.value.imag()) << ","
                 << fmt15(v.abs_error_bound) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- fe-check

inline int cmd_fe_check(int j, long long max_conductor,
                        const std::string& s_text, const Common& c) {
  Output out;
  out.open(c.output_path);
  auto s = parse_complex(s_text);
  auto chars = enumerate_characters(j, max_conductor, c.par());
  auto residuals = parallel_map<double>(chars.size(), c.par(), [&](std::size_t i) {
    return fe_residual(s, chars[i]);
  });
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  const double tol = 1e-8;
  if (c.format == "json") {
    json obj{{"j", j},
             {"max_conductor", max_conductor},
             {"s", fmt15(s)},
             {"characters", chars.size()},
             {"max_residual", worst},
             {"tolerance", tol},
             {"pass", worst <= tol}};
    out.stream() << obj.dump(2) << "\n";
  } else {
    out.stream() << "characters,max_residual,tolerance,pass\n"
                 << chars.size() << "," << fmt15(worst) << "," << fmt15(tol)
                 << "," << (worst <= tol ? 1 : 0) << "\n";
  }
  return worst <= tol ? 0 : 2;
}

// ---------------------------------------------------------------- constants

inline int cmd_constants(int j, double alpha, const Common& c) {
  Output out;
  out.open(c.output_path);
  const Ring ring = ring_for_constant(j);
  auto r = residue_zeta_K(ring);
  auto z2 = zeta_K_at_2(ring);
  auto P = euler_P(j);
  auto Z = z_value(j, 0.5 + alpha);
  auto bundle = main_constant(j, alpha);
  json obj{
      {"j", j},
      {"alpha", alpha},
      {"ring", ring == Ring::gaussian ? "gaussian" : "eisenstein"},
      {"r_K", {{"value", r.value}, {"error_bound", r.error_bound}}},
      {"r_K_class_number_route", residue_zeta_K_class_number(ring)},
      {"zeta_K_2", {{"value", z2.value}, {"error_bound", z2.error_bound}}},
      {"P", {{"value", P.value}, {"error_bound", P.error_bound}}},
      {"Z", {{"value", Z.value}, {"error_bound", Z.error_bound}}},
      {"C_j", {{"value", bundle.C_j}, {"error_bound", bundle.error_bound}}}};
  out.stream() << obj.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------- identities

inline int cmd_identities(int j, const std::string& which,
                          const std::string& s_text, const std::string& w_text,
                          const Common& c) {
  Output out;
  out.open(c.output_path);
  auto s = parse_complex(s_text);
  auto w = parse_complex(w_text);
  json obj;
  bool all_pass = true;
  if (which == "mobius" || which == "all") {
    auto r = mobius_identity_check(s, w, j, 400, 60, 400, c.par());
    obj["mobius"] = {{"residual", r.residual},
                     {"bound", r.bound},
                     {"pass", r.within()}};
    all_pass = all_pass && r.within();
  }
  if (which == "euler" || which == "all") {
    json arr = json::array();
    const std::pair<long long, long long> instances[] = {{1, 1}, {5, 7}, {2, 1}};
    for (auto [m, d] : instances) {
      auto r = euler_product_check(m, d, s.real(), j, 400);
      arr.push_back({{"m", m},
                     {"d", d},
                     {"residual", r.residual},
                     {"bound", r.bound},
                     {"pass", r.within()}});
      all_pass = all_pass && r.within();
    }
    obj["euler"] = arr;
  }
  obj["pass"] = all_pass;
  out.stream() << obj.dump(2) << "\n";
  return all_pass ? 0 : 2;
}

// ----------------------------------------------------------- moment / scan

inline void write_moment_csv_header(std::ostream& os) {
  os << "j,Q,alpha,phi,lhs,main_term,ratio,char_count,nonvanishing_count,"
        "wall_time\n";
}

inline void write_moment_csv_row(std::ostream& os, const MomentRow& row) {
  os << row.j << "," << fmt15(row.Q) << "," << fmt15(row.alpha) << ","
     << row.phi << "," << fmt15(row.lhs) << "," << fmt15(row.main_term) << ","
     << fmt15(row.ratio) << "," << row.char_count << ","
     << row.nonvanishing_count << "," << fmt15(row.wall_time) << "\n";
}

inline json moment_json(const MomentRow& row) {
  return {{"j", row.j},
          {"Q", row.Q},
          {"alpha", row.alpha},
          {"phi", row.phi},
          {"lhs", row.lhs},
          {"main_term", row.main_term},
          {"ratio", row.ratio},
          {"char_count", row.char_count},
          {"nonvanishing_count", row.nonvanishing_count},
          {"wall_time", row.wall_time},
          {"lhs_error_bound", row.lhs_error_bound},
          {"imag_residual", row.imag_residual}};
}

inline int cmd_moment(int j, double Q, double alpha, const std::string& phi_name,
                      const Common& c) {
  Output out;
  out.open(c.output_path);
  auto phi = weight_preset(phi_name);
  MomentRow row = first_moment(j, Q, alpha, phi, c.par());
  if (c.format == "json") {
    out.stream() << moment_json(row).dump(2) << "\n";
  } else {
    write_moment_csv_header(out.stream());
    write_moment_csv_row(out.stream(), row);
  }
  return 0;
}

inline int cmd_scan(int j, const std::vector<double>& Qs, double alpha,
                    const std::string& phi_name, const std::string& plot_path,
                    const Common& c) {
  Output out;
  out.open(c.output_path);
  auto phi = weight_preset(phi_name);
  ScanResult res = scan(j, Qs, alpha, phi, c.par());
  if (!plot_path.empty()) {
    std::ofstream plot(plot_path);
    if (!plot) throw CLI::ValidationError("cannot open plot file: " + plot_path);
    plot << "log_Q,log_abs_deviation\n";
    for (auto [x, y] : res.plot) plot << fmt15(x) << "," << fmt15(y) << "\n";
  }
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& row : res.rows) rows.push_back(moment_json(row));
    json obj{{"rows", rows},
             {"fitted_exponent", res.fitted_exponent},
             {"fit_stderr", res.fit_stderr}};
    out.stream() << obj.dump(2) << "\n";
  } else {
    write_moment_csv_header(out.stream());
    for (const auto& row : res.rows) write_moment_csv_row(out.stream(), row);
    out.stream() << "# fitted_exponent=" << fmt15(res.fitted_exponent)
                 << " fit_stderr=" << fmt15(res.fit_stderr) << "\n";
  }
  return 0;
}

inline int cmd_nonvanishing(int j, double Q, const Common& c) {
  Output out;
  out.open(c.output_path);
  auto rep = nonvanishing_report(j, Q, c.par());
  if (c.format == "json") {
    json obj{{"j", j},
             {"Q", Q},
             {"count", rep.count},
             {"char_count", rep.char_count},
             {"proportion", rep.proportion},
             {"Q_to_6_7", rep.reference_power}};
    out.stream() << obj.dump(2) << "\n";
  } else {
    out.stream() << "count,char_count,proportion,Q_to_6_7\n"
                 << rep.count << "," << rep.char_count << ","
                 << fmt15(rep.proportion) << "," << fmt15(rep.reference_power)
                 << "\n";
  }
  return 0;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args) {
  using namespace cli_detail;

  // --args-from FILE: splice in tokens, one flag (or flag value pair) per line
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--args-from") continue;
    if (i + 1 >= args.size()) {
      std::cerr << "--args-from needs a file\n";
      return 1;
    }
    std::ifstream in(args[i + 1]);
    if (!in) {
      std::cerr << "cannot read " << args[i + 1] << "\n";
      return 1;
    }
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        if (tok[0] == '#') break;
        extra.push_back(tok);
      }
    }
    args.erase(args.begin() + static_cast<long>(i),
               args.begin() + static_cast<long>(i) + 2);
    args.insert(args.begin() + static_cast<long>(i), extra.begin(), extra.end());
    --i;
  }

  CLI::App app{"arithmetic of fixed-order Dirichlet character families"};
  app.require_subcommand(1);

  Common common;
  int j = 3;
  long long max_conductor = 100, max_norm = 500, conductor = 7, index = 0;
  bool count_only = false, fast = false;
  std::string m_text = "1", n_text = "1", s_text = "0.5+0i";
  std::string s_ident = "3+0i", w_ident = "3+0i";
  std::string phi_name = "default", which = "all", plot_path;
  double Q = 1000.0, alpha = 0.0;
  std::vector<double> Q_list;
  std::vector<std::string> identities{"all"};

  auto add_j = [&](CLI::App* cmd, bool with2 = false) {
    auto* opt = cmd->add_option("--j", j, "symbol order");
    opt->required();
    if (with2)
      opt->check(CLI::IsMember({2, 3, 4, 6}));
    else
      opt->check(CLI::IsMember({3, 4, 6}));
  };

  auto* c_enum = app.add_subcommand("enumerate", "list the character family");
  add_j(c_enum);
  c_enum->add_option("--max-conductor", max_conductor)->required();
  c_enum->add_flag("--count-only", count_only);
  add_common(c_enum, common);

  auto* c_sym = app.add_subcommand("symbol", "evaluate a residue symbol");
  add_j(c_sym, /*with2=*/true);
  c_sym->add_option("--m", m_text)->required();
  c_sym->add_option("--n", n_text)->required();
  c_sym->add_flag("--fast", fast, "use the reciprocity route");
  add_common(c_sym, common);

  auto* c_gauss = app.add_subcommand("gauss-check", "verify gauss-sum identities");
  add_j(c_gauss);
  c_gauss->add_option("--max-norm", max_norm)->required();
  c_gauss->add_option("--identities", identities,
                      "all|modulus|gmult|prod|grel|tauprim|tauprim1")
      ->delimiter(',');
  add_common(c_gauss, common);

  auto* c_lval = app.add_subcommand("lvalue", "one central/off-center L-value");
  add_j(c_lval);
  c_lval->add_option("--conductor", conductor)->required();
  c_lval->add_option("--index", index, "character index at that conductor");
  c_lval->add_option("--s", s_text, "complex point, e.g. 0.5+0i");
  add_common(c_lval, common);

  auto* c_fe = app.add_subcommand("fe-check", "functional-equation residuals");
  add_j(c_fe);
  c_fe->add_option("--max-conductor", max_conductor)->required();
  c_fe->add_option("--s", s_text);
  add_common(c_fe, common);

  auto* c_const = app.add_subcommand("constants", "main-term constant bundle");
  add_j(c_const);
  c_const->add_option("--alpha", alpha);
  add_common(c_const, common);

  auto* c_ident = app.add_subcommand("identities", "series rearrangement checks");
  add_j(c_ident);
  c_ident->add_option("--which", which)->check(CLI::IsMember({"mobius", "euler", "all"}));
  c_ident->add_option("--s", s_ident);
  c_ident->add_option("--w", w_ident);
  add_common(c_ident, common);

  auto* c_mom = app.add_subcommand("moment", "one smoothed first-moment row");
  add_j(c_mom);
  c_mom->add_option("--Q", Q)->required();
  c_mom->add_option("--alpha", alpha);
  c_mom->add_option("--phi", phi_name);
  add_common(c_mom, common);

  auto* c_scan = app.add_subcommand("scan", "moment rows over a Q grid");
  add_j(c_scan);
  c_scan->add_option("--Q-list", Q_list)->required()->delimiter(',');
  c_scan->add_option("--alpha", alpha);
  c_scan->add_option("--phi", phi_name);
  c_scan->add_option("--emit-plot", plot_path, "write (log Q, log |lhs-main|) pairs");
  add_common(c_scan, common);

  auto* c_nv = app.add_subcommand("nonvanishing", "nonvanishing counts");
  add_j(c_nv);
  c_nv->add_option("--Q", Q)->required();
  add_common(c_nv, common);

  std::vector<const char*> argv;
  argv.push_back("lfm");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(c_enum))
      return cmd_enumerate(j, max_conductor, count_only, common);
    if (app.got_subcommand(c_sym)) return cmd_symbol(j, m_text, n_text, fast, common);
    if (app.got_subcommand(c_gauss))
      return cmd_gauss_check(j, max_norm, identities, common);
    if (app.got_subcommand(c_lval))
      return cmd_lvalue(j, conductor, index, s_text, common);
    if (app.got_subcommand(c_fe)) return cmd_fe_check(j, max_conductor, s_text, common);
    if (app.got_subcommand(c_const)) return cmd_constants(j, alpha, common);
    if (app.got_subcommand(c_ident))
      return cmd_identities(j, which, s_ident, w_ident, common);
    if (app.got_subcommand(c_mom)) return cmd_moment(j, Q, alpha, phi_name, common);
    if (app.got_subcommand(c_scan))
      return cmd_scan(j, Q_list, alpha, phi_name, plot_path, common);
    if (app.got_subcommand(c_nv)) return cmd_nonvanishing(j, Q, common);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lfm
