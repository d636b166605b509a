#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "lfd/coefficients.hpp"
#include "lfd/density.hpp"
#include "lfd/errors.hpp"
#include "lfd/expsum.hpp"
#include "lfd/lfunction.hpp"
#include "lfd/zeros.hpp"

namespace lfd::cli {

namespace {

using json = nlohmann::ordered_json;

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(fmt(x).c_str(), nullptr);
}

json envelope(const char* command) { return json{{"schema", 1}, {"command", command}}; }

enum class Format { csv, json };

struct Common {
  int weight = 12;
  std::string out;
  Format format = Format::csv;
};

void add_common(CLI::App* sub, Common& c, Format default_format) {
  c.format = default_format;
  sub->add_option("--weight,-k", c.weight, "Weight of the level-one eigenform")->capture_default_str();
  sub->add_option("--out,-o", c.out, "Output file (stdout when omitted)");
  sub->add_option("--format", c.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}))
      ->capture_default_str();
  sub->add_option("--config", "File of key=value lines; command-line flags take precedence");
}

void require_weight(int k) {
  if (!EigenformSpec::is_supported(k)) {
    throw DomainError("weight " + std::to_string(k) + " has no cusp form of dimension one");
  }
}

// coeffs

struct CoeffsOpts {
  Common c;
  std::int64_t n = 100;
};

void cmd_coeffs(const CoeffsOpts& o, std::ostream& os) {
  require_weight(o.c.weight);
  const CoefficientTable table(EigenformSpec(o.c.weight), o.n);
  if (o.c.format == Format::csv) {
    table.write_csv(os);
    return;
  }
  json j = envelope("coeffs");
  j["weight"] = o.c.weight;
  j["n"] = o.n;
  json rows = json::array();
  for (std::int64_t n = 1; n <= o.n; ++n) {
    rows.push_back({{"n", n}, {"a", table.a(n).str()}, {"lambda", num(table.lambda(n))}, {"mu", num(table.mu(n))}});
  }
  j["coefficients"] = std::move(rows);
  os << j.dump(2) << '\n';
}

// eval

struct EvalOpts {
  Common c;
  std::string s;
  std::string method = "exact";
  double tol = 1e-10;
  std::int64_t terms = kDefaultTableSize;
};

void cmd_eval(const EvalOpts& o, std::ostream& os) {
  require_weight(o.c.weight);
  const auto s = parse_complex(o.s);
  if (!s) throw PreconditionError("cannot parse complex literal '" + o.s + "'");
  const LFunction L(o.c.weight);
  std::vector<EvalResult> results;
  auto run = [&](const std::string& m) {
    if (m == "dirichlet") results.push_back(L.dirichlet_eval(*s, o.terms));
    if (m == "afe") results.push_back(L.afe_eval(*s));
    if (m == "exact") results.push_back(L.exact_eval(*s, o.tol));
  };
  if (o.method == "both") {
    run(s->real() > 1.0 ? "dirichlet" : "afe");
    run("exact");
  } else {
    run(o.method);
  }
  bool agree = true;
  if (results.size() == 2 && !results[0].heuristic) {
    agree = std::abs(results[0].value - results[1].value) <= results[0].est_error + results[1].est_error;
  }
  if (o.c.format == Format::csv) {
    os << "method,re,im,est_error,terms,heuristic\n";
    for (const auto& r : results) {
      os << method_name(r.method) << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
         << fmt(r.est_error) << ',' << r.terms_used << ',' << (r.heuristic ? "true" : "false") << '\n';
    }
  } else {
    json j = envelope("eval");
    j["weight"] = o.c.weight;
    j["s"] = {{"re", num(s->real())}, {"im", num(s->imag())}};
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"method", method_name(r.method)},
                      {"re", num(r.value.real())},
                      {"im", num(r.value.imag())},
                      {"est_error", num(r.est_error)},
                      {"terms", r.terms_used},
                      {"heuristic", r.heuristic}});
    }
    j["results"] = std::move(rows);
    j["agree"] = agree;
    os << j.dump(2) << '\n';
  }
  if (!agree) throw CheckFailure("methods disagree beyond their combined error bounds");
}

// zeros

struct ZerosOpts {
  Common c;
  double t0 = 0.0, t1 = 100.0, step = 0.05;
  bool contour = true;
};

void cmd_zeros(const ZerosOpts& o, std::ostream& os, std::ostream& err) {
  require_weight(o.c.weight);
  const LFunction L(o.c.weight);
  std::vector<ZeroRecord> zeros;
  for (const auto& z : scan_zeros(L, o.t0, o.t1, o.step)) {
    if (z.gamma > o.t0) zeros.push_back(z);
  }
  std::optional<RectCount> rect;
  bool consistent = true;
  if (o.contour) {
    rect = count_zeros_rect(L, 0.0, o.t0, o.t1);
    consistent = rect->count == static_cast<std::int64_t>(zeros.size());
  }
  if (o.c.format == Format::csv) {
    write_zeros_csv(os, zeros);
    if (rect) err << "contour count " << rect->count << ", line zeros " << zeros.size() << '\n';
  } else {
    json j = envelope("zeros");
    j["weight"] = o.c.weight;
    j["t0"] = num(o.t0);
    j["t1"] = num(o.t1);
    json rows = json::array();
    for (const auto& z : zeros) {
      rows.push_back({{"gamma", num(z.gamma)}, {"beta", num(z.beta)}, {"radius", num(z.radius)},
                      {"method", method_name(z.method)}});
    }
    j["zeros"] = std::move(rows);
    if (rect) j["contour"] = {{"count", rect->count}, {"winding_residual", num(rect->winding_residual)}};
    j["consistent"] = consistent;
    os << j.dump(2) << '\n';
  }
  if (!consistent) throw CheckFailure("contour count differs from the number of line zeros");
}

// count

struct CountOpts {
  Common c;
  double sigma = 0.0, t0 = 0.0, t1 = 100.0;
};

void cmd_count(const CountOpts& o, std::ostream& os) {
  require_weight(o.c.weight);
  const LFunction L(o.c.weight);
  const RectCount r = count_zeros_rect(L, o.sigma, o.t0, o.t1);
  if (o.c.format == Format::csv) {
    os << "sigma0,t0,t1,count,winding_residual,sigma_left,sigma_right,evaluations\n"
       << fmt(r.sigma0) << ',' << fmt(r.t0) << ',' << fmt(r.t1) << ',' << r.count << ',' << fmt(r.winding_residual)
       << ',' << fmt(r.sigma_left) << ',' << fmt(r.sigma_right) << ',' << r.evaluations << '\n';
    return;
  }
  json j = envelope("count");
  j["weight"] = o.c.weight;
  j["sigma0"] = num(r.sigma0);
  j["t0"] = num(r.t0);
  j["t1"] = num(r.t1);
  j["count"] = r.count;
  j["winding_residual"] = num(r.winding_residual);
  j["sigma_left"] = num(r.sigma_left);
  j["sigma_right"] = num(r.sigma_right);
  j["evaluations"] = r.evaluations;
  os << j.dump(2) << '\n';
}

// density

struct DensityOpts {
  Common c;
  double T = 100.0;
  std::vector<double> sigmas{0.5, 0.6, 0.75, 0.9};
  std::vector<int> deltas{8};
};

void cmd_density(const DensityOpts& o, std::ostream& os) {
  require_weight(o.c.weight);
  const LFunction L(o.c.weight);
  const auto rows = density_report(L, o.sigmas, o.T);
  std::vector<ZeroRecord> window;
  for (const auto& z : scan_zeros(L, 0.5 * o.T, o.T, 0.05)) {
    if (z.gamma > 0.5 * o.T) window.push_back(z);
  }
  std::vector<MollifierRun> runs;
  for (int d : o.deltas) runs.push_back(run_mollifier(L, window, MollifierConfig::make(o.T, d)));

  bool pass = true;
  for (const auto& r : rows) pass = pass && r.consistent;
  for (const auto& m : runs) pass = pass && m.all_residuals_ok && m.min_margin > 0.0;

  if (o.c.format == Format::csv) {
    os << "sigma,count,exponent,bound,consistent\n";
    for (const auto& r : rows) {
      os << fmt(r.sigma) << ',' << r.count << ',' << fmt(r.exponent) << ',' << fmt(r.bound) << ','
         << (r.consistent ? "true" : "false") << '\n';
    }
    os << "\ndelta,X,zeros,nu0_kind,nu0_lo,nu0_hi,a_size,spaced,C,min_margin,max_d_ratio,residuals_ok\n";
    for (const auto& m : runs) {
      os << m.config.delta << ',' << fmt(m.config.X) << ',' << m.zeros.size() << ',' << kind_name(m.nu0.kind) << ','
         << fmt(m.nu0.lo) << ',' << fmt(m.nu0.hi) << ',' << m.a_size << ',' << m.E.zeros.size() << ',' << m.E.C << ','
         << fmt(m.min_margin) << ',' << fmt(m.max_d_ratio) << ',' << (m.all_residuals_ok ? "true" : "false") << '\n';
    }
  } else {
    json j = envelope("density");
    j["weight"] = o.c.weight;
    j["T"] = num(o.T);
    json jr = json::array();
    for (const auto& r : rows) {
      jr.push_back({{"sigma", num(r.sigma)}, {"count", r.count}, {"exponent", num(r.exponent)},
                    {"bound", num(r.bound)}, {"consistent", r.consistent}});
    }
    j["rows"] = std::move(jr);
    json jm = json::array();
    for (const auto& m : runs) {
      jm.push_back({{"delta", m.config.delta},
                    {"X", num(m.config.X)},
                    {"zeros", m.zeros.size()},
                    {"nu0",
                     {{"kind", kind_name(m.nu0.kind)},
                      {"lo", num(m.nu0.lo)},
                      {"hi", num(m.nu0.hi)},
                      {"n_lo", num(m.nu0.n_lo)},
                      {"n_hi", num(m.nu0.n_hi)}}},
                    {"a_size", m.a_size},
                    {"spaced",
                     {{"size", m.E.zeros.size()},
                      {"n0", m.E.n0},
                      {"j0", m.E.j0},
                      {"C", m.E.C},
                      {"identity", m.E.identity}}},
                    {"min_margin", num(m.min_margin)},
                    {"max_d_ratio", num(m.max_d_ratio)},
                    {"residuals_ok", m.all_residuals_ok}});
    }
    j["mollifier"] = std::move(jm);
    j["pass"] = pass;
    os << j.dump(2) << '\n';
  }
  if (!pass) throw CheckFailure("density report has an inconsistent row or a failed mollifier check");
}

// lemmas

struct LemmasOpts {
  Common c;
  std::string corpus = "default";
};

void cmd_lemmas(const LemmasOpts& o, std::ostream& os) {
  std::vector<CorpusEntry> entries;
  if (o.corpus == "default") {
    std::istringstream in(default_corpus());
    entries = parse_corpus(in);
  } else {
    std::ifstream in(o.corpus);
    if (!in) throw std::ios_base::failure("cannot open corpus " + o.corpus);
    entries = parse_corpus(in);
  }
  const auto results = run_corpus(entries);
  const bool pass = std::all_of(results.begin(), results.end(), [](const LemmaResult& r) { return r.pass; });
  if (o.c.format == Format::csv) {
    os << "name,check,family,measured,cap,lhs,rhs,quad_deviation,pass\n";
    for (const auto& r : results) {
      os << r.name << ',' << r.check << ',' << r.family << ',' << fmt(r.measured) << ','
         << (r.cap ? fmt(*r.cap) : "") << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.quad_deviation)
         << ',' << (r.pass ? "true" : "false") << '\n';
    }
  } else {
    json j = envelope("lemmas");
    j["corpus"] = o.corpus;
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"name", r.name},
                      {"check", r.check},
                      {"family", r.family},
                      {"measured", num(r.measured)},
                      {"cap", r.cap ? num(*r.cap) : json(nullptr)},
                      {"lhs", num(r.lhs)},
                      {"rhs", num(r.rhs)},
                      {"quad_deviation", num(r.quad_deviation)},
                      {"pass", r.pass}});
    }
    j["instances"] = std::move(rows);
    j["pass"] = pass;
    os << j.dump(2) << '\n';
  }
  if (!pass) throw CheckFailure("a corpus instance exceeded its frozen constant");
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expands --config FILE into --key=value tokens placed right after the
// subcommand name, ahead of the user's own flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> injected;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw ConfigError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
      const auto eq = line.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
      }
      std::string key = line.substr(0, eq), value = line.substr(eq + 1);
      key.erase(key.find_last_not_of(" \t") + 1);
      value.erase(0, value.find_first_not_of(" \t"));
      injected.push_back("--" + key + "=" + value);
    }
  }
  const auto sub = std::find_if(out.begin(), out.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (sub == out.end()) return out;
  out.insert(sub + 1, injected.begin(), injected.end());
  return out;
}

}  // namespace

std::optional<std::complex<double>> parse_complex(const std::string& text) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^\\s*([+-]?" + num + ")\\s*$");
  static const std::regex signed_imag("^\\s*([+-]?" + num + ")?([+-])(" + num + ")?i\\s*$");
  static const std::regex bare_imag("^\\s*(" + num + ")?i\\s*$");
  std::smatch m;
  if (std::regex_match(text, m, real_only)) return std::complex<double>(std::stod(m[1].str()), 0.0);
  if (std::regex_match(text, m, signed_imag)) {
    const double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
    const double im = m[3].matched ? std::stod(m[3].str()) : 1.0;
    return std::complex<double>(re, m[2].str() == "-" ? -im : im);
  }
  if (std::regex_match(text, m, bare_imag)) {
    return std::complex<double>(0.0, m[1].matched ? std::stod(m[1].str()) : 1.0);
  }
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hecke eigenform L-functions: coefficients, evaluation, zeros, density and lemma checks", "lfd"};
  app.require_subcommand(1, 1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CoeffsOpts co;
  auto* coeffs = app.add_subcommand("coeffs", "Write a_f(n), lambda_f(n), mu_f(n) for n <= N");
  add_common(coeffs, co.c, Format::csv);
  coeffs->add_option("--n", co.n, "Number of coefficients")
      ->check(CLI::Range(std::int64_t{1}, kMaxCoefficients))
      ->capture_default_str();

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "Evaluate L_f(s)");
  add_common(eval, eo.c, Format::csv);
  eval->add_option("--s", eo.s, "Complex point, e.g. 0.5+14i")->required();
  eval->add_option("--method", eo.method, "dirichlet, afe, exact or both")
      ->check(CLI::IsMember({"dirichlet", "afe", "exact", "both"}))
      ->capture_default_str();
  eval->add_option("--tol", eo.tol, "Target error for the exact method")
      ->check(CLI::Range(1e-15, 1e-1))
      ->capture_default_str();
  eval->add_option("--terms", eo.terms, "Dirichlet series length")
      ->check(CLI::Range(std::int64_t{1}, kDefaultTableSize))
      ->capture_default_str();

  ZerosOpts zo;
  auto* zeros = app.add_subcommand("zeros", "Zeros on the critical line in (t0, t1]");
  add_common(zeros, zo.c, Format::csv);
  zeros->add_option("--t0", zo.t0)->capture_default_str();
  zeros->add_option("--t1", zo.t1)->capture_default_str();
  zeros->add_option("--step", zo.step, "Scan step")->capture_default_str();
  zeros->add_flag("--contour,!--no-contour", zo.contour, "Cross-check against a contour count")
      ->capture_default_str();

  CountOpts cto;
  auto* count = app.add_subcommand("count", "Argument-principle count of zeros with Re >= sigma");
  add_common(count, cto.c, Format::json);
  count->add_option("--sigma", cto.sigma, "0 counts the whole strip")->capture_default_str();
  count->add_option("--t0", cto.t0)->capture_default_str();
  count->add_option("--t1", cto.t1)->capture_default_str();

  DensityOpts dn;
  auto* density = app.add_subcommand("density", "Zero-density table and mollifier block sums");
  add_common(density, dn.c, Format::json);
  density->add_option("--T", dn.T, "Height; the mollifier window is (T/2, T]")->capture_default_str();
  density->add_option("--sigmas", dn.sigmas)->delimiter(',')->capture_default_str();
  density->add_option("--delta", dn.deltas, "Mollifier length exponents, X = T^(1/delta)")
      ->delimiter(',')
      ->check(CLI::Range(1, 64))
      ->capture_default_str();

  LemmasOpts lo;
  auto* lemmas = app.add_subcommand("lemmas", "Run the exponential-sum validator corpus");
  add_common(lemmas, lo.c, Format::csv);
  lemmas->add_option("--corpus", lo.corpus, "'default' or a corpus file")->capture_default_str();

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return io_error;
  }

  try {
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? ok : usage;
  }

  const std::string& out_path = app.got_subcommand(coeffs)  ? co.c.out
                                : app.got_subcommand(eval)  ? eo.c.out
                                : app.got_subcommand(zeros) ? zo.c.out
                                : app.got_subcommand(count) ? cto.c.out
                                : app.got_subcommand(density) ? dn.c.out
                                                              : lo.c.out;
  std::ostringstream report;
  int code = ok;
  try {
    if (app.got_subcommand(coeffs)) cmd_coeffs(co, report);
    if (app.got_subcommand(eval)) cmd_eval(eo, report);
    if (app.got_subcommand(zeros)) cmd_zeros(zo, report, err);
    if (app.got_subcommand(count)) cmd_count(cto, report);
    if (app.got_subcommand(density)) cmd_density(dn, report);
    if (app.got_subcommand(lemmas)) cmd_lemmas(lo, report);
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << '\n';
    code = check_failure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return numeric;
  } catch (const OverflowError& e) {
    err << "numeric error: " << e.what() << '\n';
    return numeric;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return io_error;
  }

  if (out_path.empty()) {
    out << report.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << report.str();
    if (!f) {
      err << "i/o error: cannot write " << out_path << '\n';
      return io_error;
    }
  }
  return code;
}

}  // namespace lfd::cli
