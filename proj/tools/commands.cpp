#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cyclespec/asymptotics.hpp"
#include "cyclespec/eigenvectors.hpp"
#include "cyclespec/sweep.hpp"

namespace cyclespec::cli {

namespace {

constexpr int kPlotDigits = 17;

Json header(const RunConfig& config, int digits) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = config.command;
  if (config.has_alpha) {
    doc["alpha"] = to_string(config.alpha.re);
    if (config.alpha.im != 0) doc["alpha_im"] = to_string(config.alpha.im);
  }
  doc["prec_bits"] = config.bits;
  doc["digits"] = digits;
  return doc;
}

void require_alpha(const RunConfig& config) {
  if (!config.has_alpha) throw ParseError("--alpha is required for '" + config.command + "'");
}

long single_n(const RunConfig& config) {
  if (config.n.size() != 1) throw ParseError("--n must be a single order for '" + config.command + "'");
  if (config.n.front() < 3) throw DomainError("n must be >= 3");
  return config.n.front();
}

SpectralProblem problem_of(const RunConfig& config, long n) {
  require_alpha(config);
  SpectralProblem p(config.alpha.re, config.alpha.im, n);
  p.require_negative();
  return p;
}

std::vector<long> doubling(long from, long to) {
  std::vector<long> out;
  for (long n = from; n <= to; n *= 2) out.push_back(n);
  return out;
}

std::vector<long> n_list(const RunConfig& config, long first, std::vector<long> fallback) {
  if (!config.n.empty()) return config.n;
  if (config.n_max > 0) return doubling(first, config.n_max);
  return fallback;
}

std::string_view kind_name(RootKind k) {
  switch (k) {
    case RootKind::kInner: return "inner";
    case RootKind::kOutlier: return "outlier";
    case RootKind::kNone: return "none";
  }
  return "none";
}

Output plot_table(const RunConfig& config, Table table) {
  Output out;
  out.json = header(config, kPlotDigits);
  out.json["what"] = config.what;
  out.json["columns"] = table.columns;
  out.json["rows"] = table.rows;
  out.table = std::move(table);
  return out;
}

std::vector<ReferenceEigenvalue> read_reference(const std::string& path, long bits) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open reference file '" + path + "'");
  std::vector<ReferenceEigenvalue> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("alpha", 0) == 0) continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ParseError("reference rows are alpha,n,j,lambda: '" + line + "'");
    try {
      out.push_back({parse_rational(cells[0]), std::stol(cells[1]), std::stol(cells[2]), Real::parse(cells[3], bits)});
    } catch (const std::logic_error&) {
      throw ParseError("bad reference row '" + line + "'");
    }
  }
  return out;
}

}  // namespace

AlphaValue parse_alpha(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; }), s.end());
  AlphaValue a;
  a.text = s;
  if (const auto comma = s.find(','); comma != std::string::npos) {
    a.re = parse_rational(s.substr(0, comma));
    a.im = parse_rational(s.substr(comma + 1));
    return a;
  }
  if (!s.empty() && s.back() == 'i') {
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        cut = k;
        break;
      }
    }
    if (cut == std::string::npos) throw ParseError("alpha needs a real part: '" + s + "'");
    std::string im = s.substr(cut, s.size() - cut - 1);
    if (im == "+" || im == "-") im += "1";
    a.re = parse_rational(s.substr(0, cut));
    a.im = parse_rational(im);
    return a;
  }
  a.re = parse_rational(s);
  a.im = 0;
  return a;
}

Output cmd_constants(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  const SpectralProblem p = problem_of(config, config.n.empty() ? 3 : config.n.front());
  const ModelConstants c = constants(p, ctx);
  const std::vector<std::pair<std::string, std::string>> values = {
      {"kappa", number(c.kappa)},   {"kappa_exact", to_string(p.kappa_exact())},
      {"Omega", number(c.Omega)},   {"omega", number(c.omega)},
      {"N_alpha", std::to_string(c.N_alpha)},
      {"beta1", number(c.beta1)},   {"beta2", number(c.beta2)},
      {"beta3", number(c.beta3)},   {"gamma1", number(c.gamma1)},
      {"gamma2", number(c.gamma2)}, {"mu", number(c.mu)},
  };
  Output out;
  out.json = header(config, full_digits(config.bits));
  Json& obj = out.json["constants"];
  out.table.columns = {"name", "value"};
  for (const auto& [k, v] : values) {
    if (k == "N_alpha") {
      obj[k] = c.N_alpha;
    } else {
      obj[k] = v;
    }
    out.table.rows.push_back({k, v});
  }
  return out;
}

Output cmd_spectrum(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  const long n = single_n(config);
  const SpectralProblem p = problem_of(config, n);
  const auto records = full_spectrum(p.real_part(), ctx, config.method);

  Output out;
  out.json = header(config, full_digits(config.bits));
  out.json["n"] = n;
  out.json["method"] = to_string(config.method);
  out.table.columns = {"j", "lambda", "root", "root_kind", "method", "bracket_lo", "bracket_hi", "iterations"};
  Json& rows = out.json["records"] = Json::array();
  for (const auto& r : records) {
    const bool has_root = r.root_kind != RootKind::kNone;
    std::vector<std::string> cells = {std::to_string(r.j),
                                      number(r.lambda),
                                      has_root ? number(r.root) : "",
                                      std::string(kind_name(r.root_kind)),
                                      std::string(to_string(r.method)),
                                      has_root ? number(r.bracket_lo) : "",
                                      has_root ? number(r.bracket_hi) : "",
                                      std::to_string(r.iterations)};
    Json row;
    row["j"] = r.j;
    row["lambda"] = cells[1];
    row["root"] = has_root ? Json(cells[2]) : Json(nullptr);
    row["root_kind"] = cells[3];
    row["method"] = cells[4];
    row["bracket"] = has_root ? Json::array({cells[5], cells[6]}) : Json(nullptr);
    row["iterations"] = r.iterations;
    rows.push_back(std::move(row));
    out.table.rows.push_back(std::move(cells));
  }
  return out;
}

Output cmd_outlier(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  const long n = single_n(config);
  const SpectralProblem p = problem_of(config, n).real_part();
  if (n < p.n_alpha()) {
    throw DomainError("outlier requires n >= N_alpha = " + std::to_string(p.n_alpha()) + " (got " +
                      std::to_string(n) + ")");
  }
  const OutlierSolution sol = solve_outlier(p, ctx, config.method);
  const ModelConstants c = constants(p, ctx);
  const Real approx = lambda_asympt_outlier(p, ctx);
  const Real r1 = approx - sol.lambda1;
  const Real e = exp_minus_n_omega(p, ctx);
  const Real scaled = abs(r1) / (e * e * e) / (n * n);

  const std::vector<std::pair<std::string, std::string>> values = {
      {"s", number(sol.s)},
      {"s_asympt", number(s_asympt(p, ctx))},
      {"lambda1", number(sol.lambda1)},
      {"lambda1_asympt", number(approx)},
      {"R1", number(r1)},
      {"abs_R1", display(abs(r1))},
      {"scaled_R1", display(scaled)},
      {"ell", number(sol.ell)},
      {"omega", number(c.omega)},
      {"Omega", number(c.Omega)},
      {"method", std::string(to_string(sol.method))},
      {"iterations", std::to_string(sol.iterations)},
  };
  Output out;
  out.json = header(config, full_digits(config.bits));
  out.json["n"] = n;
  out.table.columns = {"name", "value"};
  for (const auto& [k, v] : values) {
    if (k == "iterations") {
      out.json[k] = sol.iterations;
    } else {
      out.json[k] = v;
    }
    out.table.rows.push_back({k, v});
  }
  return out;
}

Output cmd_eigvec(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  const long n = single_n(config);
  const SpectralProblem p = problem_of(config, n);
  const long j = config.j == 0 ? 1 : config.j;
  const EigenvalueRecord rec = solve_index(p.real_part(), j, ctx, config.method);
  const EigenvectorRecord ev = eigenvector(p, rec, ctx, config.normalize);

  Output out;
  out.json = header(config, full_digits(config.bits));
  out.json["n"] = n;
  out.json["j"] = j;
  out.json["lambda"] = number(ev.lambda);
  out.json["normalized"] = ev.normalized;
  out.json["norm_exact"] = number(ev.norm_exact);
  out.json["norm_asympt"] = number(ev.norm_asympt);
  out.json["residual"] = number(ev.residual, 6);
  long argmax = 1;
  Real best(ctx.bits());
  Json& comps = out.json["components"] = Json::array();
  out.table.columns = {"k", "re", "im"};
  for (std::size_t k = 0; k < ev.components.size(); ++k) {
    const auto& v = ev.components[k];
    const Real mag = v.norm();
    if (mag > best) {
      best = mag;
      argmax = static_cast<long>(k) + 1;
    }
    comps.push_back(Json::array({number(v.re), number(v.im)}));
    out.table.rows.push_back({std::to_string(k + 1), number(v.re), number(v.im)});
  }
  out.json["argmax_k"] = argmax;
  return out;
}

Output cmd_table1(const RunConfig& config) {
  require_alpha(config);
  const PrecisionContext ctx(config.bits);
  const auto ns = n_list(config, 128, {128, 256, 512, 1024});
  Output out;
  out.json = header(config, full_digits(config.bits));
  out.table.columns = {"n", "error", "scaled_error", "error_full", "scaled_error_full", "error_with_j2"};
  Json& rows = out.json["rows"] = Json::array();
  for (long n : ns) {
    const AsymptoticReport r =
        asymptotic_report(SpectralProblem(config.alpha.re, n), ctx, {.inner = true, .outlier = false});
    std::vector<std::string> cells = {std::to_string(n),          display(r.max_abs_error),
                                      display(r.scaled_inner),    number(r.max_abs_error),
                                      number(r.scaled_inner),     display(r.max_abs_error_with_j2)};
    Json row;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      row[out.table.columns[k]] = k == 0 ? Json(n) : Json(cells[k]);
    }
    rows.push_back(std::move(row));
    out.table.rows.push_back(std::move(cells));
  }
  return out;
}

Output cmd_table2(const RunConfig& config) {
  require_alpha(config);
  const PrecisionContext ctx(config.bits);
  const auto ns = n_list(config, 8, doubling(8, 512));
  Output out;
  out.json = header(config, full_digits(config.bits));
  out.table.columns = {"n", "error", "scaled_error", "error_full", "scaled_error_full"};
  Json& rows = out.json["rows"] = Json::array();
  for (long n : ns) {
    const AsymptoticReport r =
        asymptotic_report(SpectralProblem(config.alpha.re, n), ctx, {.inner = false, .outlier = true});
    if (!r.outlier_error) throw DomainError("no outlier for n=" + std::to_string(n));
    const Real err = abs(*r.outlier_error);
    std::vector<std::string> cells = {std::to_string(n), display(err), display(*r.scaled_outlier), number(err),
                                      number(*r.scaled_outlier)};
    Json row;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      row[out.table.columns[k]] = k == 0 ? Json(n) : Json(cells[k]);
    }
    rows.push_back(std::move(row));
    out.table.rows.push_back(std::move(cells));
  }
  return out;
}

Output cmd_plotdata(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  const long m = config.samples;
  if (m < 2) throw ParseError("--samples must be >= 2");
  // Endpoints are returned as given so that rounding cannot leave the domain.
  auto grid = [&](const Real& a, const Real& b, long i) { return i == m - 1 ? b : a + (b - a) * i / (m - 1); };
  auto fmt = [](const Real& x) { return number(x, kPlotDigits); };
  Table t;

  if (config.what == "g-spline") {
    // g on [0, pi] joined at 0 with g_minus reflected onto [-X, 0].
    const Real left = config.has_alpha ? -(3 * constants(problem_of(config, 3), ctx).omega) / 2 : -ctx.pi();
    t.columns = {"x", "y", "branch"};
    for (long i = 0; i < m; ++i) {
      const Real x = grid(left, ctx.pi(), i);
      const bool neg = x.sign() < 0;
      t.rows.push_back({fmt(x), fmt(neg ? g_minus(-x) : g(x)), neg ? "g_minus" : "g"});
    }
    return plot_table(config, std::move(t));
  }
  if (config.what == "eta") {
    const SpectralProblem p = problem_of(config, 3);
    const Real kappa = ctx.real(p.kappa_exact());
    t.columns = {"x", "eta"};
    for (long i = 0; i < m; ++i) {
      const Real x = grid(ctx.real(0), ctx.pi(), i);
      t.rows.push_back({fmt(x), fmt(eta(x, kappa))});
    }
    return plot_table(config, std::move(t));
  }
  if (config.what == "phi" || config.what == "f") {
    const SpectralProblem p = problem_of(config, single_n(config));
    const ModelConstants c = constants(p, ctx);
    const bool is_phi = config.what == "phi";
    t.columns = is_phi ? std::vector<std::string>{"x", "phi", "identity"} : std::vector<std::string>{"x", "f"};
    for (long i = 0; i < m; ++i) {
      const Real x = grid(ctx.real(0), 2 * c.omega, i);
      const Real ph = phi(x, p.n(), c.kappa);
      if (is_phi) {
        t.rows.push_back({fmt(x), fmt(ph), fmt(x)});
      } else {
        t.rows.push_back({fmt(x), fmt(x - ph)});
      }
    }
    return plot_table(config, std::move(t));
  }
  if (config.what == "profiles") {
    const SpectralProblem p = problem_of(config, single_n(config));
    std::vector<long> js;
    if (config.j > 0) {
      js.push_back(config.j);
    } else {
      for (long j = 1; j <= p.n(); ++j) js.push_back(j);
    }
    t.columns = {"j", "x", "re", "im"};
    for (long j : js) {
      const EigenvalueRecord rec = solve_index(p.real_part(), j, ctx, config.method);
      for (const auto& [x, w] : profile(p, rec, m, ctx)) {
        t.rows.push_back({std::to_string(j), fmt(x), fmt(w.re), fmt(w.im)});
      }
    }
    return plot_table(config, std::move(t));
  }
  throw ParseError("plotdata needs --what in {g-spline, eta, phi, f, profiles}");
}

Output cmd_verify(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  SweepConfig sweep;
  if (config.has_alpha) sweep.alphas = {config.alpha.re};
  if (!config.n.empty()) sweep.n_min = config.n.front();
  if (config.n_max > 0) sweep.n_max = config.n_max;
  sweep.oracle_max_n = config.oracle_max_n;
  if (!config.gen_file.empty()) sweep.reference = read_reference(config.gen_file, config.bits);
  const SweepSummary s = run_sweep(sweep, ctx);

  auto opt = [](const std::optional<Real>& x) { return x ? Json(number(*x, 6)) : Json(nullptr); };
  Output out;
  out.json = header(config, 6);
  out.json["n_max"] = sweep.n_max;
  out.json["jobs"] = s.rows.size();
  Json& th = out.json["thresholds"];
  th["residual"] = number(s.thresholds.residual, 6);
  th["method_diff"] = number(s.thresholds.method_diff, 6);
  th["oracle_diff"] = number(s.thresholds.oracle_diff, 6);
  th["trace"] = number(s.thresholds.trace, 6);
  if (s.max_reference_diff) th["reference_diff"] = number(s.thresholds.reference_diff, 6);
  Json& mx = out.json["max"];
  mx["residual"] = number(s.max_residual, 6);
  mx["newton_vs_bisection"] = number(s.max_newton_vs_bisection, 6);
  mx["fixed_point_vs_newton"] = number(s.max_fixed_point_vs_newton, 6);
  mx["oracle_diff"] = opt(s.max_oracle_diff);
  mx["trace"] = number(s.max_trace_error, 6);
  if (s.max_reference_diff) mx["reference_diff"] = opt(s.max_reference_diff);
  Json& ok = out.json["pass"];
  ok["residual"] = s.residual_ok();
  ok["methods"] = s.methods_ok();
  ok["oracle"] = s.oracle_ok();
  ok["trace"] = s.trace_ok();
  if (s.max_reference_diff) ok["reference"] = s.reference_ok();
  out.json["passed"] = s.passed();

  out.table.columns = {"alpha", "n", "residual", "newton_vs_bisection", "fixed_point_vs_newton", "oracle_diff",
                       "trace_error"};
  if (s.max_reference_diff) out.table.columns.push_back("reference_diff");
  for (const auto& r : s.rows) {
    std::vector<std::string> cells = {to_string(r.alpha),
                                      std::to_string(r.n),
                                      number(r.max_residual, 6),
                                      number(r.newton_vs_bisection, 6),
                                      number(r.fixed_point_vs_newton, 6),
                                      r.oracle_diff ? number(*r.oracle_diff, 6) : "",
                                      number(r.trace_error, 6)};
    if (s.max_reference_diff) cells.push_back(r.reference_diff ? number(*r.reference_diff, 6) : "");
    out.table.rows.push_back(std::move(cells));
  }
  out.status = s.passed() ? 0 : 4;
  return out;
}

Output dispatch(const RunConfig& config) {
  if (config.command == "constants") return cmd_constants(config);
  if (config.command == "spectrum") return cmd_spectrum(config);
  if (config.command == "outlier") return cmd_outlier(config);
  if (config.command == "eigvec") return cmd_eigvec(config);
  if (config.command == "table1") return cmd_table1(config);
  if (config.command == "table2") return cmd_table2(config);
  if (config.command == "plotdata") return cmd_plotdata(config);
  if (config.command == "verify") return cmd_verify(config);
  throw ParseError("unknown command '" + config.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalues and eigenvectors of the cycle Laplacian with one weighted edge"};
  app.name("cycle-spectra");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string alpha_text;
  std::string n_text;
  std::string method_text = "auto";
  std::string format_text = "json";
  app.add_option("--alpha", alpha_text, "edge weight: p/q, decimal, 're,im' or 're+imi'");
  app.add_option("--n", n_text, "matrix order (comma list for tables)");
  app.add_option("--n-max", config.n_max, "largest order for tables and verify");
  app.add_option("--prec-bits", config.bits, "binary precision")->check(CLI::Range(64L, 1L << 24));
  app.add_option("--method", method_text, "auto | newton | fixed-point | bisection");
  app.add_option("--format", format_text, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", config.out, "output file (default stdout)");

  app.add_subcommand("constants", "constants of alpha");
  app.add_subcommand("spectrum", "all n eigenvalues with provenance");
  app.add_subcommand("outlier", "negative eigenvalue and its asymptotic error");
  auto* eig = app.add_subcommand("eigvec", "eigenvector, norms and residual");
  eig->add_option("--j", config.j, "eigenvalue index (default 1)");
  eig->add_flag("--normalize", config.normalize, "divide by the exact norm");
  app.add_subcommand("table1", "inner asymptotic errors, max over even j >= 4");
  app.add_subcommand("table2", "outlier asymptotic errors");
  auto* plot = app.add_subcommand("plotdata", "sampled curves");
  plot->add_option("--what", config.what, "g-spline | eta | phi | f | profiles")
      ->check(CLI::IsMember({"g-spline", "eta", "phi", "f", "profiles"}));
  plot->add_option("--samples", config.samples, "samples per curve");
  plot->add_option("--j", config.j, "profile index (default: all)");
  auto* verify = app.add_subcommand("verify", "residual and cross-method sweep");
  verify->add_option("--gen-file", config.gen_file, "reference eigenvalues, CSV alpha,n,j,lambda");
  verify->add_option("--oracle-max-n", config.oracle_max_n, "oracle comparison up to this order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    if (!alpha_text.empty()) {
      config.alpha = parse_alpha(alpha_text);
      config.has_alpha = true;
    }
    if (!n_text.empty()) {
      std::stringstream ss(n_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
          v = std::stol(item, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used == 0 || used != item.size()) throw ParseError("bad --n value '" + item + "'");
        config.n.push_back(v);
      }
    }
    config.method = parse_method(method_text);
    config.format = format_text == "csv" ? Format::kCsv : Format::kJson;

    const Output result = dispatch(config);
    const std::string text =
        config.format == Format::kCsv ? to_csv(result.table) : to_json_text(result.json);
    if (config.out.empty()) {
      out << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw ParseError("cannot write '" + config.out + "'");
      file << text;
    }
    if (result.status != 0) err << "verification failed\n";
    return result.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace cyclespec::cli
