#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gaussent/bipartite.hpp"
#include "gaussent/cli.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"
#include "gaussent/purification.hpp"

#ifndef GAUSSENT_VERSION
#define GAUSSENT_VERSION "0.0.0"
#endif

namespace gaussent::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RunReport new_report(const std::string& command, const std::string& type) {
  RunReport r;
  r.command = command;
  r.type = type;
  r.tool_version = GAUSSENT_VERSION;
  return r;
}

std::optional<double> parse_half_width(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidParams("--grid-l must be 'auto' or a number, got '" + text + "'");
  }
}

Grid grid_for(const GaussianKernelParams& p, std::optional<int> n, const std::string& l_text,
              RunReport& report, std::ostream& err) {
  bool coarse = false;
  if (n && *n < kMinGridPoints) {
    const std::string msg = "grid-n " + std::to_string(*n) + " is below the accuracy floor of " +
                            std::to_string(kMinGridPoints) + " points; results may be inaccurate";
    err << "warning: " << msg << "\n";
    report.warnings.push_back(msg);
    coarse = true;
  }
  return default_grid(p, n, parse_half_width(l_text), coarse);
}

void print_header(std::ostream& out, const RunReport& r) {
  out << "type " << r.type << " ";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    out << (first ? "" : ",") << k << "=" << short_num(v);
    first = false;
  }
  out << "\n";
}

void print_xi(std::ostream& out, const std::string& label, const XiPair& xi) {
  out << label << " xi1 = " << short_num(xi.xi1) << "  xi2 = " << short_num(xi.xi2) << "  ("
      << to_string(xi.classification) << ")" << (xi.ansatz_assumed ? "  [ansatz-assumed]" : "")
      << "\n";
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
  std::string type, params, alpha = "2";
  bool json = false;
};

int cmd_entropy(const EntropyArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  RunReport report = new_report("entropy", a.type);
  const GaussianKernelParams p = build_params(a.type, parse_kv(a.params), &report.params);
  validate(p);
  const AlphaSpec alphas = parse_alphas(a.alpha);
  const XiPair xi = xi_pair(p);
  if (alphas.von_neumann && xi.xi2 < 0.0) {
    throw DomainError("von Neumann entropy is undefined for an unphysical state (xi2 = " +
                      short_num(xi.xi2) + " < 0)");
  }
  report.xi = xi;
  report.entropy = entropy_report(xi, purity(p), alphas.orders, alphas.von_neumann);
  report.elapsed_seconds = seconds_since(t0);
  if (a.json) {
    out << to_json(report).dump(2) << "\n";
    return kExitOk;
  }
  print_header(out, report);
  print_xi(out, "analytic", xi);
  out << "purity = " << short_num(report.entropy->purity) << "\n";
  for (const auto& r : report.entropy->renyi) {
    out << "S_" << short_num(r.alpha) << " = " << short_num(r.total) << "  (" << short_num(r.factor1)
        << " + " << short_num(r.factor2) << ")\n";
  }
  if (report.entropy->von_neumann) {
    const auto& v = *report.entropy->von_neumann;
    out << "S_von = " << short_num(v.total) << "  (" << short_num(v.factor1) << " + "
        << short_num(v.factor2) << ")\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string type, params, grid_l = "auto";
  std::optional<int> grid_n;
  int top_k = kDefaultTopK;
  double tol = 1e-5;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  RunReport report = new_report("verify", a.type);
  const GaussianKernelParams p = build_params(a.type, parse_kv(a.params), &report.params);
  validate(p);
  if (a.top_k < 1) throw InvalidParams("--top-k must be positive");
  const XiPair analytic = xi_pair(p);
  report.xi = analytic;
  const Grid grid = grid_for(p, a.grid_n, a.grid_l, report, err);

  const DiscreteOperator op = discretize(p, grid);
  SpectralOracleResult r = spectrum(op);
  const GeometricFit fit = fit_geometric_pair(r, a.top_k);

  OracleSummary o;
  o.grid = grid;
  o.dim = r.dim;
  o.solver = r.solver;
  o.hermiticity_residual = r.hermiticity_residual;
  o.max_imag = r.max_imag;
  o.trace = r.trace;
  o.trace2 = r.trace2;
  o.trace3 = r.trace3;
  o.trace4 = r.trace4;
  o.fitted_xi = fit.xi;
  o.goodness = fit.goodness;
  o.top_eigenvalues.assign(r.eigenvalues.begin(),
                           r.eigenvalues.begin() + std::min<long>(a.top_k, static_cast<long>(r.eigenvalues.size())));
  o.xi_gap = std::max(std::abs(fit.xi.xi1 - analytic.xi1), std::abs(fit.xi.xi2 - analytic.xi2));
  o.spectrum_gap = spectrum_gap(r.eigenvalues, analytic, a.top_k);
  o.purity_gap = std::abs(r.trace2 - purity(p));
  o.trace_gap = std::abs(r.trace - 1.0);

  const std::pair<const char*, double> checks[] = {{"xi", *o.xi_gap},
                                                   {"eigenvalue", *o.spectrum_gap},
                                                   {"purity", *o.purity_gap},
                                                   {"trace", *o.trace_gap}};
  const auto worst = std::max_element(std::begin(checks), std::end(checks),
                                      [](const auto& x, const auto& y) { return x.second < y.second; });
  o.passed = worst->second <= a.tol;
  o.worst = std::string(worst->first) + " gap " + short_num(worst->second);
  report.oracle = o;
  report.elapsed_seconds = seconds_since(t0);

  if (a.json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    print_header(out, report);
    out << "grid N = " << grid.points << "  L = " << short_num(grid.half_width) << "  dim = " << r.dim
        << "  solver = " << r.solver << "\n";
    print_xi(out, "analytic", analytic);
    print_xi(out, "fitted  ", fit.xi);
    out << "trace = " << short_num(r.trace) << "  tr M^2 = " << short_num(r.trace2)
        << "  tr M^3 = " << short_num(r.trace3) << "\n";
    out << "hermiticity residual = " << short_num(r.hermiticity_residual)
        << "  max |Im lambda| = " << short_num(r.max_imag) << "\n";
    const std::vector<double> model = analytic.top_eigenvalues(o.top_eigenvalues.size());
    out << "  k  numeric             model               gap\n";
    for (std::size_t k = 0; k < o.top_eigenvalues.size(); ++k) {
      out << std::setw(3) << k << "  " << std::setw(18) << short_num(o.top_eigenvalues[k]) << "  "
          << std::setw(18) << short_num(model[k]) << "  "
          << short_num(std::abs(o.top_eigenvalues[k] - model[k])) << "\n";
    }
    out << "xi gap = " << short_num(*o.xi_gap) << "  eigenvalue gap = " << short_num(*o.spectrum_gap)
        << "  purity gap = " << short_num(*o.purity_gap) << "  trace gap = " << short_num(*o.trace_gap)
        << "\n";
    out << (o.passed ? "PASS" : "FAIL") << " (tol " << short_num(a.tol) << ", worst: " << o.worst << ")\n";
  }
  if (!o.passed) {
    err << "verification failed: " << o.worst << " exceeds tolerance " << short_num(a.tol) << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  std::string type, fixed, vary, alpha = "2,von", out = "-";
  bool json = false;
};

unsigned scan_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAUSSENT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scan_row(const std::string& type, const RawParams& raw, const AlphaSpec& alphas,
                     const std::vector<std::string>& names) {
  ParamMap resolved;
  std::string status = "invalid", message;
  std::vector<std::string> values;
  try {
    const GaussianKernelParams p = build_params(type, raw, &resolved);
    validate(p);
    const XiPair xi = xi_pair(p);
    values.push_back(num(xi.xi1));
    values.push_back(num(xi.xi2));
    values.push_back(num(purity(p)));
    const bool unphysical = xi.classification == Physicality::Unphysical;
    for (double a : alphas.orders) {
      // Non-integer orders of a negative ξ have no real value; leave the cell empty.
      std::string cell;
      try {
        const double s = entropy_report(xi, 1.0, std::vector<double>{a}, false).renyi[0].total;
        if (std::isfinite(s)) cell = num(s);
      } catch (const Error&) {
      }
      values.push_back(cell);
    }
    if (alphas.von_neumann) {
      values.push_back(unphysical ? std::string()
                                  : num(entropy_report(xi, 1.0, {}, true).von_neumann->total));
    }
    status = unphysical ? "unphysical" : "physical";
  } catch (const Error& e) {
    values.assign(3 + alphas.orders.size() + (alphas.von_neumann ? 1 : 0), std::string());
    message = e.what();
  }
  std::string line;
  for (const auto& n : names) {
    const auto it = resolved.find(n);
    line += (it != resolved.end() ? num(it->second) : csv_escape(raw.count(n) ? raw.at(n) : "")) + ",";
  }
  for (const auto& v : values) line += v + ",";
  line += status + "," + csv_escape(message);
  return line;
}

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  const auto& names = param_names(a.type);
  RawParams raw = parse_kv(a.fixed);
  const SweepRange range = parse_range(a.vary);
  if (std::find(names.begin(), names.end(), range.key) == names.end()) {
    throw InvalidParams("cannot vary '" + range.key + "': not a parameter of type " + a.type);
  }
  for (const auto& [k, v] : raw) {
    if (std::find(names.begin(), names.end(), k) == names.end()) {
      throw InvalidParams("unknown parameter '" + k + "' for type " + a.type);
    }
  }
  for (const auto& n : names) {
    if (n != range.key && !raw.count(n) && !(a.type == "III" && n == "fi")) {
      throw InvalidParams("missing fixed parameter '" + n + "'");
    }
  }
  const AlphaSpec alphas = parse_alphas(a.alpha);
  const std::vector<double> values = range.values();

  std::vector<std::string> lines(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
      RawParams point = raw;
      point[range.key] = num(values[i]);
      lines[i] = scan_row(a.type, point, alphas, names);
    }
  };
  const unsigned n_threads = std::min<unsigned>(scan_threads(), static_cast<unsigned>(values.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream* sink = &out;
  if (a.out != "-") {
    file.open(a.out);
    if (!file) throw InvalidParams("cannot open output file '" + a.out + "'");
    sink = &file;
  }
  for (const auto& n : names) *sink << n << ",";
  *sink << "xi1,xi2,purity,";
  for (double al : alphas.orders) *sink << "S_" << short_num(al) << ",";
  if (alphas.von_neumann) *sink << "S_von,";
  *sink << "status,message\n";
  for (const auto& l : lines) *sink << l << "\n";
  if (a.out != "-") err << "wrote " << values.size() << " rows to " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- purify

struct PurifyArgs {
  std::string type, params, xbar = "auto", grid_l = "auto";
  double theta = 0.0;
  bool check = false;
  std::optional<int> grid_n;
  double tol = 1e-7;
  bool json = false;
};

int cmd_purify(const PurifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  RunReport report = new_report("purify", a.type);
  if (a.type != "I" && a.type != "II" && a.type != "III") {
    throw InvalidParams("purify supports types I, II and III (no purification is known for type " +
                        a.type + ")");
  }
  const GaussianKernelParams p = build_params(a.type, parse_kv(a.params), &report.params);
  validate(p);
  PureState3 state;
  if (const auto* t1 = std::get_if<TypeIParams>(&p)) {
    state = purify_type_i(*t1);
  } else if (const auto* t2 = std::get_if<TypeIIParams>(&p)) {
    state = purify_type_ii(*t2);
  } else {
    std::optional<double> xbar;
    if (a.xbar != "auto") xbar = parse_half_width(a.xbar);
    state = purify_type_iii(std::get<TypeIIIParams>(p), a.theta, xbar);
  }
  report.purification = state;
  report.xi = xi_pair(p);

  bool passed = true;
  if (a.check) {
    const Grid grid = grid_for(p, a.grid_n, a.grid_l, report, err);
    const DiscreteOperator traced = numeric_partial_trace(state, grid);
    const DiscreteOperator kernel = discretize(p, grid);
    report.partial_trace_gap = max_abs_difference(traced.matrix, kernel.matrix);
    passed = *report.partial_trace_gap <= a.tol;
  }
  report.elapsed_seconds = seconds_since(t0);

  if (a.json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    print_header(out, report);
    out << "psi = sqrt(N) exp(-x^T Q x),  N = " << short_num(state.normalization) << "\n";
    for (int i = 0; i < 3; ++i) {
      out << "  Q" << i + 1 << ". =";
      for (int k = 0; k < 3; ++k) {
        const cplx q = state.quad(i, k);
        out << "  " << short_num(q.real()) << (q.imag() < 0 ? " - " : " + ") << short_num(std::abs(q.imag()))
            << "i";
      }
      out << "\n";
    }
    if (state.type_iii) {
      const auto& t = *state.type_iii;
      out << "theta = " << short_num(t.theta) << "  xbar = " << short_num(t.xbar)
          << "  theta_f = " << short_num(t.theta_f) << "\n";
      out << "r = (" << short_num(t.r1) << ", " << short_num(t.r2) << ", " << short_num(t.r3)
          << ")  phi = (" << short_num(t.phi1) << ", " << short_num(t.phi2) << ", " << short_num(t.phi3)
          << ")\n";
    }
    if (report.partial_trace_gap) {
      out << "partial-trace gap = " << short_num(*report.partial_trace_gap) << "  "
          << (passed ? "PASS" : "FAIL") << " (tol " << short_num(a.tol) << ")\n";
    }
  }
  if (!passed) {
    err << "partial-trace round trip failed: gap " << short_num(*report.partial_trace_gap) << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

const char* kScanColumnsHelp =
    "CSV columns: every parameter of the type, xi1, xi2, purity, S_<alpha> per order, "
    "S_von (if requested), status (physical|unphysical|invalid), message. Entropy cells are "
    "empty where undefined. Fixed values may name another parameter (f=c, f=-c).";

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi and von Neumann entropies of Gaussian density kernels"};
  app.set_version_flag("--version", std::string(GAUSSENT_VERSION));
  app.require_subcommand(1);
  const std::vector<std::string> types{"single", "I", "II", "III", "IV"};

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "closed-form xi pair, purity and entropies");
  entropy->add_option("--type", ea.type, "single|I|II|III|IV")->required()->check(CLI::IsMember(types));
  entropy->add_option("--params", ea.params, "k=v,... (type III: fr=,fi= for f)")->required();
  entropy->add_option("--alpha", ea.alpha, "orders, e.g. 2,3,von")->capture_default_str();
  entropy->add_flag("--json", ea.json, "emit the JSON run report");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "compare closed forms with the Nystrom oracle");
  verify->add_option("--type", va.type, "single|I|II|III|IV")->required()->check(CLI::IsMember(types));
  verify->add_option("--params", va.params, "k=v,...")->required();
  verify->add_option("--grid-n", va.grid_n, "points per axis (default 40, single party 200)");
  verify->add_option("--grid-l", va.grid_l, "half width or 'auto'")->capture_default_str();
  verify->add_option("--top-k", va.top_k, "eigenvalues compared")->capture_default_str();
  verify->add_option("--tol", va.tol, "pass threshold for every gap")->capture_default_str();
  verify->add_flag("--json", va.json, "emit the JSON run report");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "sweep one parameter and write CSV");
  scan->footer(kScanColumnsHelp);
  scan->add_option("--type", sa.type, "single|I|II|III|IV")->required()->check(CLI::IsMember(types));
  scan->add_option("--fixed", sa.fixed, "k=v,... for the other parameters")->required();
  scan->add_option("--vary", sa.vary, "key=start:stop:step")->required();
  scan->add_option("--alpha", sa.alpha, "orders, e.g. 2,von")->capture_default_str();
  scan->add_option("--out", sa.out, "CSV path, '-' for stdout")->capture_default_str();

  PurifyArgs pa;
  auto* purify = app.add_subcommand("purify", "tripartite pure state on the special surfaces");
  purify->add_option("--type", pa.type, "I|II|III")->required();
  purify->add_option("--params", pa.params, "k=v,...")->required();
  purify->add_option("--theta", pa.theta, "type III family angle")->capture_default_str();
  purify->add_option("--xbar", pa.xbar, "type III xbar or 'auto'")->capture_default_str();
  purify->add_flag("--check", pa.check, "numeric partial-trace round trip");
  purify->add_option("--grid-n", pa.grid_n, "points per axis for --check (default 40)");
  purify->add_option("--grid-l", pa.grid_l, "half width or 'auto'")->capture_default_str();
  purify->add_option("--tol", pa.tol, "round-trip threshold")->capture_default_str();
  purify->add_flag("--json", pa.json, "emit the JSON run report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*entropy) return cmd_entropy(ea, out);
    if (*verify) return cmd_verify(va, out, err);
    if (*scan) return cmd_scan(sa, out, err);
    if (*purify) return cmd_purify(pa, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitInvalid;
}

}  // namespace gaussent::cli
