#include "pfx_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "pfx/errors.hpp"
#include "pfx/finite_pf.hpp"
#include "pfx/reference_oracle.hpp"
#include "pfx/series_engine.hpp"
#include "pfx/summation.hpp"
#include "pfx_cli/params.hpp"

namespace pfx::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

struct ConfigArgs {
  double tol = 1e-10;
  long n_max = 1'000'000;
  int streak = 8;

  ConvergenceConfig config() const {
    ConvergenceConfig c;
    c.tol = tol;
    c.n_max = n_max;
    c.streak = streak;
    c.validate();
    return c;
  }
};

struct SeriesArgs {
  std::string series;
  std::string x1, x2, a, lambda, s, t, u, x;
  int m = 0;
  int n = 0;
};

struct Evaluation {
  SeriesResult result;
  Complex oracle;
  std::vector<NamedValue> params;
};

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return format_double(z.real()) + (std::signbit(z.imag()) ? "" : "+") + format_double(z.imag()) + "i";
}

Json complex_json(Complex z) {
  return Json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}};
}

Complex required(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  return parse_complex(text);
}

Complex optional_value(const std::string& text, Complex fallback) {
  return text.empty() ? fallback : parse_complex(text);
}

int required_integer(const std::string& text, const char* flag, int fallback) {
  if (text.empty()) return fallback;
  const Complex v = parse_complex(text);
  if (v.imag() != 0.0 || v.real() != std::round(v.real()) || std::fabs(v.real()) > 1e6) {
    throw UsageError(std::string(flag) + " must be an integer");
  }
  return static_cast<int>(v.real());
}

std::array<Complex, 3> three_points(const std::string& text) {
  if (text.empty()) throw UsageError("missing --x");
  const std::vector<Complex> xs = parse_complex_list(text);
  if (xs.size() != 3) throw UsageError("--x takes exactly three comma-separated values");
  return {xs[0], xs[1], xs[2]};
}

double relative_error(Complex value, Complex oracle) {
  const double diff = std::abs(value - oracle);
  return std::abs(oracle) > 0.0 ? diff / std::abs(oracle) : diff;
}

Evaluation evaluate_series(const SeriesArgs& p, const ConvergenceConfig& cfg) {
  Evaluation ev;
  const std::string& name = p.series;
  const bool lambda_inf = is_infinity_literal(p.lambda);
  auto lambda = [&] {
    if (lambda_inf) throw UsageError("--lambda inf is only accepted by cdi-inf, pi-family and pi-squared");
    return required(p.lambda, "--lambda");
  };
  if (name == "gapf") {
    const Complex x1 = required(p.x1, "--x1"), x2 = required(p.x2, "--x2");
    ev.params = {{"x1", x1}, {"x2", x2}};
    ev.result = beta_gapf(x1, x2, cfg);
    if (ev.result.status != SeriesStatus::DomainViolation) ev.oracle = oracle::beta(x1, x2);
  } else if (name == "cdi") {
    const Complex x1 = required(p.x1, "--x1"), x2 = required(p.x2, "--x2");
    const Complex a = optional_value(p.a, 0.0), lam = lambda();
    ev.params = {{"x1", x1}, {"x2", x2}, {"a", a}, {"lambda", lam}};
    ev.result = beta_sym(x1, x2, a, lam, cfg);
    if (ev.result.status != SeriesStatus::DomainViolation) ev.oracle = oracle::cdi_lhs(x1, x2, a);
  } else if (name == "cdi-inf") {
    const Complex x1 = required(p.x1, "--x1"), x2 = required(p.x2, "--x2");
    ev.params = {{"x1", x1}, {"x2", x2}};
    ev.result = beta_sym_lambda_inf(x1, x2, cfg);
    if (ev.result.status != SeriesStatus::DomainViolation) ev.oracle = oracle::beta(x1, x2);
  } else if (name == "clf") {
    const Complex x1 = required(p.x1, "--x1"), x2 = required(p.x2, "--x2");
    const Complex s = required(p.s, "--s"), t = required(p.t, "--t"), u = required(p.u, "--u");
    const Complex lam = lambda();
    ev.params = {{"x1", x1}, {"x2", x2}, {"s", s}, {"t", t}, {"u", u}, {"lambda", lam}};
    ev.result = closed_asym(x1, x2, s, t, u, lam, cfg);
    if (ev.result.status != SeriesStatus::DomainViolation) ev.oracle = oracle::clf_lhs(x1, x2, s, t, u);
  } else if (name == "tvd") {
    const auto x = three_points(p.x);
    const Complex u = required(p.u, "--u"), lam = lambda();
    ev.params = {{"x1", x[0]}, {"x2", x[1]}, {"x3", x[2]}, {"u", u}, {"lambda", lam}};
    ev.result = closed_sym(x, u, lam, cfg);
    if (ev.result.status != SeriesStatus::DomainViolation) ev.oracle = oracle::tvd_lhs(x, u);
  } else if (name == "tve") {
    const auto x = three_points(p.x);
    const int a = required_integer(p.a, "--a", 0);
    const Complex lam = lambda();
    ev.params = {{"x1", x[0]}, {"x2", x[1]}, {"x3", x[2]}, {"a", static_cast<double>(a)}, {"lambda", lam}};
    ev.result = closed_sym_integer(x, a, lam, cfg);
    if (ev.result.status != SeriesStatus::DomainViolation) {
      const Complex as = static_cast<double>(a) + x[0] + x[1] + x[2];
      ev.oracle = oracle::tvd_lhs(x, as) * gamma(as);
    }
  } else if (name == "pi-family") {
    const int a = required_integer(p.a, "--a", 0);
    ev.params = {{"m", static_cast<double>(p.m)}, {"n", static_cast<double>(p.n)}, {"a", static_cast<double>(a)}};
    if (lambda_inf) {
      if (a != 0) throw UsageError("--lambda inf requires --a 0");
      ev.result = pi_family_lambda_inf(p.m, p.n, cfg);
    } else {
      const Complex lam = lambda();
      ev.params.emplace_back("lambda", lam);
      ev.result = pi_family(p.m, p.n, a, lam, cfg);
    }
    ev.oracle = kPi;
  } else if (name == "pi-squared") {
    ev.oracle = kPi * kPi / 2.0;
    if (lambda_inf) {
      ev.result.status = SeriesStatus::DomainViolation;
      ev.result.value = Complex(std::nan(""), 0.0);
      ev.result.tail_bound = INFINITY;
      ev.result.message = "the lambda -> infinity form of this series is divergent";
    } else {
      const Complex lam = lambda();
      ev.params = {{"lambda", lam}};
      ev.result = pi_squared_series(lam, cfg);
    }
  } else {
    throw UsageError("unknown series '" + name +
                     "' (expected gapf, cdi, cdi-inf, clf, tvd, tve, pi-family, pi-squared)");
  }
  return ev;
}

bool within_tolerance(const Evaluation& ev, double tol) {
  return ev.result.status == SeriesStatus::Converged && relative_error(ev.result.value, ev.oracle) <= tol;
}

int exit_for(const Evaluation& ev, double tol) {
  if (ev.result.status == SeriesStatus::DomainViolation) return kExitDomain;
  return within_tolerance(ev, tol) ? kExitOk : kExitNotConverged;
}

Json params_json(const std::vector<NamedValue>& params) {
  Json j = Json::object();
  for (const auto& [name, value] : params) j[name] = complex_json(value);
  return j;
}

Json config_json(const ConvergenceConfig& cfg) {
  return Json{{"tol", format_double(cfg.tol)},
              {"n_max", std::to_string(cfg.n_max)},
              {"streak", std::to_string(cfg.streak)}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  file << text;
}

void add_series_options(CLI::App* cmd, SeriesArgs& p) {
  cmd->add_option("series", p.series, "gapf, cdi, cdi-inf, clf, tvd, tve, pi-family, pi-squared")->required();
  cmd->add_option("--x1", p.x1, "first variable");
  cmd->add_option("--x2", p.x2, "second variable");
  cmd->add_option("--x", p.x, "three comma-separated variables (tvd, tve)");
  cmd->add_option("--a", p.a, "shift a (integer for tve and pi-family)");
  cmd->add_option("--lambda", p.lambda, "free parameter lambda (or inf where allowed)");
  cmd->add_option("--s", p.s, "parameter s (clf)");
  cmd->add_option("--t", p.t, "parameter t (clf)");
  cmd->add_option("--u", p.u, "parameter u (clf, tvd)");
  cmd->add_option("--m", p.m, "pi-family m")->check(CLI::NonNegativeNumber);
  cmd->add_option("--n", p.n, "pi-family n")->check(CLI::NonNegativeNumber);
}

void add_config_options(CLI::App* cmd, ConfigArgs& c) {
  cmd->add_option("--tol", c.tol, "relative tolerance")->capture_default_str();
  cmd->add_option("--n-max", c.n_max, "term cap")->capture_default_str();
  cmd->add_option("--streak", c.streak, "consecutive small terms required")->capture_default_str();
}

// ---- eval ----

int cmd_eval(const SeriesArgs& p, const ConfigArgs& c, const std::string& format,
             const std::string& path, std::ostream& out) {
  const ConvergenceConfig cfg = c.config();
  const Evaluation ev = evaluate_series(p, cfg);
  const SeriesResult& r = ev.result;
  const bool domain = r.status == SeriesStatus::DomainViolation;
  const double rel = domain ? NAN : relative_error(r.value, ev.oracle);
  std::ostringstream text;
  if (format == "csv") {
    text << "series,value_re,value_im,oracle_re,oracle_im,rel_err,terms_used,tail_bound,status\n";
    text << p.series << ',' << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
         << format_double(domain ? NAN : ev.oracle.real()) << ','
         << format_double(domain ? NAN : ev.oracle.imag()) << ',' << format_double(rel) << ','
         << r.terms_used << ',' << format_double(r.tail_bound) << ',' << to_string(r.status) << '\n';
  } else {
    Json j;
    j["command"] = "eval";
    j["series"] = p.series;
    j["params"] = params_json(ev.params);
    j["config"] = config_json(cfg);
    j["series_value"] = complex_json(r.value);
    j["oracle_value"] = domain ? Json(nullptr) : complex_json(ev.oracle);
    j["rel_err"] = format_double(rel);
    j["terms_used"] = std::to_string(r.terms_used);
    j["tail_bound"] = format_double(r.tail_bound);
    j["status"] = to_string(r.status);
    j["decay_exponent_fit"] = r.decay_exponent_fit ? Json(format_double(*r.decay_exponent_fit)) : Json(nullptr);
    j["message"] = r.message;
    text << j.dump(2) << '\n';
  }
  emit(text.str(), path, out);
  return exit_for(ev, cfg.tol);
}

// ---- verify-finite ----

struct VerifyArgs {
  std::string identity;
  int count = 100;
  int n_min = 0;
  int n_max = 8;
  unsigned long long seed = 0;
  int r = 3;
};

int cmd_verify(const VerifyArgs& v, const std::string& format, const std::string& path, std::ostream& out) {
  const FiniteKind kind = [&] {
    try {
      return finite_kind_from_string(v.identity);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (v.count < 0 || v.n_min < 0 || v.n_max < v.n_min) throw UsageError("need count >= 0 and 0 <= n-min <= n-max");
  if (kind == FiniteKind::GPF && (v.r < 1 || v.r > 6)) throw UsageError("--r must be between 1 and 6");
  std::mt19937_64 rng(v.seed);
  const double bound = finite_rel_bound(kind);
  double max_rel = 0.0;
  double max_qtv = 0.0;
  long total_redraws = 0;
  Json reports = Json::array();
  std::ostringstream csv;
  csv << "index,n,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,condition\n";
  const int span = v.n_max - v.n_min + 1;
  for (int i = 0; i < v.count; ++i) {
    const int n = v.n_min + i % span;
    int redraws = 0;
    const FiniteIdentityInstance inst = sample_instance(kind, n, rng, v.r, &redraws);
    total_redraws += redraws;
    const IdentityReport rep = evaluate(inst);
    max_rel = std::max(max_rel, rep.rel_err);
    if (kind == FiniteKind::GPF) max_qtv = std::max(max_qtv, t_vector_residual(inst));
    Json j;
    j["index"] = std::to_string(i);
    j["n"] = std::to_string(n);
    j["lhs"] = complex_json(rep.lhs);
    j["rhs"] = complex_json(rep.rhs);
    j["abs_err"] = format_double(rep.abs_err);
    j["rel_err"] = format_double(rep.rel_err);
    j["condition"] = format_double(rep.condition);
    j["point"] = params_json(rep.point);
    reports.push_back(std::move(j));
    csv << i << ',' << n << ',' << format_double(rep.lhs.real()) << ',' << format_double(rep.lhs.imag()) << ','
        << format_double(rep.rhs.real()) << ',' << format_double(rep.rhs.imag()) << ','
        << format_double(rep.abs_err) << ',' << format_double(rep.rel_err) << ','
        << format_double(rep.condition) << '\n';
  }
  const bool pass = max_rel <= bound;
  if (format == "csv") {
    csv << "# max_rel_err=" << format_double(max_rel) << ",bound=" << format_double(bound)
        << ",pass=" << (pass ? "true" : "false") << ",redraws=" << total_redraws << '\n';
    emit(csv.str(), path, out);
  } else {
    Json j;
    j["command"] = "verify-finite";
    j["identity"] = to_string(kind);
    j["seed"] = std::to_string(v.seed);
    j["count"] = std::to_string(v.count);
    j["n_min"] = std::to_string(v.n_min);
    j["n_max"] = std::to_string(v.n_max);
    if (kind == FiniteKind::GPF) j["r"] = std::to_string(v.r);
    j["reports"] = std::move(reports);
    Json summary;
    summary["max_rel_err"] = format_double(max_rel);
    summary["bound"] = format_double(bound);
    summary["pass"] = pass;
    summary["redraws"] = std::to_string(total_redraws);
    if (kind == FiniteKind::GPF) summary["max_t_vector_residual"] = format_double(max_qtv);
    j["summary"] = std::move(summary);
    emit(j.dump(2) + "\n", path, out);
  }
  return pass ? kExitOk : kExitNotConverged;
}

// ---- pi ----

struct PiArgs {
  int m = 0;
  int n = 0;
  int a = 0;
  std::string lambda = "1/2";
  bool squared = false;
  int terms = 16;
};

int cmd_pi_squared(const PiArgs& pa, const ConfigArgs& c, const std::string& path, std::ostream& out) {
  const ConvergenceConfig cfg = c.config();
  std::ostringstream text;
  text << "k,term_re,term_im,partial_re,partial_im\n";
  if (is_infinity_literal(pa.lambda)) {
    text << "# lambda=inf,status=DomainViolation,message=the lambda -> infinity form of this series is divergent\n";
    emit(text.str(), path, out);
    return kExitDomain;
  }
  const Complex lambda = parse_complex(pa.lambda);
  const SeriesResult r = pi_squared_series(lambda, cfg);
  if (r.status != SeriesStatus::DomainViolation) {
    const Complex half = 0.5;
    const Complex shift = (half - lambda) * (half - lambda) * (half - lambda);
    CompensatedSum partial;
    for (long k = 0; k < pa.terms; ++k) {
      const double kk = static_cast<double>(k);
      const Complex product = (-0.5 - kk) + lambda * (1.5 + kk - lambda) - shift / (lambda + kk);
      const Complex t = terms::pi_squared(0.5 - kk, product, lambda, k);
      partial.add(t);
      text << k << ',' << format_double(t.real()) << ',' << format_double(t.imag()) << ','
           << format_double(partial.value().real()) << ',' << format_double(partial.value().imag()) << '\n';
    }
  }
  const double target = kPi * kPi / 2.0;
  text << "# lambda=" << format_complex(lambda) << ",value=" << format_complex(r.value)
       << ",target=" << format_double(target) << ",rel_err=" << format_double(relative_error(r.value, target))
       << ",terms_used=" << r.terms_used << ",tail_bound=" << format_double(r.tail_bound)
       << ",status=" << to_string(r.status) << '\n';
  emit(text.str(), path, out);
  return r.status == SeriesStatus::DomainViolation ? kExitDomain : kExitOk;
}

int cmd_pi(const PiArgs& pa, const ConfigArgs& c, const std::string& path, std::ostream& out) {
  if (pa.squared) return cmd_pi_squared(pa, c, path, out);
  const ConvergenceConfig cfg = c.config();
  struct Row {
    int m, n, a;
    std::string lambda;
  };
  std::vector<Row> rows{{pa.m, pa.n, pa.a, pa.lambda}};
  auto same = [](const Row& x, const Row& y) {
    const bool lx = is_infinity_literal(x.lambda), ly = is_infinity_literal(y.lambda);
    if (x.m != y.m || x.n != y.n || x.a != y.a || lx != ly) return false;
    return lx || parse_complex(x.lambda) == parse_complex(y.lambda);
  };
  for (const Row& base : {Row{0, 0, 0, "inf"}, Row{0, 0, 0, "1/2"}}) {
    if (!same(rows.front(), base)) rows.push_back(base);
  }
  std::ostringstream text;
  text << "m,n,a,lambda,value,rel_err_vs_pi,terms_used,tail_bound,status\n";
  int code = kExitOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    SeriesArgs p;
    p.series = "pi-family";
    p.m = row.m;
    p.n = row.n;
    p.a = std::to_string(row.a);
    p.lambda = row.lambda;
    const Evaluation ev = evaluate_series(p, cfg);
    const SeriesResult& r = ev.result;
    const bool domain = r.status == SeriesStatus::DomainViolation;
    if (domain && i == 0) code = kExitDomain;
    const std::string lam = is_infinity_literal(row.lambda) ? "inf" : format_complex(parse_complex(row.lambda));
    text << row.m << ',' << row.n << ',' << row.a << ',' << lam << ',' << format_complex(r.value) << ','
         << format_double(domain ? NAN : relative_error(r.value, kPi)) << ',' << r.terms_used << ','
         << format_double(r.tail_bound) << ',' << to_string(r.status) << '\n';
  }
  emit(text.str(), path, out);
  return code;
}

// ---- convergence ----

struct ConvergenceArgs {
  long k_max = 2000;
  long fit_min = 100;
};

int cmd_convergence(const SeriesArgs& p, const ConvergenceArgs& ca, const std::string& path, std::ostream& out) {
  if (ca.k_max < 1 || ca.fit_min < 0 || ca.fit_min > ca.k_max) throw UsageError("need 0 <= fit-min <= k-max");
  ConvergenceConfig cfg;
  cfg.tol = 1e-300;  // never stop early: the full trace is wanted
  cfg.n_max = ca.k_max + 1;
  cfg.trace = true;
  const Evaluation ev = evaluate_series(p, cfg);
  std::ostringstream text;
  text << "k,abs_term,abs_partial_minus_oracle\n";
  MagnitudeTrace fit_points;
  for (const TraceRow& row : ev.result.trace) {
    const double mag = std::abs(row.term);
    text << row.k << ',' << format_double(mag) << ',' << format_double(std::abs(row.partial - ev.oracle)) << '\n';
    if (row.k >= ca.fit_min && row.k <= ca.k_max) fit_points.emplace_back(row.k, mag);
  }
  int code = kExitOk;
  if (ev.result.status == SeriesStatus::DomainViolation) {
    text << "# status=DomainViolation,message=" << ev.result.message << '\n';
    code = kExitDomain;
  } else {
    try {
      text << "# decay_exponent=" << format_double(tail_exponent_estimate(fit_points)) << ",fit_k_min=" << ca.fit_min
           << ",fit_k_max=" << ca.k_max << '\n';
    } catch (const FitError& e) {
      text << "# decay_exponent=nan,message=" << e.what() << '\n';
      code = kExitNotConverged;
    }
  }
  emit(text.str(), path, out);
  return code;
}

// ---- sweep ----

struct SweepArgs {
  double lambda_min = 0.5;
  double lambda_max = 5.0;
  int steps = 10;
};

int cmd_sweep(SeriesArgs p, const SweepArgs& sa, const ConfigArgs& c, const std::string& path, std::ostream& out) {
  if (sa.steps < 1) throw UsageError("--steps must be at least 1");
  if (p.series == "gapf" || p.series == "cdi-inf") throw UsageError("series '" + p.series + "' has no lambda");
  const ConvergenceConfig cfg = c.config();
  std::ostringstream text;
  text << "lambda,value_re,value_im,oracle_re,oracle_im,rel_err,terms_used,tail_bound,status\n";
  bool all_ok = true;
  for (int i = 0; i < sa.steps; ++i) {
    const double lam = sa.steps == 1 ? sa.lambda_min
                                     : sa.lambda_min + (sa.lambda_max - sa.lambda_min) * i / (sa.steps - 1);
    p.lambda = format_double(lam);
    text << format_double(lam) << ',';
    try {
      const Evaluation ev = evaluate_series(p, cfg);
      const SeriesResult& r = ev.result;
      const bool domain = r.status == SeriesStatus::DomainViolation;
      all_ok = all_ok && within_tolerance(ev, cfg.tol);
      text << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
           << format_double(domain ? NAN : ev.oracle.real()) << ',' << format_double(domain ? NAN : ev.oracle.imag())
           << ',' << format_double(domain ? NAN : relative_error(r.value, ev.oracle)) << ',' << r.terms_used << ','
           << format_double(r.tail_bound) << ',' << to_string(r.status) << '\n';
    } catch (const PoleError&) {
      all_ok = false;
      text << "nan,nan,nan,nan,nan,0,inf,PoleError\n";
    }
  }
  emit(text.str(), path, out);
  return all_ok ? kExitOk : kExitNotConverged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"partial-fraction expansions of gamma ratios", "pfx"};
  app.require_subcommand(1);
  std::string path;
  std::string format = "json";

  SeriesArgs eval_args;
  ConfigArgs eval_cfg;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a series against its closed form");
  add_series_options(eval, eval_args);
  add_config_options(eval, eval_cfg);
  eval->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  eval->add_option("--out", path, "write the report to PATH");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify-finite", "check a finite identity at seeded random points");
  verify->add_option("identity", verify_args.identity, "bpf, gpf, twpf, cbi, affp, yl")->required();
  verify->add_option("--count", verify_args.count, "number of points")->capture_default_str();
  verify->add_option("--n-min", verify_args.n_min, "smallest n")->capture_default_str();
  verify->add_option("--n-max", verify_args.n_max, "largest n")->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "random seed")->capture_default_str();
  verify->add_option("--r", verify_args.r, "number of variables (gpf)")->capture_default_str();
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", path, "write the report to PATH");

  PiArgs pi_args;
  ConfigArgs pi_cfg;
  CLI::App* pi = app.add_subcommand("pi", "table of pi (or pi^2/2) expansions");
  pi->add_option("--m", pi_args.m, "m")->check(CLI::NonNegativeNumber);
  pi->add_option("--n", pi_args.n, "n")->check(CLI::NonNegativeNumber);
  pi->add_option("--a", pi_args.a, "a");
  pi->add_option("--lambda", pi_args.lambda, "lambda, or inf")->capture_default_str();
  pi->add_flag("--pi-squared", pi_args.squared, "use the pi^2/2 series");
  pi->add_option("--terms", pi_args.terms, "leading terms listed for --pi-squared")->capture_default_str();
  add_config_options(pi, pi_cfg);
  pi->add_option("--out", path, "write the table to PATH");

  SeriesArgs conv_args;
  ConvergenceArgs conv;
  CLI::App* convergence = app.add_subcommand("convergence", "per-term trace and fitted decay exponent");
  add_series_options(convergence, conv_args);
  convergence->add_option("--k-max", conv.k_max, "last term index")->capture_default_str();
  convergence->add_option("--fit-min", conv.fit_min, "first index used in the fit")->capture_default_str();
  convergence->add_option("--out", path, "write the trace to PATH");

  SeriesArgs sweep_args;
  ConfigArgs sweep_cfg;
  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a series over a lambda grid");
  add_series_options(sweep_cmd, sweep_args);
  add_config_options(sweep_cmd, sweep_cfg);
  sweep_cmd->add_option("--lambda-min", sweep.lambda_min)->capture_default_str();
  sweep_cmd->add_option("--lambda-max", sweep.lambda_max)->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps)->capture_default_str();
  sweep_cmd->add_option("--out", path, "write the table to PATH");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pfx: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args, eval_cfg, format, path, out);
    if (*verify) return cmd_verify(verify_args, format, path, out);
    if (*pi) return cmd_pi(pi_args, pi_cfg, path, out);
    if (*convergence) return cmd_convergence(conv_args, conv, path, out);
    if (*sweep_cmd) return cmd_sweep(sweep_args, sweep, sweep_cfg, path, out);
  } catch (const UsageError& e) {
    err << "pfx: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "pfx: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PoleError& e) {
    err << "pfx: pole: " << e.what() << '\n';
    return kExitPole;
  } catch (const DivisionByZero& e) {
    err << "pfx: pole: " << e.what() << '\n';
    return kExitPole;
  } catch (const Error& e) {
    err << "pfx: numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace pfx::cli
