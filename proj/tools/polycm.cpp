// polycm: evaluate polygamma functionals and verify the inequalities built on them.
//
//   polycm eval theta --s 0 --t 0.5 --x 2
//   polycm verify all --json report.json
//   polycm verify cm --pair 0,1 --precision extended:50

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polycm/polycm.hpp"

namespace {

struct EvalArgs {
  std::string fn;
  double x = 1;
  double s = 0;
  double t = 0;
  double c = 1;
  int n = 0;
  int k = 0;
};

const std::map<std::string, std::string> eval_help = {
    {"lngamma", "ln Gamma(x)"},
    {"digamma", "psi(x)"},
    {"polygamma", "psi^(n)(x)"},
    {"xstar", "positive zero of psi"},
    {"divided", "m-th divided difference of psi, m = --n"},
    {"z", "z_{s,t}(x), z', z''"},
    {"theta", "Theta_{s,t}(x), k-th derivative with --k"},
    {"delta", "Delta_{s,t}(x), k-th derivative with --k"},
    {"lambda", "Lambda_{s,t}(x)"},
    {"phi", "Phi_{s,t}(x)"},
    {"g", "g_{s,t}(x) anchored at --c"},
    {"f", "f_{s,t}(x) anchored at --c"},
    {"h", "h_{s,t}(x) and h'(x) anchored at --c"},
    {"q", "Q(x)"},
    {"theta1", "theta_1(x)"},
    {"theta2", "theta_2(x)"},
    {"ball-ratio", "Omega_{n-1}/Omega_n"},
    {"gauss", "2 * integral of exp(-u^2) over [0, sqrt(n)]"},
};

template <class T>
void print(std::ostream& os, const std::string& name, const T& v) {
  os << name << " = " << std::setprecision(polycm::digits10_v<T>) << v << '\n';
}

template <class T>
int evaluate(const EvalArgs& a, std::ostream& os) {
  using namespace polycm;
  const T x = T(a.x);
  const ShiftPair<T> pair{T(a.s), T(a.t)};
  const std::string& fn = a.fn;
  if (fn == "lngamma") {
    print(os, "lngamma", ln_gamma(x));
  } else if (fn == "digamma") {
    print(os, "digamma", digamma(x));
  } else if (fn == "polygamma") {
    print(os, "polygamma", polygamma(a.n, x));
  } else if (fn == "xstar") {
    print(os, "xstar", psi_root<T>());
  } else if (fn == "divided") {
    print(os, "divided", divided_psi(pair, x, a.n));
  } else if (fn == "z") {
    const auto z = z_eval(pair, x);
    print(os, "z", z.z);
    print(os, "z1", z.z1);
    print(os, "z2", z.z2);
  } else if (fn == "theta") {
    print(os, "theta", theta_derivative(pair, x, a.k));
  } else if (fn == "delta") {
    print(os, "delta", delta_derivative(pair, x, a.k));
  } else if (fn == "lambda") {
    print(os, "lambda", lambda_fn(pair, x));
  } else if (fn == "phi") {
    print(os, "phi", phi(pair, x));
  } else if (fn == "g" || fn == "f") {
    const AnchoredPair<T> anchored(pair, T(a.c));
    const auto v = g_f_eval(anchored, x);
    print(os, "g", v.g);
    print(os, "g1", v.g1);
    print(os, "f", v.f);
  } else if (fn == "h") {
    const AnchoredPair<T> anchored(pair, T(a.c));
    print(os, "h", h_value(anchored, x));
    print(os, "h1", h_derivative(anchored, x));
  } else if (fn == "q") {
    print(os, "q", q_ratio(x));
  } else if (fn == "theta1") {
    print(os, "theta1", theta1(x));
  } else if (fn == "theta2") {
    print(os, "theta2", theta2(x));
  } else if (fn == "ball-ratio") {
    print(os, "ball_ratio", ball_volume_ratio<T>(a.n));
  } else if (fn == "gauss") {
    const auto q = gaussian_integral<T>(a.n);
    print(os, "value", q.value);
    print(os, "error", q.error);
  } else {
    throw polycm::ConfigError("unknown function: " + fn);
  }
  return 0;
}

int dispatch_eval(const EvalArgs& a, const polycm::PrecisionMode& mode) {
  if (mode.kind == polycm::PrecisionMode::Kind::Double) return evaluate<double>(a, std::cout);
  if (mode.digits <= 50) return evaluate<polycm::Extended>(a, std::cout);
  return evaluate<polycm::Extended100>(a, std::cout);
}

std::pair<double, double> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw polycm::ConfigError("--pair expects s,t");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw polycm::ConfigError("--pair expects two numbers: " + text);
  }
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygamma functionals and complete-monotonicity verification"};
  app.require_subcommand(1);

  std::string precision_text;
  if (const char* env = std::getenv("POLYCM_PRECISION")) precision_text = env;
  app.add_option("--precision", precision_text, "double | extended | extended:<30..100> (env POLYCM_PRECISION)");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate one function at a point");
  std::string fn_list;
  for (const auto& [name, help] : eval_help) fn_list += "\n  " + name + ": " + help;
  eval->add_option("fn", eval_args.fn, "Function name:" + fn_list)->required();
  eval->add_option("--x", eval_args.x, "Argument");
  eval->add_option("--s", eval_args.s, "Shift s");
  eval->add_option("--t", eval_args.t, "Shift t");
  eval->add_option("--c", eval_args.c, "Anchor c for g, f, h");
  eval->add_option("--n", eval_args.n, "Order or dimension");
  eval->add_option("--k", eval_args.k, "Derivative order");

  polycm::SuiteConfig cfg;
  std::string suite_name;
  std::vector<std::string> pair_texts;
  std::string json_path, csv_path;
  bool quiet = false;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string suite_list;
  for (const auto& s : polycm::all_suites()) suite_list += " " + s;
  verify->add_option("suite", suite_name, "all or one of:" + suite_list)->required();
  verify->add_option("--n-max", cfg.n_max, "Largest n for wallis, erf and ball");
  verify->add_option("--k-max", cfg.k_max, "Highest derivative order in sign certificates")->capture_default_str();
  verify->add_option("--grid", cfg.grid, "Grid points per certificate")->capture_default_str();
  verify->add_option("--pair", pair_texts, "Shift pair s,t (repeatable); replaces the sampled pairs");
  verify->add_option("--json", json_path, "Write the JSON report here");
  verify->add_option("--csv", csv_path, "Write the CSV report here");
  verify->add_flag("--timings", cfg.timings, "Record wall time per entry (output no longer reproducible)");
  verify->add_flag("-q,--quiet", quiet, "No text summary on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!precision_text.empty()) cfg.precision = polycm::PrecisionMode::parse(precision_text);

    if (*eval) return dispatch_eval(eval_args, cfg.precision);

    if (suite_name != "all") cfg.suites = {suite_name};
    for (const auto& p : pair_texts) cfg.pairs.push_back(parse_pair(p));

    const polycm::VerificationReport report = polycm::run_suite(cfg);
    bool io_ok = true;
    if (!json_path.empty())
      io_ok = write_file(json_path, polycm::emit_report(report, polycm::ReportFormat::Json)) && io_ok;
    if (!csv_path.empty())
      io_ok = write_file(csv_path, polycm::emit_report(report, polycm::ReportFormat::Csv)) && io_ok;
    if (!quiet) polycm::emit_report(report, polycm::ReportFormat::Text, std::cout);
    if (!io_ok) return 2;
    return report.exit_code();
  } catch (const polycm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
