#ifndef POLYCM_REPORT_HPP
#define POLYCM_REPORT_HPP

// Verification suites and their machine-readable reports.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "applications.hpp"
#include "cm_checker.hpp"
#include "divided_diff.hpp"
#include "real.hpp"
#include "shift_pair.hpp"
#include "special_fn.hpp"

namespace polycm {

inline constexpr const char* tool_version = "0.3.0";

/// Suite names in report order.
inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {"cm",      "identities", "wallis", "erf",       "ball",
                                                 "kershaw", "gamma-psi",  "aux",    "conjecture"};
  return names;
}

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::vector<std::string> suites = all_suites();
  std::optional<int> n_max;  ///< default per suite: wallis 1000, erf 200, ball 200
  int k_max = 6;
  int grid = 200;
  PrecisionMode precision;
  /// Explicit (s, t) pairs for cm, identities and conjecture; sampled when empty.
  std::vector<std::pair<double, double>> pairs;
  bool timings = false;
};

struct SuiteEntry {
  std::string claim_id;
  std::string paper_anchor;
  std::map<std::string, double> parameters;
  std::string verdict;
  std::map<std::string, double> margins;
  double runtime_ms = 0;

  bool operator==(const SuiteEntry&) const = default;
};

struct ReportSummary {
  int total = 0;
  int pass = 0;
  int fail = 0;
  int indeterminate = 0;
  int advisory = 0;
  std::string overall = "pass";

  bool operator==(const ReportSummary&) const = default;
};

struct VerificationReport {
  std::string tool_version = polycm::tool_version;
  std::string precision_mode;
  std::vector<SuiteEntry> suite;
  ReportSummary summary;
  std::vector<std::string> notes;

  bool operator==(const VerificationReport&) const = default;

  /// Recount the summary from the entries.
  void tally() {
    summary = ReportSummary{};
    for (const auto& e : suite) {
      ++summary.total;
      if (e.verdict == "pass")
        ++summary.pass;
      else if (e.verdict == "fail")
        ++summary.fail;
      else if (e.verdict == "indeterminate")
        ++summary.indeterminate;
      else
        ++summary.advisory;
    }
    summary.overall = summary.fail == 0 ? "pass" : "fail";
  }

  int exit_code() const { return summary.fail == 0 ? 0 : 1; }
};

// JSON mapping
inline void to_json(nlohmann::ordered_json& j, const SuiteEntry& e) {
  j = nlohmann::ordered_json{{"claim_id", e.claim_id},     {"paper_anchor", e.paper_anchor},
                             {"parameters", e.parameters}, {"verdict", e.verdict},
                             {"margins", e.margins},       {"runtime_ms", e.runtime_ms}};
}

inline void from_json(const nlohmann::ordered_json& j, SuiteEntry& e) {
  j.at("claim_id").get_to(e.claim_id);
  j.at("paper_anchor").get_to(e.paper_anchor);
  j.at("parameters").get_to(e.parameters);
  j.at("verdict").get_to(e.verdict);
  j.at("margins").get_to(e.margins);
  j.at("runtime_ms").get_to(e.runtime_ms);
}

inline void to_json(nlohmann::ordered_json& j, const ReportSummary& s) {
  j = nlohmann::ordered_json{{"total", s.total},
                             {"pass", s.pass},
                             {"fail", s.fail},
                             {"indeterminate", s.indeterminate},
                             {"advisory", s.advisory},
                             {"overall", s.overall}};
}

inline void from_json(const nlohmann::ordered_json& j, ReportSummary& s) {
  j.at("total").get_to(s.total);
  j.at("pass").get_to(s.pass);
  j.at("fail").get_to(s.fail);
  j.at("indeterminate").get_to(s.indeterminate);
  j.at("advisory").get_to(s.advisory);
  j.at("overall").get_to(s.overall);
}

inline void to_json(nlohmann::ordered_json& j, const VerificationReport& r) {
  j = nlohmann::ordered_json{{"tool_version", r.tool_version}, {"precision_mode", r.precision_mode},
                             {"suite", r.suite},               {"summary", r.summary},
                             {"notes", r.notes}};
}

inline void from_json(const nlohmann::ordered_json& j, VerificationReport& r) {
  j.at("tool_version").get_to(r.tool_version);
  j.at("precision_mode").get_to(r.precision_mode);
  j.at("suite").get_to(r.suite);
  j.at("summary").get_to(r.summary);
  if (j.contains("notes")) j.at("notes").get_to(r.notes);
}

enum class ReportFormat { Json, Csv, Text };

namespace detail {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string flatten(const std::map<std::string, double>& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ';';
    out += k + "=" + format_number(v);
  }
  return out;
}

}  // namespace detail

/// Serializes the report. JSON keeps the field order of VerificationReport;
/// CSV has one header row and one row per entry; text is a summary plus any
/// entry that did not pass.
inline void emit_report(const VerificationReport& report, ReportFormat format, std::ostream& os) {
  switch (format) {
    case ReportFormat::Json: {
      nlohmann::ordered_json j = report;
      os << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Csv: {
      os << "claim_id,paper_anchor,verdict,runtime_ms,parameters,margins\n";
      for (const auto& e : report.suite) {
        os << detail::csv_quote(e.claim_id) << ',' << detail::csv_quote(e.paper_anchor) << ','
           << e.verdict << ',' << detail::format_number(e.runtime_ms) << ','
           << detail::csv_quote(detail::flatten(e.parameters)) << ','
           << detail::csv_quote(detail::flatten(e.margins)) << '\n';
      }
      break;
    }
    case ReportFormat::Text: {
      os << "polycm " << report.tool_version << " (" << report.precision_mode << ")\n";
      std::map<std::string, std::map<std::string, int>> per_suite;
      std::vector<std::string> order;
      for (const auto& e : report.suite) {
        const std::string suite = e.claim_id.substr(0, e.claim_id.find_first_of(".["));
        if (!per_suite.count(suite)) order.push_back(suite);
        ++per_suite[suite][e.verdict];
      }
      for (const auto& s : order) {
        os << "  " << s << ":";
        for (const auto& [verdict, count] : per_suite[s]) os << ' ' << verdict << '=' << count;
        os << '\n';
      }
      for (const auto& e : report.suite) {
        if (e.verdict == "pass") continue;
        os << "  [" << e.verdict << "] " << e.claim_id << "  " << detail::flatten(e.margins) << '\n';
      }
      for (const auto& n : report.notes) os << "  note: " << n << '\n';
      const auto& s = report.summary;
      os << "total=" << s.total << " pass=" << s.pass << " fail=" << s.fail
         << " indeterminate=" << s.indeterminate << " advisory=" << s.advisory << " overall=" << s.overall
         << '\n';
      break;
    }
  }
}

inline std::string emit_report(const VerificationReport& report, ReportFormat format) {
  std::ostringstream os;
  emit_report(report, format, os);
  return os.str();
}

inline VerificationReport parse_report_json(const std::string& text) {
  return nlohmann::ordered_json::parse(text).get<VerificationReport>();
}

namespace detail {

inline std::string verdict_string(Verdict v, bool advisory = false) {
  if (advisory) return v == Verdict::Fail ? "advisory-violation" : "advisory-no-violation";
  return to_string(v);
}

inline std::string pair_tag(double s, double t) {
  return "s=" + format_number(s) + ",t=" + format_number(t);
}

/// 20 pairs with 0.02 <= |t-s| <= 0.98 and 20 with 1.02 <= |t-s| <= 3.
inline std::vector<std::pair<double, double>> sampled_pairs(int per_regime, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<std::pair<double, double>> out;
  for (int regime = 0; regime < 2; ++regime) {
    for (int i = 0; i < per_regime; ++i) {
      const double s = rng.uniform(-0.5, 2.0);
      double gap = regime == 0 ? rng.uniform(0.02, 0.98) : rng.uniform(1.02, 3.0);
      if (rng.uniform(0, 1) < 0.5) gap = -gap;
      out.emplace_back(s, s + gap);
    }
  }
  return out;
}

inline SuiteEntry from_certificate(const std::string& id, const std::string& anchor, const CMCertificate& c,
                                   double s, double t) {
  SuiteEntry e;
  e.claim_id = id;
  e.paper_anchor = anchor;
  e.parameters = {{"s", s},           {"t", t},         {"lo", c.lo},
                  {"hi", c.hi},       {"k_max", c.k_max}, {"grid_points", c.grid_points},
                  {"expected_sign", c.expected_sign}};
  for (std::size_t k = 0; k < c.worst_margin.size(); ++k) {
    if (c.advisory && k == 0) continue;
    e.margins["k" + std::to_string(k)] = c.worst_margin[k];
  }
  if (c.advisory) {
    e.margins["violations"] = c.violations;
    e.margins["inconclusive"] = c.inconclusive;
  }
  e.verdict = verdict_string(c.verdict, c.advisory);
  return e;
}

inline SuiteEntry from_record(const BoundCheckRecord& r) {
  SuiteEntry e;
  e.claim_id = r.claim_id;
  e.paper_anchor = r.anchor;
  e.parameters[r.parameter_name] = r.parameter;
  for (const auto& [k, v] : r.extra) {
    if (k == "s" || k == "t" || k == "r") e.parameters[k] = v;
  }
  if (r.has_lower) {
    e.parameters["lower"] = r.lower;
    e.parameters["lower_strict"] = r.lower_strict ? 1 : 0;
  }
  if (r.has_upper) {
    e.parameters["upper"] = r.upper;
    e.parameters["upper_strict"] = r.upper_strict ? 1 : 0;
  }
  if (r.has_lower || r.has_upper) e.parameters["value"] = r.value;
  e.margins["lower"] = r.margin_lower;
  e.margins["upper"] = r.margin_upper;
  if (r.guard_band_used) e.margins["guard_band_used"] = 1;
  for (const auto& [k, v] : r.extra) {
    if (k != "s" && k != "t" && k != "r") e.margins[k] = v;
  }
  e.verdict = verdict_string(r.verdict);
  return e;
}

template <class T>
class SuiteRunner {
 public:
  explicit SuiteRunner(const SuiteConfig& cfg) : cfg_(cfg) {}

  VerificationReport run() {
    report_.precision_mode = cfg_.precision.to_string();
    for (const auto& name : all_suites()) {
      if (std::find(cfg_.suites.begin(), cfg_.suites.end(), name) == cfg_.suites.end()) continue;
      if (name == "cm") timed([&] { cm(); });
      if (name == "identities") timed([&] { identities(); });
      if (name == "wallis") timed([&] { wallis(); });
      if (name == "erf") timed([&] { erf(); });
      if (name == "ball") timed([&] { ball(); });
      if (name == "kershaw") timed([&] { kershaw(); });
      if (name == "gamma-psi") timed([&] { gamma_psi(); });
      if (name == "aux") timed([&] { aux(); });
      if (name == "conjecture") timed([&] { conjecture(); });
    }
    report_.tally();
    return report_;
  }

 private:
  // Runs a suite; with timings enabled its wall time is spread evenly over
  // the entries it produced.
  template <class F>
  void timed(F&& f) {
    const std::size_t before = report_.suite.size();
    const auto start = std::chrono::steady_clock::now();
    f();
    if (!cfg_.timings) return;
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::size_t produced = report_.suite.size() - before;
    for (std::size_t i = before; i < report_.suite.size(); ++i)
      report_.suite[i].runtime_ms = ms / static_cast<double>(produced);
  }

  std::vector<std::pair<double, double>> pairs_or(int per_regime, std::uint64_t seed) const {
    return cfg_.pairs.empty() ? sampled_pairs(per_regime, seed) : cfg_.pairs;
  }

  void cm() {
    for (const auto& [s, t] : pairs_or(20, 1001)) {
      const ShiftPair<T> pair{T(s), T(t)};
      const T lo = -pair.alpha() + T(0.1);
      const T hi = T(50);
      const std::string tag = pair_tag(s, t);
      report_.suite.push_back(from_certificate(
          "cm.theta[" + tag + "]", "theta-delta-complete-monotonicity",
          check_alternating_signs(CMTarget::Theta, pair, lo, hi, cfg_.k_max, cfg_.grid), s, t));
      report_.suite.push_back(from_certificate(
          "cm.delta[" + tag + "]", "theta-delta-complete-monotonicity",
          check_alternating_signs(CMTarget::Delta, pair, lo, hi, cfg_.k_max, cfg_.grid), s, t));
      report_.suite.push_back(
          prefixed("cm.", theta_monotonicity_check<T>(MonotoneTarget::Pair, pair, lo, hi, std::min(cfg_.grid, 64))));
    }
    const ShiftPair<T> zero{T(0), T(0)};
    report_.suite.push_back(from_certificate(
        "cm.delta[s=0,t=0]", "trigamma-square-plus-tetragamma-positive",
        check_alternating_signs(CMTarget::Delta, zero, T(0.1), T(30), std::min(cfg_.k_max, 14), cfg_.grid), 0, 0));
    report_.suite.push_back(
        prefixed("cm.", theta_monotonicity_check<T>(MonotoneTarget::Theta1, std::nullopt, T(-0.4), T(50))));
    report_.suite.push_back(
        prefixed("cm.", theta_monotonicity_check<T>(MonotoneTarget::Theta2, std::nullopt, T(-0.9), T(50))));
  }

  void identities() {
    using std::abs;
    using std::max;
    for (const auto& [s, t] : pairs_or(5, 2002)) {
      const ShiftPair<T> pair{T(s), T(t)};
      SuiteEntry e;
      e.claim_id = "identities.step[" + pair_tag(s, t) + "]";
      e.paper_anchor = "lambda-theta-step-identities";
      e.parameters = {{"s", s}, {"t", t}, {"samples", 100}};
      if (pair.coincident()) {
        e.verdict = "indeterminate";
        report_.suite.push_back(std::move(e));
        continue;
      }
      const StepIdentityReport rep = check_step_identities(pair, 100);
      e.margins = {{"lambda_residual", rep.lambda_residual},
                   {"theta_residual", rep.theta_residual},
                   {"decay", rep.decay}};
      // Theta = (t-s)^2 Delta and z'' = (z + x) Delta on the same kind of samples.
      Sampler rng(99);
      T worst_td = 0, worst_z2 = 0;
      const T gap2 = pair.gap() * pair.gap();
      for (int i = 0; i < 100; ++i) {
        const T x = -pair.alpha() + T(rng.uniform(0.1, 20.0));
        const T th = theta(pair, x), de = delta(pair, x);
        worst_td = max(worst_td, T(abs(th - gap2 * de) / max(T(abs(th)), T(1e-300))));
        const ZValue<T> z = z_eval(pair, x);
        const T rhs = (z.z + x) * de;
        worst_z2 = max(worst_z2, T(abs(z.z2 - rhs) / max(T(abs(rhs)), T(1e-300))));
      }
      e.margins["theta_equals_gap2_delta"] = to_double(worst_td);
      e.margins["z2_factorization"] = to_double(worst_z2);
      const bool ok = rep.verdict == Verdict::Pass && worst_td <= T(1e-10) && worst_z2 <= T(1e-9);
      e.verdict = pair.regime() == Regime::Critical ? "indeterminate" : (ok ? "pass" : "fail");
      report_.suite.push_back(std::move(e));
    }
    report_.notes.push_back(
        "identities.step decay margin uses |Theta^(k)(1e6)| < 1e-5, an implementation threshold");

    for (int n = 0; n <= 4; ++n) {
      T worst = 0;
      const auto grid = geometric_grid(T(0.5), T(20), 12, T(0));
      for (const T& x : grid) worst = max(worst, T(abs(polygamma(n, x) - quadrature_oracle(n, x).value)));
      SuiteEntry e;
      e.claim_id = "identities.oracle-polygamma[n=" + std::to_string(n) + "]";
      e.paper_anchor = "polygamma-integral-representation";
      e.parameters = {{"n", n}, {"lo", 0.5}, {"hi", 20}, {"points", 12}};
      e.margins = {{"max_abs_diff", to_double(worst)}};
      e.verdict = worst <= T(1e-9) ? "pass" : "fail";
      report_.suite.push_back(std::move(e));
    }

    const T h = T(1e-3);
    for (int k = 1; k <= 3; ++k) {
      T worst = 0;
      for (const auto& [s, t] : std::vector<std::pair<double, double>>{{0.1, 0.7}, {0, 2}, {0.5, 1}}) {
        const ShiftPair<T> pair{T(s), T(t)};
        for (const T& x : {T(1.5), T(3), T(7.25)}) {
          const T fd = finite_difference_oracle([&](const T& u) { return theta(pair, u); }, x, k, h);
          worst = max(worst, T(abs(fd - theta_derivative(pair, x, k))));
        }
      }
      SuiteEntry e;
      e.claim_id = "identities.oracle-finite-difference[k=" + std::to_string(k) + "]";
      e.paper_anchor = "theta-derivative-closed-form";
      e.parameters = {{"k", k}, {"h", to_double(h)}};
      e.margins = {{"max_abs_diff", to_double(worst)}};
      e.verdict = worst <= T(1e-5) ? "pass" : "fail";
      report_.suite.push_back(std::move(e));
    }
  }

  static SuiteEntry prefixed(const std::string& suite, const BoundCheckRecord& r) {
    SuiteEntry e = from_record(r);
    e.claim_id = suite + e.claim_id;
    return e;
  }

  int n_max_or(int fallback) const { return cfg_.n_max.value_or(fallback); }

  void wallis() {
    for (const auto& r : wallis_bounds_check(n_max_or(1000))) report_.suite.push_back(from_record(r));
  }

  void erf() {
    for (const auto& r : erf_bounds_check<T>(n_max_or(200))) report_.suite.push_back(from_record(r));
  }

  void ball() {
    for (const auto& r : ball_ratio_check<T>(n_max_or(200))) report_.suite.push_back(from_record(r));
  }

  void kershaw() {
    std::vector<T> s_grid, x_grid;
    for (int i = 1; i <= 19; ++i) s_grid.push_back(T(i) / 20);
    for (int x = 1; x <= 50; ++x) x_grid.push_back(T(x));
    for (const auto& r : kershaw_check(s_grid, x_grid)) report_.suite.push_back(from_record(r));
  }

  void gamma_psi() {
    const T xs = psi_root<T>();
    auto grid_for = [&](const T& a, const T& span) {
      auto g = geometric_grid(T(a + T(0.01)), T(a + span), 64, a);
      if (xs > a && xs < a + span) g.push_back(xs);
      std::sort(g.begin(), g.end());
      return g;
    };
    for (const auto& r : gamma_psi_bounds_check(GammaPsiRange<T>{T(1), T(3)}, grid_for(T(1), T(1.99))))
      report_.suite.push_back(from_record(r));
    for (const auto& r : gamma_psi_bounds_check(GammaPsiRange<T>{T(1), std::nullopt}, grid_for(T(1), T(1000))))
      report_.suite.push_back(from_record(r));

    const std::vector<std::tuple<double, double, double>> anchors = {
        {0, 0.5, 1}, {0.2, 0.9, 2}, {0, 2, 1}, {-0.3, 1.5, 0.5}};
    for (const auto& [s, t, c] : anchors) {
      const ShiftPair<T> pair{T(s), T(t)};
      const AnchoredPair<T> anchored(pair, T(c));
      auto g = geometric_grid(T(-pair.alpha() + T(0.1)), T(20), 40, T(-pair.alpha()));
      report_.suite.push_back(prefixed("gamma-psi.", f_monotonicity_check(anchored, g)));
    }
    const AnchoredPair<T> q_anchor(ShiftPair<T>(T(0), T(0)), xs);
    report_.suite.push_back(
        prefixed("gamma-psi.", f_monotonicity_check(q_anchor, geometric_grid(T(0.1), T(20), 40, T(0)))));
  }

  void aux() {
    for (const auto& r : auxiliary_inequality_checks(default_aux_samples<T>(500)))
      report_.suite.push_back(from_record(r));
  }

  void conjecture() {
    const std::vector<std::pair<double, double>> defaults = {{0, 0.5}, {0.2, 0.7}, {0, 2}, {0, 1.5}};
    const auto& pairs = cfg_.pairs.empty() ? defaults : cfg_.pairs;
    const int k = std::clamp(cfg_.k_max, 1, 3);
    for (const auto& [s, t] : pairs) {
      const ShiftPair<T> pair{T(s), T(t)};
      const T lo = -pair.alpha() + T(0.1);
      report_.suite.push_back(from_certificate("conjecture.phi-lcm[" + pair_tag(s, t) + "]",
                                               "phi-log-complete-monotonicity-conjecture",
                                               probe_phi_lcm_conjecture(pair, lo, T(30), k, 60), s, t));
    }
    report_.notes.push_back("conjecture entries are advisory probes and never fail the run");
  }

  SuiteConfig cfg_;
  VerificationReport report_;
};

}  // namespace detail

inline void validate(const SuiteConfig& cfg) {
  if (cfg.suites.empty()) throw ConfigError("no suites selected");
  for (const auto& s : cfg.suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      throw ConfigError("unknown suite: " + s);
  if (cfg.k_max < 0 || cfg.k_max + 1 > k_max_supported)
    throw ConfigError("k_max must be in [0, " + std::to_string(k_max_supported - 1) + "]");
  if (cfg.grid < 2 || cfg.grid > 100000) throw ConfigError("grid must be in [2, 100000]");
  if (cfg.n_max && (*cfg.n_max < 1 || *cfg.n_max > 100000)) throw ConfigError("n_max must be in [1, 100000]");
  for (const auto& [s, t] : cfg.pairs)
    if (!std::isfinite(s) || !std::isfinite(t)) throw ConfigError("pairs must be finite");
}

/// Runs the selected suites at the configured precision. Throws ConfigError
/// for out-of-range settings.
inline VerificationReport run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  if (cfg.precision.kind == PrecisionMode::Kind::Double) return detail::SuiteRunner<double>(cfg).run();
  if (cfg.precision.digits <= 50) return detail::SuiteRunner<Extended>(cfg).run();
  return detail::SuiteRunner<Extended100>(cfg).run();
}

}  // namespace polycm

#endif  // POLYCM_REPORT_HPP
