#ifndef POLYCM_CM_CHECKER_HPP
#define POLYCM_CM_CHECKER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "divided_diff.hpp"
#include "real.hpp"
#include "shift_pair.hpp"

namespace polycm {

enum class Verdict { Pass, Fail, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

enum class CMTarget { Theta, Delta };

inline const char* to_string(CMTarget t) { return t == CMTarget::Theta ? "theta" : "delta"; }

/// Result of an alternating-sign probe over a grid.
struct CMCertificate {
  std::string function_id;
  double lo = 0, hi = 0;
  int grid_points = 0;
  int k_max = 0;
  int expected_sign = 1;
  /// min over the grid of expected_sign (-1)^k f^(k)(x) / max(1, |f^(k)(x)|)
  std::vector<double> worst_margin;
  std::vector<bool> order_pass;
  /// every signed value strictly positive, with no tolerance
  bool strictly_positive = true;
  Verdict verdict = Verdict::Pass;
  /// conjecture probes never count as failures
  bool advisory = false;
  int violations = 0;
  int inconclusive = 0;
};

/// Sign tolerance relative to max(1, |f^(k)|): 1e-9 in double mode, 1e-20 otherwise.
template <class T>
T sign_epsilon() {
  if constexpr (is_extended_v<T>)
    return T("1e-20");
  else
    return T(1e-9);
}

/// n points from lo to hi, geometric in the distance from `origin`, so the
/// grid is densest next to lo. Requires origin < lo < hi.
template <class T>
std::vector<T> geometric_grid(const T& lo, const T& hi, int n, const T& origin) {
  using std::pow;
  if (!(origin < lo) || !(lo < hi) || n < 1)
    throw std::invalid_argument("geometric_grid: need origin < lo < hi and n >= 1");
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const T ratio = (hi - origin) / (lo - origin);
  for (int i = 0; i < n; ++i) {
    if (i == n - 1) {
      out.push_back(hi);
      break;
    }
    out.push_back(origin + (lo - origin) * pow(ratio, T(i) / T(n - 1)));
  }
  return out;
}

/// Checks (-1)^k f^(k) >= 0 (times the regime sign) for k <= k_max at every
/// grid point, f = Theta or Delta of the pair.
template <class T>
CMCertificate check_alternating_signs(CMTarget target, const ShiftPair<T>& pair, const T& lo,
                                      const T& hi, int k_max = 6, int grid_points = 200) {
  using std::abs;
  using std::max;
  if (!(lo > -pair.alpha())) throw DomainError("check_alternating_signs: interval leaves domain");
  if (k_max < 0) throw OrderError("check_alternating_signs: negative k_max");
  detail::require_order<T>(k_max + 1, "check_alternating_signs");

  CMCertificate cert;
  cert.function_id = std::string(to_string(target));
  cert.lo = to_double(lo);
  cert.hi = to_double(hi);
  cert.grid_points = grid_points;
  cert.k_max = k_max;
  cert.expected_sign = pair.expected_sign();
  cert.worst_margin.assign(static_cast<std::size_t>(k_max + 1), 1.0);
  cert.order_pass.assign(static_cast<std::size_t>(k_max + 1), true);

  const int sign = pair.expected_sign() == 0 ? 1 : pair.expected_sign();
  const T tol = sign_epsilon<T>();
  for (const T& x : geometric_grid(lo, hi, grid_points, T(-pair.alpha()))) {
    const std::vector<T> values = target == CMTarget::Theta ? theta_derivatives(pair, x, k_max)
                                                            : delta_derivatives(pair, x, k_max);
    for (int k = 0; k <= k_max; ++k) {
      const T& v = values[static_cast<std::size_t>(k)];
      const T signed_value = (k % 2 == 0 ? sign : -sign) * v;
      const T scale = max(T(1), T(abs(v)));
      const double margin = to_double(T(signed_value / scale));
      auto idx = static_cast<std::size_t>(k);
      cert.worst_margin[idx] = std::min(cert.worst_margin[idx], margin);
      if (!(signed_value > 0)) cert.strictly_positive = false;
      if (signed_value / scale < -tol) cert.order_pass[idx] = false;
    }
  }
  if (pair.regime() == Regime::Critical) {
    cert.verdict = Verdict::Indeterminate;
  } else {
    const bool ok = std::all_of(cert.order_pass.begin(), cert.order_pass.end(), [](bool b) { return b; });
    cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  }
  return cert;
}

/// Central difference estimate of f^(k)(x) for 0 <= k <= 4, error O(h^2).
template <class T, class F>
T finite_difference_oracle(F&& f, const T& x, int k, const T& h) {
  switch (k) {
    case 0: return f(x);
    case 1: return (f(T(x + h)) - f(T(x - h))) / (2 * h);
    case 2: return (f(T(x + h)) - 2 * f(x) + f(T(x - h))) / (h * h);
    case 3:
      return (f(T(x + 2 * h)) - 2 * f(T(x + h)) + 2 * f(T(x - h)) - f(T(x - 2 * h))) /
             (2 * h * h * h);
    case 4:
      return (f(T(x + 2 * h)) - 4 * f(T(x + h)) + 6 * f(x) - 4 * f(T(x - h)) + f(T(x - 2 * h))) /
             (h * h * h * h);
    default: throw std::invalid_argument("finite_difference_oracle: order must be 0..4");
  }
}

/// Deterministic uniform sampler; independent of the standard library's
/// distribution implementations so samples match across platforms.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

 private:
  std::mt19937_64 engine_;
};

struct StepIdentityReport {
  int samples = 0;
  /// max |Lambda(x) - Lambda(x+1) - (1-(s-t)^2)/((x+s)(x+s+1)(x+t)(x+t+1))|
  double lambda_residual = 0;
  /// max relative residual of Theta(x) - Theta(x+1) = Lambda(x)(t-s)^2/((x+s)(x+t))
  double theta_residual = 0;
  /// max_k<=4 |Theta^(k)(1e6)|
  double decay = 0;
  bool lambda_pass = true, theta_pass = true, decay_pass = true;
  Verdict verdict = Verdict::Pass;
  std::string note;
};

inline constexpr double lambda_step_tolerance = 1e-10;
inline constexpr double theta_step_tolerance = 1e-10;
inline constexpr double decay_point = 1e6;
inline constexpr double decay_tolerance = 1e-5;

/// Checks the two unit-step telescoping identities on random x in
/// (-alpha + 0.1, -alpha + 20) and the decay of Theta^(k) at x = 1e6.
template <class T>
StepIdentityReport check_step_identities(const ShiftPair<T>& pair, int sample_count,
                                         std::uint64_t seed = 20240611) {
  using std::abs;
  using std::max;
  if (pair.coincident()) throw DomainError("check_step_identities: needs s != t");
  StepIdentityReport rep;
  rep.samples = sample_count;
  const auto [s, t] = detail::ordered(pair);
  const T gap2 = (t - s) * (t - s);
  Sampler rng(seed);
  T worst_lambda = 0, worst_theta = 0;
  for (int i = 0; i < sample_count; ++i) {
    const T x = -pair.alpha() + T(rng.uniform(0.1, 20.0));
    const T step = lambda_fn(pair, x) - lambda_fn(pair, T(x + 1));
    const T expected = (1 - gap2) / ((x + s) * (x + s + 1) * (x + t) * (x + t + 1));
    worst_lambda = max(worst_lambda, T(abs(step - expected)));

    const T lhs = theta(pair, x) - theta(pair, T(x + 1));
    const T rhs = lambda_fn(pair, x) * gap2 / ((x + s) * (x + t));
    const T denom = max(T(abs(lhs)), T(abs(rhs)));
    if (denom > 0) worst_theta = max(worst_theta, T(abs(lhs - rhs) / denom));
  }
  T worst_decay = 0;
  for (const T& v : theta_derivatives(pair, T(decay_point), 4)) worst_decay = max(worst_decay, T(abs(v)));

  rep.lambda_residual = to_double(worst_lambda);
  rep.theta_residual = to_double(worst_theta);
  rep.decay = to_double(worst_decay);
  rep.lambda_pass = rep.lambda_residual < lambda_step_tolerance;
  rep.theta_pass = rep.theta_residual < theta_step_tolerance;
  rep.decay_pass = rep.decay < decay_tolerance;
  rep.verdict = rep.lambda_pass && rep.theta_pass && rep.decay_pass ? Verdict::Pass : Verdict::Fail;
  rep.note = "decay threshold |Theta^(k)(1e6)| < 1e-5 is an implementation choice; no rate is known";
  return rep;
}

/// Probes whether Phi (|t-s| > 1) or 1/Phi (|t-s| < 1) is logarithmically
/// completely monotonic: (-1)^k [ln F]^(k) >= 0 for k = 1..k_max, with
/// derivatives of ln Phi from central differences. Advisory only.
///
/// A point counts as inconclusive when |[ln Phi]^(k)| is below the
/// estimated rounding noise of the difference stencil.
template <class T>
CMCertificate probe_phi_lcm_conjecture(const ShiftPair<T>& pair, const T& lo, const T& hi,
                                       int k_max = 3, int grid_points = 100) {
  using std::abs;
  using std::log;
  using std::min;
  using std::pow;
  if (!(lo > -pair.alpha())) throw DomainError("probe_phi_lcm_conjecture: interval leaves domain");
  if (k_max < 1 || k_max > 4) throw OrderError("probe_phi_lcm_conjecture: k_max must be 1..4");
  CMCertificate cert;
  cert.function_id = pair.expected_sign() < 0 ? "ln-phi" : "ln-inverse-phi";
  cert.lo = to_double(lo);
  cert.hi = to_double(hi);
  cert.grid_points = grid_points;
  cert.k_max = k_max;
  cert.expected_sign = pair.expected_sign();
  cert.advisory = true;
  cert.worst_margin.assign(static_cast<std::size_t>(k_max + 1), 1.0);
  cert.order_pass.assign(static_cast<std::size_t>(k_max + 1), true);

  // F = Phi for super pairs, 1/Phi for sub pairs.
  const int flip = pair.expected_sign() < 0 ? 1 : -1;
  auto log_f = [&](const T& u) { return T(flip * log(phi(pair, u))); };
  for (const T& x : geometric_grid(lo, hi, grid_points, T(-pair.alpha()))) {
    const T dist = x + pair.alpha();
    for (int k = 1; k <= k_max; ++k) {
      const T h = min(T(dist / 5), pow(epsilon<T>(), T(1) / T(k + 2)) * (1 + dist));
      const T v = finite_difference_oracle(log_f, x, k, h);
      const T noise = 64 * epsilon<T>() * (1 + abs(log_f(x))) / pow(h, k);
      const T signed_value = (k % 2 == 0 ? 1 : -1) * v;
      auto idx = static_cast<std::size_t>(k);
      if (abs(v) <= noise) {
        ++cert.inconclusive;
        continue;
      }
      cert.worst_margin[idx] =
          std::min(cert.worst_margin[idx], to_double(T(signed_value / std::max(T(1), T(abs(v))))));
      if (signed_value < 0) {
        ++cert.violations;
        cert.order_pass[idx] = false;
      }
    }
  }
  if (pair.regime() == Regime::Critical)
    cert.verdict = Verdict::Indeterminate;
  else
    cert.verdict = cert.violations == 0 ? Verdict::Pass : Verdict::Fail;
  return cert;
}

}  // namespace polycm

#endif  // POLYCM_CM_CHECKER_HPP
