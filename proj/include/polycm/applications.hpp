#ifndef POLYCM_APPLICATIONS_HPP
#define POLYCM_APPLICATIONS_HPP

// Applied inequalities: Kershaw's bounds, sharp Wallis double-factorial
// bounds, the Gaussian integral sandwich, unit-ball volume ratios, the
// Gamma-versus-psi bounds and a few auxiliary inequalities.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bernoulli.hpp"
#include "cm_checker.hpp"
#include "divided_diff.hpp"
#include "quadrature.hpp"
#include "real.hpp"
#include "shift_pair.hpp"
#include "special_fn.hpp"

namespace polycm {

/// One two-sided bound check: lower REL value REL upper.
struct BoundCheckRecord {
  std::string claim_id;
  std::string anchor;
  std::string parameter_name;
  double parameter = 0;
  double lower = 0;
  double value = 0;
  double upper = 0;
  std::optional<ExactRational> exact_value;
  bool lower_strict = true;
  bool upper_strict = true;
  bool has_lower = true;
  bool has_upper = true;
  double margin_lower = 0;  ///< value - lower
  double margin_upper = 0;  ///< upper - value
  bool guard_band_used = false;
  Verdict verdict = Verdict::Pass;
  std::map<std::string, double> extra;
};

namespace detail {

enum class Side { Holds, WithinGuard, Violated };

// A strict side holds when margin > guard and is undecided within +-guard; a
// closed side holds when margin >= -guard (|margin| <= guard is an equality
// within rounding).
template <class T>
Side side_state(const T& margin, bool strict, const T& guard, bool& guard_used) {
  using std::abs;
  if (abs(margin) <= guard) guard_used = true;
  if (margin < -guard) return Side::Violated;
  if (strict && margin <= guard) return Side::WithinGuard;
  return Side::Holds;
}

template <class T>
void judge(BoundCheckRecord& rec, const T& lower, const T& value, const T& upper,
           const T& guard_scale = T(1)) {
  using std::abs;
  using std::max;
  const T guard = guard_band<T>() * max(T(1), T(abs(value))) * guard_scale;
  bool violated = false, undecided = false;
  auto account = [&](Side side) {
    violated = violated || side == Side::Violated;
    undecided = undecided || side == Side::WithinGuard;
  };
  if (rec.has_lower) {
    const T m = value - lower;
    rec.lower = to_double(lower);
    rec.margin_lower = to_double(m);
    account(side_state(m, rec.lower_strict, guard, rec.guard_band_used));
  }
  if (rec.has_upper) {
    const T m = upper - value;
    rec.upper = to_double(upper);
    rec.margin_upper = to_double(m);
    account(side_state(m, rec.upper_strict, guard, rec.guard_band_used));
  }
  rec.value = to_double(value);
  rec.verdict = violated ? Verdict::Fail : (undecided ? Verdict::Indeterminate : Verdict::Pass);
}

}  // namespace detail

/// n!! exactly, with 0!! = (-1)!! = 1.
inline BigInt double_factorial(int n) {
  if (n < -1) throw DomainError("double_factorial: n must be >= -1");
  BigInt out = 1;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

template <class T>
T theta1(const T& x) {
  return z_eval(ShiftPair<T>(T(0.5), T(1)), x).z;
}

template <class T>
T theta2(const T& x) {
  return z_eval(ShiftPair<T>(T(1), T(1.5)), x).z;
}

/// (theta1(x), theta2(x)) = (z_{1/2,1}(x), z_{1,3/2}(x)); needs x > -1/2.
template <class T>
std::pair<T, T> theta_sequences(const T& x) {
  return {theta1(x), theta2(x)};
}

/// For n = 1..n_max: (2n-1)!!/(2n)!! and (2n)!!/(2n+1)!! as exact rationals,
/// squared and compared in 50-digit precision against
///   1/(pi(n+4/pi-1)) <= r1^2 < 1/(pi(n+1/4))
///   pi/(4(n+9pi/16-1)) <= r2^2 < pi/(4(n+3/4)).
/// Two records per n, plus strict decrease of theta1(n), theta2(n) when n_max >= 2.
inline std::vector<BoundCheckRecord> wallis_bounds_check(int n_max) {
  using E = Extended;
  if (n_max < 1) throw DomainError("wallis_bounds_check: n_max must be >= 1");
  const E pi_e = pi<E>();
  std::vector<BoundCheckRecord> out;
  ExactRational r1 = 1, r2 = 1;
  E prev1 = 0, prev2 = 0;
  bool dec1 = true, dec2 = true;
  E worst_step1 = 1, worst_step2 = 1;
  for (int n = 1; n <= n_max; ++n) {
    r1 *= ExactRational(2 * n - 1, 2 * n);
    r2 *= ExactRational(2 * n, 2 * n + 1);
    const ExactRational sq1 = r1 * r1;
    const ExactRational sq2 = r2 * r2;
    const E v1 = detail::rational_to<E>(sq1);
    const E v2 = detail::rational_to<E>(sq2);

    BoundCheckRecord a;
    a.claim_id = "wallis.odd-over-even[n=" + std::to_string(n) + "]";
    a.anchor = "wallis-double-factorial-bounds";
    a.parameter_name = "n";
    a.parameter = n;
    a.lower_strict = false;
    a.upper_strict = true;
    if (n <= 20) a.exact_value = sq1;
    // guard scaled to the size of the bounds (~1/(pi n))
    detail::judge<E>(a, 1 / (pi_e * (n + 4 / pi_e - 1)), v1, 1 / (pi_e * (n + E(0.25))), v1);
    const E th1 = 1 / (pi_e * v1) - n;
    a.extra["theta1"] = to_double(th1);
    out.push_back(std::move(a));

    BoundCheckRecord b;
    b.claim_id = "wallis.even-over-odd[n=" + std::to_string(n) + "]";
    b.anchor = "wallis-double-factorial-bounds";
    b.parameter_name = "n";
    b.parameter = n;
    b.lower_strict = false;
    b.upper_strict = true;
    if (n <= 20) b.exact_value = sq2;
    detail::judge<E>(b, pi_e / (4 * (n + 9 * pi_e / 16 - 1)), v2, pi_e / (4 * (n + E(0.75))), v2);
    const E th2 = pi_e / (4 * v2) - n;
    b.extra["theta2"] = to_double(th2);
    out.push_back(std::move(b));

    if (n > 1) {
      dec1 = dec1 && th1 < prev1;
      dec2 = dec2 && th2 < prev2;
      worst_step1 = std::min(worst_step1, E(prev1 - th1));
      worst_step2 = std::min(worst_step2, E(prev2 - th2));
    }
    prev1 = th1;
    prev2 = th2;
  }
  if (n_max >= 2) {
    for (int which = 1; which <= 2; ++which) {
      BoundCheckRecord d;
      d.claim_id = which == 1 ? "wallis.theta1-decreasing" : "wallis.theta2-decreasing";
      d.anchor = "z-monotone-convex";
      d.parameter_name = "n_max";
      d.parameter = n_max;
      d.has_lower = false;
      d.has_upper = false;
      d.margin_lower = to_double(which == 1 ? worst_step1 : worst_step2);
      d.verdict = (which == 1 ? dec1 : dec2) ? Verdict::Pass : Verdict::Fail;
      out.push_back(std::move(d));
    }
  }
  return out;
}

/// I(n) = integral of e^{-x^2} over [-sqrt n, sqrt n], by adaptive quadrature
/// on [0, sqrt n] doubled.
template <class T>
QuadResult<T> gaussian_integral(int n) {
  using std::exp;
  using std::sqrt;
  QuadOptions<T> opts = default_quad_options<T>();
  if constexpr (is_extended_v<T>)
    opts.abs_tol = T("1e-30");
  else
    opts.abs_tol = T(2e-13);
  auto q = integrate([](const T& x) { return T(exp(-x * x)); }, T(0), T(sqrt(T(n))), opts);
  q.value *= 2;
  q.error *= 2;
  return q;
}

inline constexpr double erf_quadrature_tolerance = 1e-12;

/// sqrt(pi)/sqrt(1+(9pi/16-1)/n) <= I(n) < sqrt(pi)/sqrt(1-3/(4n)) for n = 1..n_max.
template <class T>
std::vector<BoundCheckRecord> erf_bounds_check(int n_max) {
  using std::sqrt;
  if (n_max < 1) throw DomainError("erf_bounds_check: n_max must be >= 1");
  const T root_pi = sqrt(pi<T>());
  std::vector<BoundCheckRecord> out;
  for (int n = 1; n <= n_max; ++n) {
    const auto q = gaussian_integral<T>(n);
    BoundCheckRecord r;
    r.claim_id = "erf.sandwich[n=" + std::to_string(n) + "]";
    r.anchor = "gaussian-integral-sandwich";
    r.parameter_name = "n";
    r.parameter = n;
    r.lower_strict = false;
    r.upper_strict = true;
    const T lower = root_pi / sqrt(1 + (9 * pi<T>() / 16 - 1) / n);
    const T upper = root_pi / sqrt(1 - T(3) / (4 * n));
    detail::judge<T>(r, lower, q.value, upper);
    r.extra["quadrature_error"] = to_double(q.error);
    if (q.error > T(erf_quadrature_tolerance)) r.verdict = Verdict::Fail;
    out.push_back(std::move(r));
  }
  return out;
}

/// Omega_{n-1}/Omega_n with Omega_n = pi^{n/2}/Gamma(1+n/2).
template <class T>
T ball_volume_ratio(int n) {
  using std::exp;
  using std::sqrt;
  return exp(ln_gamma_ratio(T(1 + T(n) / 2), T(T(1) / 2 + T(n) / 2))) / sqrt(pi<T>());
}

/// sqrt((n+1/2)/(2pi)) < Omega_{n-1}/Omega_n <= sqrt((n+pi/2-1)/(2pi)) for
/// n = 1..n_max. extra["identity_residual"] is the ratio minus
/// sqrt((n + 2 z_{1,1/2}(n/2))/(2pi)).
template <class T>
std::vector<BoundCheckRecord> ball_ratio_check(int n_max) {
  using std::abs;
  using std::sqrt;
  if (n_max < 1) throw DomainError("ball_ratio_check: n_max must be >= 1");
  const T two_pi = 2 * pi<T>();
  const ShiftPair<T> pair(T(1), T(0.5));
  std::vector<BoundCheckRecord> out;
  for (int n = 1; n <= n_max; ++n) {
    const T ratio = ball_volume_ratio<T>(n);
    BoundCheckRecord r;
    r.claim_id = "ball.ratio[n=" + std::to_string(n) + "]";
    r.anchor = "unit-ball-volume-ratio";
    r.parameter_name = "n";
    r.parameter = n;
    r.lower_strict = true;
    r.upper_strict = false;
    detail::judge<T>(r, sqrt((n + T(0.5)) / two_pi), ratio, sqrt((n + pi<T>() / 2 - 1) / two_pi));
    const T z = z_eval(pair, T(T(n) / 2)).z;
    r.extra["identity_residual"] = to_double(T(ratio - sqrt((n + 2 * z) / two_pi)));
    out.push_back(std::move(r));
  }
  return out;
}

/// (x+s/2)^{1-s} < Gamma(x+1)/Gamma(x+s) < (x-1/2+sqrt(s+1/4))^{1-s}, together
/// with the rearranged form s/2 < z_{s,1}(x) < sqrt(s+1/4) - 1/2. A record
/// passes only if both forms hold.
template <class T>
std::vector<BoundCheckRecord> kershaw_check(const std::vector<T>& s_grid, const std::vector<T>& x_grid) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  std::vector<BoundCheckRecord> out;
  for (const T& s : s_grid) {
    if (!(s > 0 && s < 1)) throw DomainError("kershaw_check: s must lie in (0, 1)");
    const ShiftPair<T> pair(s, T(1));
    for (const T& x : x_grid) {
      if (!(x >= 1)) throw DomainError("kershaw_check: x must be >= 1");
      BoundCheckRecord r;
      r.claim_id = "kershaw[s=" + std::to_string(to_double(s)) + ",x=" + std::to_string(to_double(x)) + "]";
      r.anchor = "kershaw-double-inequality";
      r.parameter_name = "x";
      r.parameter = to_double(x);
      r.extra["s"] = to_double(s);
      const T ratio = exp(ln_gamma_ratio(T(x + 1), T(x + s)));
      const T root = sqrt(s + T(0.25));
      detail::judge<T>(r, pow(T(x + s / 2), T(1 - s)), ratio, pow(T(x - T(0.5) + root), T(1 - s)));

      BoundCheckRecord re;
      re.has_lower = re.has_upper = true;
      const T z = z_eval(pair, x).z;
      detail::judge<T>(re, T(s / 2), z, T(root - T(0.5)));
      r.extra["rearranged_margin_lower"] = re.margin_lower;
      r.extra["rearranged_margin_upper"] = re.margin_upper;
      if (re.verdict == Verdict::Fail)
        r.verdict = Verdict::Fail;
      else if (re.verdict == Verdict::Indeterminate && r.verdict == Verdict::Pass)
        r.verdict = Verdict::Indeterminate;
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Range (a, b) for the Gamma-psi bounds; b = infinity maps to alpha = 1.
template <class T>
struct GammaPsiRange {
  T a;
  std::optional<T> b;  ///< nullopt is infinity
};

/// exp{alpha E(x)} <= Gamma(x)/Gamma(x*) <= exp{beta E(x)} on x_grid with
/// E(x) = e^{psi(x)}(psi(x)-1)+1, alpha = Q(b) (1 when b = infinity),
/// beta = Q(a). Compared in log form. A final record checks that Q is
/// strictly decreasing along the sorted grid.
template <class T>
std::vector<BoundCheckRecord> gamma_psi_bounds_check(const GammaPsiRange<T>& range,
                                                     const std::vector<T>& x_grid) {
  using std::exp;
  if (!(range.a > 0) || (range.b && !(*range.b > range.a)))
    throw DomainError("gamma_psi_bounds_check: need 0 < a < b");
  const T& xs = psi_root<T>();
  const T lower_const = range.b ? q_ratio(*range.b) : T(1);
  const T upper_const = q_ratio(range.a);
  const std::string range_tag =
      "a=" + std::to_string(to_double(range.a)) + ",b=" + (range.b ? std::to_string(to_double(*range.b)) : std::string("inf"));
  std::vector<BoundCheckRecord> out;
  std::vector<T> qs;
  for (const T& x : x_grid) {
    if (!(x > range.a) || (range.b && !(x < *range.b)))
      throw DomainError("gamma_psi_bounds_check: grid point outside (a, b)");
    BoundCheckRecord r;
    r.claim_id = "gamma-psi[" + range_tag + ",x=" + std::to_string(to_double(x)) + "]";
    r.anchor = "gamma-psi-symmetric-bounds";
    r.parameter_name = "x";
    r.parameter = to_double(x);
    r.lower_strict = false;
    r.upper_strict = false;
    const T e = gamma_psi_exponent(x);
    const T log_ratio = x == xs ? T(0) : ln_gamma_ratio(x, xs);
    detail::judge<T>(r, T(lower_const * e), log_ratio, T(upper_const * e));
    r.extra["alpha"] = to_double(lower_const);
    r.extra["beta"] = to_double(upper_const);
    r.extra["gamma_ratio"] = to_double(T(exp(log_ratio)));
    out.push_back(std::move(r));
    qs.push_back(q_ratio(x));
  }
  BoundCheckRecord mono;
  mono.claim_id = "gamma-psi.Q-decreasing[" + range_tag + "]";
  mono.anchor = "q-ratio-monotone";
  mono.parameter_name = "points";
  mono.parameter = static_cast<double>(qs.size());
  mono.has_lower = mono.has_upper = false;
  bool dec = true;
  T worst = 1;
  for (std::size_t i = 1; i < qs.size(); ++i) {
    const T step = qs[i - 1] - qs[i];
    if (x_grid[i] > x_grid[i - 1]) {
      dec = dec && step > 0;
      worst = std::min(worst, step);
    }
  }
  mono.margin_lower = to_double(worst);
  mono.verdict = dec ? Verdict::Pass : Verdict::Fail;
  out.push_back(std::move(mono));
  return out;
}

/// Checks that f_{s,t} (anchored at c) is decreasing for |t-s| < 1 and
/// increasing for |t-s| > 1 along an increasing grid.
template <class T>
BoundCheckRecord f_monotonicity_check(const AnchoredPair<T>& anchored, const std::vector<T>& grid) {
  BoundCheckRecord r;
  const auto& p = anchored.pair();
  r.claim_id = "f-monotone[s=" + std::to_string(to_double(p.s())) + ",t=" + std::to_string(to_double(p.t())) +
               ",c=" + std::to_string(to_double(anchored.c())) + "]";
  r.anchor = "f-monotone";
  r.parameter_name = "points";
  r.parameter = static_cast<double>(grid.size());
  r.has_lower = r.has_upper = false;
  const int sign = p.expected_sign();
  T worst = 1;
  bool ok = true;
  T prev = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const T f = g_f_eval(anchored, grid[i]).f;
    if (i > 0) {
      const T step = sign * (prev - f);  // decreasing expected for sign +1
      worst = std::min(worst, step);
      ok = ok && step > 0;
    }
    prev = f;
  }
  r.margin_lower = to_double(worst);
  r.verdict = sign == 0 ? Verdict::Indeterminate : (ok ? Verdict::Pass : Verdict::Fail);
  return r;
}

template <class T>
struct AuxSamples {
  std::vector<std::pair<T, T>> gamma_ratio;              ///< (s, r) with s > r > 0
  std::vector<std::tuple<T, T, T>> power_mean;           ///< (s, t, x)
  std::vector<T> trigamma_exp;                           ///< x > 0
};

/// Random samples for the auxiliary inequalities; s - r >= 0.01 and pairs
/// avoid the critical band by 0.02.
template <class T>
AuxSamples<T> default_aux_samples(int count, std::uint64_t seed = 7) {
  Sampler rng(seed);
  AuxSamples<T> out;
  for (int i = 0; i < count; ++i) {
    const double r = rng.log_uniform(0.01, 50.0);
    const double s = r + rng.uniform(0.01, 10.0);
    out.gamma_ratio.emplace_back(T(s), T(r));
  }
  for (int i = 0; i < count; ++i) {
    const double s = rng.uniform(-0.5, 3.0);
    double gap = (i % 2 == 0) ? rng.uniform(0.01, 0.98) : rng.uniform(1.02, 3.0);
    if (rng.uniform(0, 1) < 0.5) gap = -gap;
    const double t = s + gap;
    const double alpha = std::min(s, t);
    const double x = -alpha + rng.log_uniform(0.05, 50.0);
    out.power_mean.emplace_back(T(s), T(t), T(x));
  }
  for (int i = 0; i < count; ++i) out.trigamma_exp.push_back(T(rng.log_uniform(0.01, 100.0)));
  return out;
}

/// exp[(s-r)psi(s)] > Gamma(s)/Gamma(r) > exp[(s-r)psi(r)] (log form);
/// [Gamma(x+t)/Gamma(x+s)]^{1/(t-s)} < (t-s)/(psi(x+t)-psi(x+s)), reversed for
/// |t-s| > 1; and psi'(x) e^{psi(x)} < 1.
template <class T>
std::vector<BoundCheckRecord> auxiliary_inequality_checks(const AuxSamples<T>& samples) {
  using std::exp;
  std::vector<BoundCheckRecord> out;
  int i = 0;
  for (const auto& [s, r] : samples.gamma_ratio) {
    if (!(s > r && r > 0)) throw DomainError("auxiliary_inequality_checks: need s > r > 0");
    BoundCheckRecord rec;
    rec.claim_id = "aux.gamma-ratio[" + std::to_string(i++) + "]";
    rec.anchor = "gamma-ratio-psi-bounds";
    rec.parameter_name = "s";
    rec.parameter = to_double(s);
    rec.extra["r"] = to_double(r);
    detail::judge<T>(rec, T((s - r) * digamma(r)), ln_gamma_ratio(s, r), T((s - r) * digamma(s)));
    out.push_back(std::move(rec));
  }
  i = 0;
  for (const auto& [s, t, x] : samples.power_mean) {
    const ShiftPair<T> pair(s, t);
    BoundCheckRecord rec;
    rec.claim_id = "aux.gamma-power-vs-psi[" + std::to_string(i++) + "]";
    rec.anchor = "gamma-power-vs-psi-divided-difference";
    rec.parameter_name = "x";
    rec.parameter = to_double(x);
    rec.extra["s"] = to_double(s);
    rec.extra["t"] = to_double(t);
    const T w = z_eval(pair, x).z + x;
    const T bound = 1 / divided_psi(pair, x, 0);
    if (pair.expected_sign() >= 0) {
      rec.has_lower = false;
      detail::judge<T>(rec, T(0), w, bound);
    } else {
      rec.has_upper = false;
      detail::judge<T>(rec, bound, w, T(0));
    }
    if (pair.regime() == Regime::Critical) rec.verdict = Verdict::Indeterminate;
    out.push_back(std::move(rec));
  }
  i = 0;
  for (const T& x : samples.trigamma_exp) {
    BoundCheckRecord rec;
    rec.claim_id = "aux.trigamma-exp-psi[" + std::to_string(i++) + "]";
    rec.anchor = "trigamma-exp-psi-below-one";
    rec.parameter_name = "x";
    rec.parameter = to_double(x);
    rec.has_lower = false;
    detail::judge<T>(rec, T(0), T(polygamma(1, x) * exp(digamma(x))), T(1));
    out.push_back(std::move(rec));
  }
  return out;
}

enum class MonotoneTarget { Theta1, Theta2, Pair };

/// z' <= 0 and z'' >= 0 on the grid for |t-s| < 1 (reversed for |t-s| > 1),
/// and |z'(1e6)| < 1e-5. margin_lower is the worst signed z', margin_upper
/// the worst signed z''.
template <class T>
BoundCheckRecord theta_monotonicity_check(MonotoneTarget which, std::optional<ShiftPair<T>> pair_opt,
                                          const T& lo, const T& hi, int grid_points = 64) {
  using std::abs;
  const ShiftPair<T> pair = which == MonotoneTarget::Theta1   ? ShiftPair<T>(T(0.5), T(1))
                            : which == MonotoneTarget::Theta2 ? ShiftPair<T>(T(1), T(1.5))
                                                              : pair_opt.value();
  if (!(lo > -pair.alpha())) throw DomainError("theta_monotonicity_check: interval leaves domain");
  BoundCheckRecord r;
  const std::string name = which == MonotoneTarget::Theta1   ? "theta1"
                           : which == MonotoneTarget::Theta2 ? "theta2"
                                                             : "z[s=" + std::to_string(to_double(pair.s())) +
                                                                   ",t=" + std::to_string(to_double(pair.t())) + "]";
  r.claim_id = "monotone-convex." + name;
  r.anchor = "z-monotone-convex";
  r.parameter_name = "points";
  r.parameter = grid_points;
  r.has_lower = r.has_upper = false;
  const int sign = pair.expected_sign() == 0 ? 1 : pair.expected_sign();
  const T guard = guard_band<T>();
  T worst1 = 1, worst2 = 1;
  bool ok = true;
  for (const T& x : geometric_grid(lo, hi, grid_points, T(-pair.alpha()))) {
    const ZValue<T> z = z_eval(pair, x);
    const T m1 = -sign * z.z1;  // z' <= 0 for sub pairs
    const T m2 = sign * z.z2;   // z'' >= 0 for sub pairs
    worst1 = std::min(worst1, T(m1 / std::max(T(1), T(abs(z.z1)))));
    worst2 = std::min(worst2, T(m2 / std::max(T(1), T(abs(z.z2)))));
    ok = ok && m1 >= -guard * std::max(T(1), T(abs(z.z1))) && m2 >= -guard * std::max(T(1), T(abs(z.z2)));
  }
  const T tail = abs(z_eval(pair, T(decay_point)).z1);
  r.margin_lower = to_double(worst1);
  r.margin_upper = to_double(worst2);
  r.extra["z1_at_1e6"] = to_double(tail);
  ok = ok && tail < T(decay_tolerance);
  r.verdict = pair.regime() == Regime::Critical ? Verdict::Indeterminate : (ok ? Verdict::Pass : Verdict::Fail);
  return r;
}

}  // namespace polycm

#endif  // POLYCM_APPLICATIONS_HPP
