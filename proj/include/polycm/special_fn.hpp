#ifndef POLYCM_SPECIAL_FN_HPP
#define POLYCM_SPECIAL_FN_HPP

// lnGamma, psi and polygamma for positive real arguments, an independent
// integral-representation oracle, and the positive zero of psi.
//
// Evaluation strategy: shift the argument up with the unit-step recurrence
// until it clears an asymptotic threshold, then sum the Bernoulli asymptotic
// series until terms fall below working epsilon.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bernoulli.hpp"
#include "quadrature.hpp"
#include "real.hpp"

namespace polycm {

/// Highest polygamma order accepted by polygamma().
inline constexpr int k_max_supported = 16;

namespace detail {

template <class T>
void require_positive(const T& x, const char* fn) {
  if (!(x > 0)) throw DomainError(std::string(fn) + ": argument must be positive");
}

// Smallest x at which the asymptotic series truncated at B_60 reaches the
// working precision, and at least 10 + n.
template <class W>
W asymptotic_threshold(int n) {
  // log10(|B_60| / 60) ~ 32.53
  const double d = digits10_v<W> + 2;
  const double x = std::pow(10.0, (32.53 + d) / 60.0);
  return W(std::max(10.0 + n, x + n));
}

template <class W>
W ln_gamma_asymptotic(const W& x) {
  using std::abs;
  using std::log;
  const W half_log_2pi = log(2 * pi<W>()) / 2;
  W sum = (x - W(0.5)) * log(x) - x + half_log_2pi;
  const W inv = 1 / x;
  const W inv2 = inv * inv;
  W power = inv;
  for (int k = 1; k <= bernoulli_max_half_index; ++k) {
    const W term = bernoulli_b2k<W>(k) / W((2 * k) * (2 * k - 1)) * power;
    sum += term;
    if (abs(term) <= epsilon<W>() * abs(sum)) break;
    power *= inv2;
  }
  return sum;
}

template <class W>
W digamma_asymptotic(const W& x) {
  using std::abs;
  using std::log;
  W sum = log(x) - 1 / (2 * x);
  const W inv2 = 1 / (x * x);
  W power = inv2;
  for (int k = 1; k <= bernoulli_max_half_index; ++k) {
    const W term = bernoulli_b2k<W>(k) / W(2 * k) * power;
    sum -= term;
    if (abs(term) <= epsilon<W>() * abs(sum)) break;
    power *= inv2;
  }
  return sum;
}

// Magnitude (-1)^{n+1} psi^(n)(x) for n >= 1, large x.
template <class W>
W polygamma_asymptotic_magnitude(int n, const W& x) {
  using std::abs;
  using std::pow;
  W fact_nm1 = 1;
  for (int j = 2; j < n; ++j) fact_nm1 *= j;
  const W inv = 1 / x;
  const W inv2 = inv * inv;
  const W xn = pow(inv, n);
  W sum = fact_nm1 * xn + fact_nm1 * n * xn * inv / 2;
  // coeff_k = (2k+n-1)! / (2k)!
  W coeff = fact_nm1;
  for (int j = 0; j < 2; ++j) coeff *= W(n + j) / W(j + 1);
  W power = xn * inv2;
  for (int k = 1; k <= bernoulli_max_half_index; ++k) {
    const W term = bernoulli_b2k<W>(k) * coeff * power;
    sum += term;
    if (abs(term) <= epsilon<W>() * abs(sum)) break;
    coeff *= W(2 * k + n) * W(2 * k + n + 1) / (W(2 * k + 1) * W(2 * k + 2));
    power *= inv2;
  }
  return sum;
}

template <class W>
int shift_count(const W& x, const W& threshold) {
  if (x >= threshold) return 0;
  using std::ceil;
  return static_cast<int>(to_double(ceil(threshold - x)));
}

}  // namespace detail

/// ln Gamma(x), x > 0.
template <class T>
T ln_gamma(const T& x) {
  using std::log;
  using W = work_t<T>;
  detail::require_positive(x, "ln_gamma");
  W y = W(x);
  const int shift = detail::shift_count(y, detail::asymptotic_threshold<W>(0));
  W product = 1;
  for (int j = 0; j < shift; ++j) product *= (y + j);
  const W result = detail::ln_gamma_asymptotic(y + shift) - log(product);
  return T(result);
}

/// ln Gamma(a) - ln Gamma(b) without forming either term; stable when a - b
/// is small against a and b.
template <class T>
T ln_gamma_ratio(const T& a, const T& b) {
  using std::expm1;
  using std::log;
  using std::log1p;
  using W = work_t<T>;
  detail::require_positive(a, "ln_gamma_ratio");
  detail::require_positive(b, "ln_gamma_ratio");
  if (a == b) return T(0);
  const W wa = W(a), wb = W(b);
  const W diff = wa - wb;
  const int shift = detail::shift_count(std::min(wa, wb), detail::asymptotic_threshold<W>(0));
  // prod (1 + diff/(b+j)) - 1, accumulated without forming the product
  W q = 0;
  for (int j = 0; j < shift; ++j) {
    const W e = diff / (wb + j);
    q += e + q * e;
  }
  W acc = -log1p(q);
  const W A = wa + shift, B = wb + shift;
  // (A - 1/2) ln A - A - [(B - 1/2) ln B - B]
  const W ratio_log = log1p(diff / B);  // ln(A/B)
  acc += diff * log(B) + (A - W(0.5)) * ratio_log - diff;
  // A^{-m} - B^{-m} = B^{-m} e_m with e_m = (A/B)^{-m} - 1, stepped by m -> m + 2
  const W e1 = expm1(-ratio_log);
  const W e2 = e1 * (2 + e1);
  W em = e1;
  W b_inv = 1 / B;
  const W b_inv2 = b_inv * b_inv;
  for (int k = 1; k <= bernoulli_max_half_index; ++k) {
    const W term = bernoulli_b2k<W>(k) / W((2 * k) * (2 * k - 1)) * b_inv * em;
    acc += term;
    using std::abs;
    if (abs(term) <= epsilon<W>() * abs(acc) || term == 0) break;
    b_inv *= b_inv2;
    em += e2 + em * e2;
  }
  return T(acc);
}

/// psi(x) = Gamma'(x)/Gamma(x), x > 0.
template <class T>
T digamma(const T& x) {
  using W = work_t<T>;
  detail::require_positive(x, "digamma");
  const W y = W(x);
  const int shift = detail::shift_count(y, detail::asymptotic_threshold<W>(0));
  W correction = 0;
  for (int j = shift - 1; j >= 0; --j) correction += 1 / (y + j);
  return T(detail::digamma_asymptotic(y + shift) - correction);
}

/// psi^(n)(x) for 0 <= n <= k_max_supported, x > 0.
template <class T>
T polygamma(int n, const T& x) {
  using std::pow;
  using W = work_t<T>;
  if (n < 0 || n > k_max_supported)
    throw OrderError("polygamma: order " + std::to_string(n) + " outside [0, " +
                     std::to_string(k_max_supported) + "]");
  if (n == 0) return digamma(x);
  detail::require_positive(x, "polygamma");
  const W y = W(x);
  const int shift = detail::shift_count(y, detail::asymptotic_threshold<W>(n));
  // (-1)^{n+1} psi^(n)(x) = (-1)^{n+1} psi^(n)(x+N) + n! sum 1/(x+j)^{n+1}
  W fact = 1;
  for (int j = 2; j <= n; ++j) fact *= j;
  W tail = 0;
  for (int j = shift - 1; j >= 0; --j) tail += 1 / pow(y + j, n + 1);
  const W magnitude = detail::polygamma_asymptotic_magnitude(n, y + shift) + fact * tail;
  return T(n % 2 == 1 ? magnitude : W(-magnitude));
}

/// psi^(0..n_max)(x) in one vector.
template <class T>
std::vector<T> polygamma_sequence(int n_max, const T& x) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) out.push_back(polygamma(n, x));
  return out;
}

template <class T>
struct OracleResult {
  T value{};
  T error_estimate{};
};

/// Independent evaluation of psi (n = 0) or psi^(n) from the Laplace-type
/// integral representations. Used only to cross-check polygamma().
///
/// The integral is truncated at U where an analytic bound on the remaining
/// tail is below a tenth of the tolerance; the bound is included in the
/// returned error estimate.
template <class T>
OracleResult<T> quadrature_oracle(int n, const T& x,
                                  const QuadOptions<T>& opts = default_quad_options<T>()) {
  using std::exp;
  using std::expm1;
  using std::log;
  using std::pow;
  detail::require_positive(x, "quadrature_oracle");
  if (n < 0 || n > k_max_supported) throw OrderError("quadrature_oracle: unsupported order");
  const T small_u = T(1e-4);

  // 1/u - 1/(1 - e^{-u}) = -1/2 - sum_k B_{2k} u^{2k-1} / (2k)!
  auto kernel0 = [&](const T& u) -> T {
    if (u < small_u) {
      T sum = T(-0.5);
      T power = u;
      T fact = 2;
      for (int k = 1; k <= bernoulli_max_half_index; ++k) {
        const T term = bernoulli_b2k<T>(k) * power / fact;
        sum -= term;
        using std::abs;
        if (abs(term) <= epsilon<T>()) break;
        power *= u * u;
        fact *= T(2 * k + 1) * T(2 * k + 2);
      }
      return sum;
    }
    return 1 / u + 1 / expm1(-u);
  };
  auto integrand = [&](const T& u) -> T {
    const T decay = exp(-x * u);
    if (n == 0) return kernel0(u) * decay;
    // u^n / (1 - e^{-u}) = u^{n-1} * u / (1 - e^{-u})
    return pow(u, n - 1) * (u / -expm1(-u)) * decay;
  };

  // Tail bounds: |kernel0| <= 1, and u^n e^{-xu} <= U^n e^{-xU} e^{-k(u-U)} with k = x - n/U.
  const T tail_tol = opts.abs_tol / 10;
  T upper = std::max(T(1), T(2 * (n + 1)) / x);
  T tail = 0;
  for (int iter = 0; iter < 200; ++iter) {
    if (n == 0) {
      tail = exp(-x * upper) / x;
    } else {
      const T kappa = x - T(n) / upper;
      if (kappa > 0)
        tail = pow(upper, n) * exp(-x * upper) / (kappa * -expm1(-upper));
      else
        tail = T(1);
    }
    if (tail <= tail_tol) break;
    upper *= T(1.25);
  }

  QuadResult<T> q = integrate(integrand, T(0), upper, opts);
  OracleResult<T> out;
  if (n == 0) {
    out.value = log(x) + q.value;
  } else {
    out.value = (n % 2 == 1) ? q.value : T(-q.value);
  }
  out.error_estimate = q.error + tail;
  return out;
}

/// The positive zero of psi, x* ~ 1.4616, bracketed in (1, 2).
///
/// Bisection narrows the bracket to 1e-4, then Newton with psi' polishes.
template <class T>
T find_psi_root() {
  using std::abs;
  T lo = 1, hi = 2;
  while (hi - lo > T(1e-4)) {
    const T mid = (lo + hi) / 2;
    if (digamma(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  T x = (lo + hi) / 2;
  for (int iter = 0; iter < 100; ++iter) {
    const T step = digamma(x) / polygamma(1, x);
    if (abs(step) <= epsilon<T>() * abs(x)) break;
    T next = x - step;
    if (next < lo || next > hi) next = (lo + hi) / 2;
    if (next == x) break;
    if (digamma(next) < 0)
      lo = next;
    else
      hi = next;
    x = next;
  }
  return x;
}

/// Cached x* per type.
template <class T>
const T& psi_root() {
  static const T root = find_psi_root<T>();
  return root;
}

}  // namespace polycm

#endif  // POLYCM_SPECIAL_FN_HPP
