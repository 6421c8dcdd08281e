#ifndef POLYCM_DIVIDED_DIFF_HPP
#define POLYCM_DIVIDED_DIFF_HPP

// Functionals built from divided differences of psi and lnGamma over a shift
// pair (s, t):
//
//   z(x)     = [Gamma(x+t)/Gamma(x+s)]^{1/(t-s)} - x
//   Delta(x) = {[psi(x+t)-psi(x+s)]/(t-s)}^2 + [psi'(x+t)-psi'(x+s)]/(t-s)
//   Theta(x) = [psi(x+t)-psi(x+s)]^2 + (t-s)[psi'(x+t)-psi'(x+s)]
//   Lambda, Phi, g, f, h and Q as documented per function.
//
// Every functional is symmetric in (s, t); evaluation always uses the
// ordered pair so swapping s and t gives bit-identical results. When
// |t - s| <= delta_limit the s = t limit is evaluated at the midpoint.

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "quadrature.hpp"
#include "real.hpp"
#include "shift_pair.hpp"
#include "special_fn.hpp"

namespace polycm {

template <class T>
struct ZValue {
  T z{};   ///< z(x)
  T z1{};  ///< z'(x)
  T z2{};  ///< z''(x)
};

template <class T>
struct GFValue {
  T g{};
  T g1{};  ///< g'(x)
  T f{};
};

namespace detail {

template <class T>
ShiftPair<work_t<T>> widen(const ShiftPair<T>& p) {
  return ShiftPair<work_t<T>>(work_t<T>(p.s()), work_t<T>(p.t()));
}

template <class T>
inline constexpr bool widens_v = !std::is_same_v<work_t<T>, T>;

template <class T>
std::pair<T, T> ordered(const ShiftPair<T>& p) {
  if (p.t() < p.s()) return {p.t(), p.s()};
  return {p.s(), p.t()};
}

template <class T>
void require_order(int order, const char* fn) {
  if (order > k_max_supported)
    throw OrderError(std::string(fn) + ": needs polygamma order " + std::to_string(order) +
                     " > " + std::to_string(k_max_supported));
}

template <class T>
T binomial(int n, int k) {
  T out = 1;
  for (int j = 1; j <= k; ++j) out = out * T(n - k + j) / T(j);
  return out;
}

// [(y - 1) e^y + 1] / y^2 = sum_{k>=2} (k-1) y^{k-2} / k!
template <class T>
T exp_defect_series(const T& y) {
  using std::abs;
  T sum = 0;
  T term = T(1) / 2;  // y^{k-2}/k! at k = 2
  for (int k = 2; k < 200; ++k) {
    const T add = T(k - 1) * term;
    sum += add;
    if (abs(add) <= epsilon<T>() * abs(sum)) break;
    term = term * y / T(k + 1);
  }
  return sum;
}

// (y - 1) e^y + 1 without cancellation near y = 0.
template <class T>
T exp_defect(const T& y) {
  using std::abs;
  using std::exp;
  if (abs(y) < T(0.5)) return y * y * exp_defect_series(y);
  return (y - 1) * exp(y) + 1;
}

}  // namespace detail

/// m-th order divided difference of psi: [psi^(m)(x+t) - psi^(m)(x+s)]/(t-s),
/// or psi^(m+1)(x + (s+t)/2) in the coincident regime.
template <class T>
T divided_psi(const ShiftPair<T>& pair, const T& x, int m = 0) {
  pair.require_in_domain(x, "divided_psi");
  if constexpr (detail::widens_v<T>) return T(divided_psi(detail::widen(pair), work_t<T>(x), m));
  if (pair.coincident()) {
    detail::require_order<T>(m + 1, "divided_psi");
    return polygamma(m + 1, T(x + pair.midpoint()));
  }
  detail::require_order<T>(m, "divided_psi");
  const auto [s, t] = detail::ordered(pair);
  return (polygamma(m, T(x + t)) - polygamma(m, T(x + s))) / (t - s);
}

/// z, z' and z''.
template <class T>
ZValue<T> z_eval(const ShiftPair<T>& pair, const T& x) {
  using std::exp;
  pair.require_in_domain(x, "z_eval");
  if constexpr (detail::widens_v<T>) {
    const auto w = z_eval(detail::widen(pair), work_t<T>(x));
    return ZValue<T>{T(w.z), T(w.z1), T(w.z2)};
  }
  ZValue<T> out;
  if (pair.coincident()) {
    const T u = x + pair.midpoint();
    const T e = exp(digamma(u));
    const T p1 = polygamma(1, u), p2 = polygamma(2, u);
    out.z = e - x;
    out.z1 = p1 * e - 1;
    out.z2 = e * (p1 * p1 + p2);
    return out;
  }
  const auto [s, t] = detail::ordered(pair);
  const T w = exp(ln_gamma_ratio(T(x + t), T(x + s)) / (t - s));
  const T d0 = divided_psi(pair, x, 0);
  const T d1 = divided_psi(pair, x, 1);
  out.z = w - x;
  out.z1 = w * d0 - 1;
  out.z2 = w * (d0 * d0 + d1);
  return out;
}

template <class T>
T delta(const ShiftPair<T>& pair, const T& x) {
  pair.require_in_domain(x, "delta");
  if constexpr (detail::widens_v<T>) return T(delta(detail::widen(pair), work_t<T>(x)));
  const T d0 = divided_psi(pair, x, 0);
  return d0 * d0 + divided_psi(pair, x, 1);
}

template <class T>
T theta(const ShiftPair<T>& pair, const T& x) {
  pair.require_in_domain(x, "theta");
  if constexpr (detail::widens_v<T>) return T(theta(detail::widen(pair), work_t<T>(x)));
  if (pair.coincident()) {
    const T gap = pair.gap();
    return gap * gap * delta(pair, x);
  }
  const auto [s, t] = detail::ordered(pair);
  const T d0 = digamma(T(x + t)) - digamma(T(x + s));
  const T d1 = polygamma(1, T(x + t)) - polygamma(1, T(x + s));
  return d0 * d0 + (t - s) * d1;
}

/// Delta^(k)(x) for k = 0..k_max by the Leibniz rule.
template <class T>
std::vector<T> delta_derivatives(const ShiftPair<T>& pair, const T& x, int k_max) {
  pair.require_in_domain(x, "delta_derivatives");
  if constexpr (detail::widens_v<T>) {
    const auto w = delta_derivatives(detail::widen(pair), work_t<T>(x), k_max);
    return std::vector<T>(w.begin(), w.end());
  }
  detail::require_order<T>(pair.coincident() ? k_max + 2 : k_max + 1, "delta_derivatives");
  std::vector<T> dd;
  for (int m = 0; m <= k_max + 1; ++m) dd.push_back(divided_psi(pair, x, m));
  std::vector<T> out;
  for (int k = 0; k <= k_max; ++k) {
    T sum = dd[static_cast<std::size_t>(k + 1)];
    for (int j = 0; j <= k; ++j)
      sum += detail::binomial<T>(k, j) * dd[static_cast<std::size_t>(j)] *
             dd[static_cast<std::size_t>(k - j)];
    out.push_back(sum);
  }
  return out;
}

/// Theta^(k)(x) for k = 0..k_max:
///   sum_j C(k,j) D_j D_{k-j} + (t-s) D_{k+1},  D_m = psi^(m)(x+t) - psi^(m)(x+s).
template <class T>
std::vector<T> theta_derivatives(const ShiftPair<T>& pair, const T& x, int k_max) {
  pair.require_in_domain(x, "theta_derivatives");
  if constexpr (detail::widens_v<T>) {
    const auto w = theta_derivatives(detail::widen(pair), work_t<T>(x), k_max);
    return std::vector<T>(w.begin(), w.end());
  }
  if (pair.coincident()) {
    const T gap = pair.gap();
    auto out = delta_derivatives(pair, x, k_max);
    for (auto& v : out) v *= gap * gap;
    return out;
  }
  detail::require_order<T>(k_max + 1, "theta_derivatives");
  const auto [s, t] = detail::ordered(pair);
  std::vector<T> d;
  for (int m = 0; m <= k_max + 1; ++m)
    d.push_back(polygamma(m, T(x + t)) - polygamma(m, T(x + s)));
  std::vector<T> out;
  for (int k = 0; k <= k_max; ++k) {
    T sum = (t - s) * d[static_cast<std::size_t>(k + 1)];
    for (int j = 0; j <= k; ++j)
      sum += detail::binomial<T>(k, j) * d[static_cast<std::size_t>(j)] *
             d[static_cast<std::size_t>(k - j)];
    out.push_back(sum);
  }
  return out;
}

template <class T>
T theta_derivative(const ShiftPair<T>& pair, const T& x, int k) {
  if (k < 0) throw OrderError("theta_derivative: negative order");
  return theta_derivatives(pair, x, k).back();
}

template <class T>
T delta_derivative(const ShiftPair<T>& pair, const T& x, int k) {
  if (k < 0) throw OrderError("delta_derivative: negative order");
  return delta_derivatives(pair, x, k).back();
}

/// Lambda(x) = {[psi(x+t+1)+psi(x+t)] - [psi(x+s+1)+psi(x+s)]}/(t-s)
///             - (2x+s+t)/((x+s)(x+t)).
template <class T>
T lambda_fn(const ShiftPair<T>& pair, const T& x) {
  pair.require_in_domain(x, "lambda_fn");
  if constexpr (detail::widens_v<T>) return T(lambda_fn(detail::widen(pair), work_t<T>(x)));
  if (pair.coincident()) {
    const T u = x + pair.midpoint();
    return polygamma(1, T(u + 1)) + polygamma(1, u) - 2 / u;
  }
  const auto [s, t] = detail::ordered(pair);
  const T upper = digamma(T(x + t + 1)) + digamma(T(x + t));
  const T lower = digamma(T(x + s + 1)) + digamma(T(x + s));
  return (upper - lower) / (t - s) - (2 * x + s + t) / ((x + s) * (x + t));
}

/// Phi(x) = divided difference of psi times [Gamma(x+t)/Gamma(x+s)]^{1/(t-s)};
/// psi'(x+s) e^{psi(x+s)} when s = t. Equals z'(x) + 1.
template <class T>
T phi(const ShiftPair<T>& pair, const T& x) {
  using std::exp;
  pair.require_in_domain(x, "phi");
  if constexpr (detail::widens_v<T>) return T(phi(detail::widen(pair), work_t<T>(x)));
  if (pair.coincident()) {
    const T u = x + pair.midpoint();
    return polygamma(1, u) * exp(digamma(u));
  }
  const auto [s, t] = detail::ordered(pair);
  return divided_psi(pair, x, 0) * exp(ln_gamma_ratio(T(x + t), T(x + s)) / (t - s));
}

/// g'(x) = ln[Gamma(x+t)Gamma(c+s) / (Gamma(x+s)Gamma(c+t))]/(t-s), or
/// psi(x+s) - psi(c+s) when s = t.
template <class T>
T g_first(const AnchoredPair<T>& anchored, const T& x) {
  const auto& pair = anchored.pair();
  const T& c = anchored.c();
  pair.require_in_domain(x, "g_first");
  if (pair.coincident()) {
    const T m = pair.midpoint();
    return digamma(T(x + m)) - digamma(T(c + m));
  }
  const auto [s, t] = detail::ordered(pair);
  return (ln_gamma_ratio(T(x + t), T(x + s)) - ln_gamma_ratio(T(c + t), T(c + s))) / (t - s);
}

/// g(x) = integral of g' from c to x; the coincident branch uses the exact
/// antiderivative lnGamma.
template <class T>
T g_value(const AnchoredPair<T>& anchored, const T& x) {
  const auto& pair = anchored.pair();
  const T& c = anchored.c();
  pair.require_in_domain(x, "g_value");
  if (x == c) return T(0);
  if (pair.coincident()) {
    const T m = pair.midpoint();
    return ln_gamma_ratio(T(x + m), T(c + m)) - (x - c) * digamma(T(c + m));
  }
  QuadOptions<T> opts = default_quad_options<T>();
  opts.abs_tol = 0;
  if constexpr (!is_extended_v<T>) opts.rel_tol = T(1e-13);
  const auto [s, t] = detail::ordered(pair);
  const T base = ln_gamma_ratio(T(c + t), T(c + s));
  auto integrand = [&](const T& u) { return T((ln_gamma_ratio(T(u + t), T(u + s)) - base) / (t - s)); };
  return integrate(integrand, c, x, opts).value;
}

/// g, g' and f = g / {[g' - 1] e^{g'} + 1}, with f(c) = 1/g''(c).
///
/// Within 1e-3 of c, numerator and denominator are replaced by their Taylor
/// expansions about c through the h^4 term, both divided by h^2.
template <class T>
GFValue<T> g_f_eval(const AnchoredPair<T>& anchored, const T& x) {
  using std::abs;
  const auto& pair = anchored.pair();
  const T& c = anchored.c();
  pair.require_in_domain(x, "g_f_eval");
  GFValue<T> out;
  const T h = x - c;
  if (abs(h) < T(1e-3)) {
    const T a = divided_psi(pair, c, 0);
    const T b = divided_psi(pair, c, 1);
    const T d = divided_psi(pair, c, 2);
    const T num = a / 2 + b * h / 6 + d * h * h / 24;
    const T y_over_h = a + b * h / 2 + d * h * h / 6;
    const T den = y_over_h * y_over_h * detail::exp_defect_series(T(y_over_h * h));
    out.f = num / den;
    out.g = h == 0 ? T(0) : g_value(anchored, x);
    out.g1 = h == 0 ? T(0) : g_first(anchored, x);
    return out;
  }
  out.g = g_value(anchored, x);
  out.g1 = g_first(anchored, x);
  out.f = out.g / detail::exp_defect(out.g1);
  return out;
}

/// h(x) = [g' - g g'' - 1] e^{g'} + 1; f' has the sign of g' h.
template <class T>
T h_value(const AnchoredPair<T>& anchored, const T& x) {
  using std::exp;
  const T g = g_value(anchored, x);
  const T g1 = g_first(anchored, x);
  const T g2 = divided_psi(anchored.pair(), x, 0);
  return (g1 - g * g2 - 1) * exp(g1) + 1;
}

/// h'(x) = -g {[g'']^2 + g'''} e^{g'} = -g Delta(x) e^{g'}.
template <class T>
T h_derivative(const AnchoredPair<T>& anchored, const T& x) {
  using std::exp;
  const T g = g_value(anchored, x);
  const T g1 = g_first(anchored, x);
  return -g * delta(anchored.pair(), x) * exp(g1);
}

/// The variant -g [g'' + g''']^2 e^{g'}; kept for comparison against
/// h_derivative, which is what differentiating h actually gives.
template <class T>
T h_derivative_as_printed(const AnchoredPair<T>& anchored, const T& x) {
  using std::exp;
  const T g = g_value(anchored, x);
  const T g1 = g_first(anchored, x);
  const T sum = divided_psi(anchored.pair(), x, 0) + divided_psi(anchored.pair(), x, 1);
  return -g * sum * sum * exp(g1);
}

/// E(x) = e^{psi(x)} [psi(x) - 1] + 1.
template <class T>
T gamma_psi_exponent(const T& x) {
  return detail::exp_defect(digamma(x));
}

/// Q(x) = [lnGamma(x) - lnGamma(x*)] / E(x), Q(x*) = 1/psi'(x*).
template <class T>
T q_ratio(const T& x) {
  detail::require_positive(x, "q_ratio");
  const AnchoredPair<T> anchored(ShiftPair<T>(T(0), T(0)), psi_root<T>());
  return g_f_eval(anchored, x).f;
}

}  // namespace polycm

#endif  // POLYCM_DIVIDED_DIFF_HPP
