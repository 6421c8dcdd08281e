#ifndef POLYCM_QUADRATURE_HPP
#define POLYCM_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "real.hpp"

namespace polycm {

template <class T>
struct QuadResult {
  T value{};
  T error{};
  std::size_t intervals = 0;
};

template <class T>
struct QuadOptions {
  T abs_tol = T(1e-13);
  T rel_tol = T(1e-14);
  std::size_t max_intervals = 4000;
};

/// 1e-13 absolute in double mode; about eight digits short of working
/// precision in extended mode.
template <class T>
QuadOptions<T> default_quad_options() {
  QuadOptions<T> opts;
  if constexpr (is_extended_v<T>) {
    using std::pow;
    opts.abs_tol = pow(T(10), -(digits10_v<T> - 8));
    opts.rel_tol = pow(T(10), -(digits10_v<T> - 6));
  }
  return opts;
}

namespace detail {

inline constexpr int gauss_points = 10;

// Gauss-Legendre abscissae on [-1, 1] and weights, found by Newton in T.
template <class T>
const std::pair<std::array<T, gauss_points>, std::array<T, gauss_points>>& gauss_legendre_rule() {
  static const auto rule = [] {
    using std::abs;
    using std::cos;
    std::array<T, gauss_points> nodes{}, weights{};
    const int n = gauss_points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      T x = T(std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5)));
      T dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        T p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const T step = p1 / dp;
        x -= step;
        if (abs(step) <= 4 * epsilon<T>()) {
          p0 = 1;
          p1 = x;
          for (int k = 2; k <= n; ++k) {
            T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
          }
          dp = n * (x * p1 - p0) / (x * x - 1);
          break;
        }
      }
      const T w = 2 / ((1 - x * x) * dp * dp);
      nodes[static_cast<std::size_t>(i)] = -x;
      nodes[static_cast<std::size_t>(n - 1 - i)] = x;
      weights[static_cast<std::size_t>(i)] = w;
      weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return std::make_pair(nodes, weights);
  }();
  return rule;
}

template <class T, class F>
T gauss_apply(F& f, const T& a, const T& b) {
  const auto& [nodes, weights] = gauss_legendre_rule<T>();
  const T half = (b - a) / 2;
  const T mid = (a + b) / 2;
  T sum = 0;
  for (int i = 0; i < gauss_points; ++i)
    sum += weights[static_cast<std::size_t>(i)] * f(mid + half * nodes[static_cast<std::size_t>(i)]);
  return sum * half;
}

}  // namespace detail

/// Globally adaptive Gauss-Legendre quadrature of f over [a, b].
///
/// Each panel is estimated with the 10-point rule on the whole panel and on
/// its two halves; the difference is the panel error. The panel with the
/// largest error is bisected until the total error meets the tolerance or
/// is at the rounding floor. Throws QuadratureError if max_intervals is hit.
template <class T, class F>
QuadResult<T> integrate(F&& f, T a, T b, const QuadOptions<T>& opts = default_quad_options<T>()) {
  using std::abs;
  QuadResult<T> out;
  if (a == b) return out;
  bool flip = false;
  if (b < a) {
    std::swap(a, b);
    flip = true;
  }

  struct Panel {
    T a, b, value, err, left, right;
  };
  auto make_panel = [&](const T& lo, const T& hi, const T& coarse) {
    const T m = (lo + hi) / 2;
    const T l = detail::gauss_apply(f, lo, m);
    const T r = detail::gauss_apply(f, m, hi);
    const T fine = l + r;
    return Panel{lo, hi, fine, abs(fine - coarse), l, r};
  };
  auto by_error = [](const Panel& x, const Panel& y) { return x.err < y.err; };

  std::vector<Panel> heap;
  heap.push_back(make_panel(a, b, detail::gauss_apply(f, a, b)));

  const T floor_factor = 50 * epsilon<T>();
  for (;;) {
    T total = 0, err = 0, magnitude = 0;
    for (const auto& p : heap) {
      total += p.value;
      err += p.err;
      magnitude += abs(p.value);
    }
    const T target = std::max(opts.abs_tol, opts.rel_tol * abs(total));
    if (err <= target || err <= floor_factor * magnitude) {
      out.value = flip ? T(-total) : total;
      out.error = std::max(err, T(floor_factor * magnitude));
      out.intervals = heap.size();
      return out;
    }
    if (heap.size() >= opts.max_intervals)
      throw QuadratureError("quadrature did not converge, achieved error " +
                                std::to_string(to_double(err)),
                            to_double(err));
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const T m = (worst.a + worst.b) / 2;
    heap.push_back(make_panel(worst.a, m, worst.left));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(make_panel(m, worst.b, worst.right));
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
}

}  // namespace polycm

#endif  // POLYCM_QUADRATURE_HPP
