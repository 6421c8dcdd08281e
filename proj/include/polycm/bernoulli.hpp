#ifndef POLYCM_BERNOULLI_HPP
#define POLYCM_BERNOULLI_HPP

#include <array>
#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

namespace polycm {

using ExactRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Largest k for which B_{2k} is tabulated (B_60).
inline constexpr int bernoulli_max_half_index = 30;

namespace detail {

// B_0..B_60 from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline const std::array<ExactRational, 2 * bernoulli_max_half_index + 1>& bernoulli_exact() {
  static const auto table = [] {
    constexpr int n = 2 * bernoulli_max_half_index + 1;
    std::array<ExactRational, n> b{};
    b[0] = 1;
    for (int m = 1; m < n; ++m) {
      ExactRational acc = 0;
      BigInt binom = 1;  // C(m+1, j)
      for (int j = 0; j < m; ++j) {
        acc += ExactRational(binom) * b[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      b[m] = -acc / ExactRational(m + 1);
    }
    return b;
  }();
  return table;
}

template <class T>
T rational_to(const ExactRational& q) {
  return static_cast<T>(boost::multiprecision::numerator(q)) /
         static_cast<T>(boost::multiprecision::denominator(q));
}

}  // namespace detail

/// Exact B_{2k}, 0 <= k <= 30.
inline const ExactRational& bernoulli_b2k_exact(int k) {
  return detail::bernoulli_exact().at(static_cast<std::size_t>(2 * k));
}

/// B_{2k} rounded to T, 0 <= k <= 30. Thread-safe lazy table per type.
template <class T>
const T& bernoulli_b2k(int k) {
  static const auto table = [] {
    std::array<T, bernoulli_max_half_index + 1> out{};
    for (int i = 0; i <= bernoulli_max_half_index; ++i)
      out[static_cast<std::size_t>(i)] = detail::rational_to<T>(bernoulli_b2k_exact(i));
    return out;
  }();
  return table.at(static_cast<std::size_t>(k));
}

}  // namespace polycm

#endif  // POLYCM_BERNOULLI_HPP
