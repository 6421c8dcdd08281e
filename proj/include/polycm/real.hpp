#ifndef POLYCM_REAL_HPP
#define POLYCM_REAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace polycm {

/// 50 significant decimal digits.
using Extended = boost::multiprecision::cpp_bin_float_50;
/// 100 significant decimal digits.
using Extended100 = boost::multiprecision::cpp_bin_float_100;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OrderError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

// Type used for internal accumulation. Double mode gets 11 extra bits from
// long double so results land within a few ulp after rounding back.
template <class T>
struct work_type {
  using type = T;
};
template <>
struct work_type<double> {
  using type = long double;
};
template <class T>
using work_t = typename work_type<T>::type;

template <class T>
inline T pi() {
  return boost::math::constants::pi<T>();
}

template <class T>
inline T epsilon() {
  return std::numeric_limits<T>::epsilon();
}

template <class T>
inline constexpr int digits10_v = std::numeric_limits<T>::digits10;

template <class T>
inline constexpr bool is_extended_v = !std::is_floating_point_v<T>;

template <class T>
inline double to_double(const T& v) {
  return static_cast<double>(v);
}

/// Rounding guard for inequality verdicts: 1e-12 in double mode, 1e-20 otherwise.
template <class T>
inline T guard_band() {
  if constexpr (is_extended_v<T>)
    return T("1e-20");
  else
    return T(1e-12);
}

/// Working precision selected at runtime (CLI, environment).
struct PrecisionMode {
  enum class Kind { Double, Extended };

  Kind kind = Kind::Double;
  int digits = 15;

  static PrecisionMode double_mode() { return {}; }
  static PrecisionMode extended(int d = 50) { return {Kind::Extended, d}; }

  /// Accepts "double", "extended" or "extended:<digits>" with 30 <= digits <= 100.
  static PrecisionMode parse(const std::string& text) {
    if (text == "double") return double_mode();
    if (text == "extended") return extended(50);
    const std::string prefix = "extended:";
    if (text.rfind(prefix, 0) == 0) {
      const std::string tail = text.substr(prefix.size());
      std::size_t used = 0;
      int d = 0;
      try {
        d = std::stoi(tail, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad precision digits: " + tail);
      }
      if (used != tail.size()) throw std::invalid_argument("bad precision digits: " + tail);
      if (d < 30 || d > 100)
        throw std::invalid_argument("extended precision must be 30..100 digits, got " + tail);
      return extended(d);
    }
    throw std::invalid_argument("unknown precision mode: " + text);
  }

  std::string to_string() const {
    if (kind == Kind::Double) return "double";
    return "extended:" + std::to_string(digits);
  }

  bool operator==(const PrecisionMode&) const = default;
};

}  // namespace polycm

#endif  // POLYCM_REAL_HPP
