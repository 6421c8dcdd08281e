#ifndef POLYCM_SHIFT_PAIR_HPP
#define POLYCM_SHIFT_PAIR_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "real.hpp"

namespace polycm {

/// Below this |t - s| the divided differences switch to the s = t limit
/// evaluated at the midpoint.
inline constexpr double delta_limit = 1e-4;
/// Half-width of the band around |t - s| = 1 where no sign claim applies.
inline constexpr double epsilon_regime = 1e-8;

enum class Regime { Sub, Super, Critical, Coincident };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Sub: return "sub";
    case Regime::Super: return "super";
    case Regime::Critical: return "critical";
    case Regime::Coincident: return "coincident";
  }
  return "?";
}

/// The shift parameters (s, t) with alpha = min(s, t).
template <class T>
class ShiftPair {
 public:
  ShiftPair(T s, T t) : s_(std::move(s)), t_(std::move(t)) {
    using std::abs;
    alpha_ = std::min(s_, t_);
    const T gap = abs(t_ - s_);
    if (gap <= T(delta_limit))
      regime_ = Regime::Coincident;
    else if (abs(gap - 1) <= T(epsilon_regime))
      regime_ = Regime::Critical;
    else
      regime_ = gap < 1 ? Regime::Sub : Regime::Super;
  }

  const T& s() const { return s_; }
  const T& t() const { return t_; }
  const T& alpha() const { return alpha_; }
  Regime regime() const { return regime_; }

  T gap() const { return t_ - s_; }
  T midpoint() const { return (s_ + t_) / 2; }
  bool coincident() const { return regime_ == Regime::Coincident; }

  /// +1 where the functionals are claimed completely monotonic, -1 where their
  /// negatives are, 0 on the critical band.
  int expected_sign() const {
    switch (regime_) {
      case Regime::Sub:
      case Regime::Coincident: return 1;
      case Regime::Super: return -1;
      case Regime::Critical: return 0;
    }
    return 0;
  }

  ShiftPair swapped() const { return ShiftPair(t_, s_); }

  void require_in_domain(const T& x, const char* fn) const {
    if (!(x > -alpha_))
      throw DomainError(std::string(fn) + ": x must exceed -min(s, t)");
  }

 private:
  T s_, t_, alpha_;
  Regime regime_;
};

/// A shift pair with an anchor c > -alpha.
template <class T>
class AnchoredPair {
 public:
  AnchoredPair(ShiftPair<T> pair, T c) : pair_(std::move(pair)), c_(std::move(c)) {
    if (!(c_ > -pair_.alpha())) throw DomainError("anchor c must exceed -min(s, t)");
  }

  const ShiftPair<T>& pair() const { return pair_; }
  const T& c() const { return c_; }

 private:
  ShiftPair<T> pair_;
  T c_;
};

}  // namespace polycm

#endif  // POLYCM_SHIFT_PAIR_HPP
