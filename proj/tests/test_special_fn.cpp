#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "polycm/special_fn.hpp"

using polycm::Extended;
using polycm::Extended100;

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kZeta3 = 1.2020569031595942854;
const double kPi = std::acos(-1.0);

template <class T>
double rel(const T& a, const T& b) {
  using std::abs;
  return polycm::to_double(T(abs(a - b) / std::max(T(1e-300), T(abs(b)))));
}

}  // namespace

TEST(LnGamma, IntegerPointsVanish) {
  EXPECT_NEAR(polycm::ln_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(polycm::ln_gamma(2.0), 0.0, 1e-15);
}

TEST(LnGamma, HalfIsLogRootPi) {
  EXPECT_NEAR(polycm::ln_gamma(0.5), 0.5723649429247000870717137, 1e-15);
  const Extended v = polycm::ln_gamma(Extended("0.5"));
  EXPECT_LT(rel(v, Extended(log(sqrt(polycm::pi<Extended>())))), 1e-45);
}

TEST(LnGamma, FrozenValues) {
  EXPECT_NEAR(polycm::ln_gamma(10.7), 14.40321059629851776587237, 1e-13);
  EXPECT_NEAR(polycm::ln_gamma(1e-3), 6.907178885383853682512345, 1e-13);
}

TEST(LnGamma, RatioStableAtLargeArgument) {
  EXPECT_NEAR(polycm::ln_gamma_ratio(1e6 + 0.5, 1e6), 6.907755153982137052059183, 1e-13);
  const Extended r = polycm::ln_gamma_ratio(Extended(1000000.5), Extended(1000000));
  EXPECT_LT(rel(r, Extended("6.9077551539821370520591826973864243936366378056797")), 1e-45);
  // tiny separations keep full relative accuracy
  const Extended tiny = polycm::ln_gamma_ratio(Extended(2 + ldexp(Extended(1), -96)), Extended(2));
  EXPECT_LT(rel(tiny, Extended("5.3362885327846460943138797864325633059350429957407e-30")), 1e-40);
  EXPECT_EQ(polycm::ln_gamma_ratio(3.0, 3.0), 0.0);
  EXPECT_NEAR(polycm::ln_gamma_ratio(3.5, 2.5), std::log(2.5), 1e-15);
}

TEST(LnGamma, RejectsNonPositive) {
  EXPECT_THROW(polycm::ln_gamma(0.0), polycm::DomainError);
  EXPECT_THROW(polycm::ln_gamma(-2.5), polycm::DomainError);
  EXPECT_THROW(polycm::ln_gamma(std::numeric_limits<double>::quiet_NaN()), polycm::DomainError);
  EXPECT_THROW(polycm::ln_gamma_ratio(1.0, 0.0), polycm::DomainError);
}

TEST(Digamma, KnownValues) {
  EXPECT_NEAR(polycm::digamma(1.0), -kEulerGamma, 1e-15);
  EXPECT_NEAR(polycm::digamma(2.0) - polycm::digamma(1.0), 1.0, 1e-15);
  EXPECT_NEAR(polycm::digamma(0.5), -1.963510026021423479440976, 1e-14);
  EXPECT_NEAR(polycm::digamma(5.0), 1.506117668431800472726821, 1e-14);
  EXPECT_NEAR(polycm::digamma(100.25), 4.602671243274712559076876, 1e-14);
}

TEST(Digamma, ExtendedCarriesFortyDigits) {
  const Extended g = -polycm::digamma(Extended(1));
  EXPECT_LT(rel(g, Extended("0.57721566490153286060651209008240243104215933593992")), 1e-45);
  const Extended100 g100 = -polycm::digamma(Extended100(1));
  EXPECT_LT(rel(g100, Extended100("0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495")),
            1e-90);
}

TEST(Digamma, LogBounds) {
  for (double x : {0.05, 0.3, 1.0, 5.0, 17.5, 300.0, 1e5}) {
    const double p = polycm::digamma(x);
    EXPECT_GT(p, std::log(x) - 1 / x) << x;
    EXPECT_LT(p, std::log(x) - 1 / (2 * x)) << x;
  }
  const double p5 = polycm::digamma(5.0);
  EXPECT_GT(p5, std::log(5.0) - 0.2);
  EXPECT_LT(p5, std::log(5.0) - 0.1);
}

TEST(Polygamma, KnownValues) {
  EXPECT_NEAR(polycm::polygamma(1, 1.0), kPi * kPi / 6, 1e-15);
  EXPECT_NEAR(polycm::polygamma(2, 1.0), -2 * kZeta3, 1e-14);
  EXPECT_NEAR(polycm::polygamma(1, 4.0) - polycm::polygamma(1, 3.0), -1.0 / 9, 1e-15);
  EXPECT_LT(rel(polycm::polygamma(3, 2.5), 0.2239058488172520512551475), 1e-14);
  EXPECT_LT(rel(polycm::polygamma(6, 0.3), -3292298.132908369485392299), 1e-14);
  EXPECT_LT(rel(polycm::polygamma(16, 3.0), -163262.7609066316556881115), 1e-13);
}

TEST(Polygamma, TrigammaAsymptotics) {
  const double v = polycm::polygamma(1, 1e6);
  EXPECT_LT(std::abs(v / (1e-6 + 0.5e-12) - 1), 1e-6);
  EXPECT_LT(rel(v, 0.000001000000500000166666666667), 1e-14);
}

TEST(Polygamma, OrderZeroIsDigamma) { EXPECT_EQ(polycm::polygamma(0, 3.7), polycm::digamma(3.7)); }

TEST(Polygamma, OrderLimits) {
  EXPECT_THROW(polycm::polygamma(-1, 1.0), polycm::OrderError);
  EXPECT_THROW(polycm::polygamma(polycm::k_max_supported + 1, 1.0), polycm::OrderError);
  EXPECT_NO_THROW(polycm::polygamma(polycm::k_max_supported, 1.0));
  EXPECT_THROW(polycm::polygamma(2, 0.0), polycm::DomainError);
}

TEST(Polygamma, RecurrenceProperty) {
  for (int n = 0; n <= 8; ++n) {
    double fact = 1;
    for (int j = 2; j <= n; ++j) fact *= j;
    for (double x = 0.1; x <= 50; x += 0.7) {
      const double lhs = polycm::polygamma(n, x + 1) - polycm::polygamma(n, x);
      const double rhs = (n % 2 == 0 ? 1 : -1) * fact / std::pow(x, n + 1);
      EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs))) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Polygamma, SignProperty) {
  for (int n = 1; n <= 12; ++n)
    for (double x : {0.01, 0.4, 1.0, 3.3, 25.0, 1e4}) {
      const double v = polycm::polygamma(n, x);
      EXPECT_GT(n % 2 == 1 ? v : -v, 0) << n << " " << x;
    }
}

TEST(Polygamma, SequenceMatchesSingleCalls) {
  const auto seq = polycm::polygamma_sequence(5, 2.25);
  ASSERT_EQ(seq.size(), 6u);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(seq[static_cast<std::size_t>(n)], polycm::polygamma(n, 2.25));
}

TEST(Polygamma, ExponentialLimitAtInfinity) {
  const double v = polycm::polygamma(1, 1e6) * std::exp(polycm::digamma(1e6));
  EXPECT_NEAR(v, 1.0, 1e-5);
  EXPECT_LT(v, 1.0);
}

TEST(QuadratureOracle, AgreesWithSeries) {
  EXPECT_NEAR(polycm::quadrature_oracle(0, 1.0).value, polycm::digamma(1.0), 1e-10);
  EXPECT_NEAR(polycm::quadrature_oracle(1, 0.5).value, kPi * kPi / 2, 1e-10);
  EXPECT_NEAR(polycm::quadrature_oracle(2, 1.0).value, -2.404113806319, 1e-10);
  for (int n = 0; n <= 4; ++n)
    for (double x = 0.5; x <= 20; x += 1.25)
      EXPECT_NEAR(polycm::quadrature_oracle(n, x).value, polycm::polygamma(n, x), 1e-9) << n << " " << x;
}

TEST(QuadratureOracle, ExtendedPrecision) {
  const auto r = polycm::quadrature_oracle(1, Extended(2));
  EXPECT_LT(rel(r.value, polycm::polygamma(1, Extended(2))), 1e-35);
  EXPECT_LT(polycm::to_double(r.error_estimate), 1e-30);
}

TEST(PsiRoot, KnownDigits) {
  const double xs = polycm::find_psi_root<double>();
  EXPECT_NEAR(xs, 1.4616, 5e-5);
  EXPECT_NEAR(xs, 1.461632144968362341, 1e-15);
  EXPECT_LT(std::abs(polycm::digamma(xs)), 1e-12);
  const Extended xe = polycm::psi_root<Extended>();
  EXPECT_LT(rel(xe, Extended("1.4616321449683623412626595423257213284681962040064")), 1e-45);
  EXPECT_NEAR(1 / polycm::polygamma(1, xs), 1.03340775216449947, 1e-15);
}

TEST(PrecisionMode, Parsing) {
  using polycm::PrecisionMode;
  EXPECT_EQ(PrecisionMode::parse("double").kind, PrecisionMode::Kind::Double);
  EXPECT_EQ(PrecisionMode::parse("extended").digits, 50);
  EXPECT_EQ(PrecisionMode::parse("extended:80").digits, 80);
  EXPECT_EQ(PrecisionMode::parse("extended:80").to_string(), "extended:80");
  EXPECT_THROW(PrecisionMode::parse("extended:12"), std::invalid_argument);
  EXPECT_THROW(PrecisionMode::parse("extended:101"), std::invalid_argument);
  EXPECT_THROW(PrecisionMode::parse("extended:4x"), std::invalid_argument);
  EXPECT_THROW(PrecisionMode::parse("float"), std::invalid_argument);
}

TEST(Bernoulli, ExactTable) {
  using polycm::ExactRational;
  EXPECT_EQ(polycm::bernoulli_b2k_exact(1), ExactRational(1, 6));
  EXPECT_EQ(polycm::bernoulli_b2k_exact(2), ExactRational(-1, 30));
  EXPECT_EQ(polycm::bernoulli_b2k_exact(6), ExactRational(-691, 2730));
  EXPECT_EQ(polycm::bernoulli_b2k_exact(10), ExactRational(-174611, 330));
  EXPECT_THROW(polycm::bernoulli_b2k_exact(31), std::out_of_range);
}
