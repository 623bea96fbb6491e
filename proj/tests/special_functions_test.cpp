// Tests for the regularized incomplete gamma function and binary entropy.
//
// Oracle: for integer shape a, P(a, x) = 1 - exp(-x) * sum_{k<a} x^k / k!
// in exact closed form, evaluated independently here; plus a handful of
// frozen reference values.

#include "fhlink/special_functions.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace {

using fhlink::binary_entropy;
using fhlink::gamma_cdf;
using fhlink::regularized_lower_incomplete_gamma;

// Independent closed form for integer shapes.
double gamma_p_integer(int a, double x) {
  double term = 1.0;  // x^k / k!
  double sum = 1.0;
  for (int k = 1; k < a; ++k) {
    term *= x / k;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

TEST(GammaP, MatchesIntegerClosedForm) {
  for (int a = 1; a <= 20; ++a) {
    for (double x = 0.0; x <= 100.0; x += 0.5) {
      const double expected = gamma_p_integer(a, x);
      const double got = regularized_lower_incomplete_gamma(a, x);
      EXPECT_NEAR(got, expected, 1e-10)
          << "a=" << a << " x=" << x;
    }
  }
}

TEST(GammaP, FrozenReferenceValues) {
  // 1 - e^{-0.693147}
  EXPECT_NEAR(regularized_lower_incomplete_gamma(1.0, 0.693147), 0.4999999097,
              1e-9);
  // 1 - 3 e^{-2}
  EXPECT_NEAR(regularized_lower_incomplete_gamma(2.0, 2.0), 0.5939941503, 1e-9);
  // median of Exp(1) is ln 2
  EXPECT_NEAR(regularized_lower_incomplete_gamma(1.0, 0.6931471805599453), 0.5,
              1e-12);
}

TEST(GammaP, EdgeCasesAndMonotonicity) {
  EXPECT_EQ(regularized_lower_incomplete_gamma(3.0, 0.0), 0.0);
  EXPECT_NEAR(regularized_lower_incomplete_gamma(2.0, 200.0), 1.0, 1e-12);
  double prev = -1.0;
  for (double x = 0.0; x <= 30.0; x += 0.1) {
    double p = regularized_lower_incomplete_gamma(4.0, x);
    EXPECT_GE(p, prev);
    prev = p;
  }
  EXPECT_THROW(regularized_lower_incomplete_gamma(0.0, 1.0),
               std::invalid_argument);
  EXPECT_THROW(regularized_lower_incomplete_gamma(1.0, -1.0),
               std::invalid_argument);
}

TEST(GammaCdf, ScalesCorrectly) {
  // Gamma(shape 2, scale 3) at 6 equals P(2, 2)
  EXPECT_NEAR(gamma_cdf(2.0, 3.0, 6.0),
              regularized_lower_incomplete_gamma(2.0, 2.0), 1e-15);
  EXPECT_EQ(gamma_cdf(2.0, 3.0, 0.0), 0.0);
  EXPECT_EQ(gamma_cdf(2.0, 3.0, -1.0), 0.0);
  EXPECT_THROW(gamma_cdf(2.0, 0.0, 1.0), std::invalid_argument);
  // Gamma(1, s) is Exp(mean s)
  EXPECT_NEAR(gamma_cdf(1.0, 2.0, 2.0), 1.0 - std::exp(-1.0), 1e-14);
}

TEST(BinaryEntropy, KnownValues) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.499915958164528, 1e-12);
  for (double p : {0.03, 0.2, 0.41}) {
    EXPECT_NEAR(binary_entropy(p), binary_entropy(1.0 - p), 1e-15);
  }
  EXPECT_THROW(binary_entropy(-0.1), std::invalid_argument);
  EXPECT_THROW(binary_entropy(1.1), std::invalid_argument);
}

}  // namespace
