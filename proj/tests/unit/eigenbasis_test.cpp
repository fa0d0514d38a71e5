#include <random>

#include <gtest/gtest.h>

#include "sul/eigenbasis.hpp"
#include "support.hpp"

namespace sul {
namespace {

using testing::near;

LaguerreExpansion make(int d, std::map<int, Scalar> coeffs) { return LaguerreExpansion(LaguerreParam(d), std::move(coeffs)); }

LaguerreExpansion random_expansion(std::mt19937_64& rng, int d, int n, int parity) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  LaguerreExpansion e{LaguerreParam(d)};
  for (int k = 0; k <= n; ++k) {
    if (parity == 0 || ParitySignature(parity).admits(k)) e.set(k, Scalar(coeff(rng)));
  }
  return e;
}

TEST(ParitySignature, Admits) {
  EXPECT_TRUE(ParitySignature::plus().admits(0));
  EXPECT_FALSE(ParitySignature::plus().admits(3));
  EXPECT_TRUE(ParitySignature::minus().admits(1));
  EXPECT_THROW(ParitySignature(0), std::invalid_argument);
  EXPECT_THROW(ParitySignature(2), std::invalid_argument);
}

TEST(LaguerreExpansion, DegreeIgnoresZeroEntries) {
  LaguerreExpansion e = make(3, {{0, Scalar(1)}, {4, Scalar(0)}});
  EXPECT_EQ(e.degree(), 0);
  e.set(0, Scalar(0));
  EXPECT_TRUE(e.is_zero());
}

TEST(ToPolynomial, Examples) {
  EXPECT_EQ(to_exact_polynomial(make(5, {{0, Scalar(1)}})), (Polynomial<Rational>{1}));
  EXPECT_EQ(to_exact_polynomial(make(2, {{1, Scalar(1)}})), (Polynomial<Rational>{1, -1}));
  EXPECT_EQ(to_exact_polynomial(make(2, {{0, Scalar(-1)}, {2, Scalar(1)}})),
            (Polynomial<Rational>{0, -2, Rational(1, 2)}));
  const Polynomial<Scalar> p = to_polynomial(make(2, {{0, Scalar(-1)}, {2, Scalar(1)}}));
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coefficient(1), Scalar(-2));
}

TEST(ToPolynomial, RoundTripReproducesCoefficients) {
  std::mt19937_64 rng(11);
  const Scalar tol = precision_tolerance(2);
  for (int d : {1, 2, 3, 12, 24, 100}) {
    for (int n : {0, 1, 5, 12, 21}) {
      const LaguerreExpansion e = random_expansion(rng, d, n, 0);
      const LaguerreExpansion back = from_polynomial(to_polynomial(e), e.param());
      Scalar scale(0);
      for (const auto& [k, c] : e.coeffs()) scale = max(scale, abs(c));
      for (int k = 0; k <= n; ++k) {
        EXPECT_LE(abs(back.coefficient(k) - e.coefficient(k)), tol * scale) << "d " << d << " n " << n << " k " << k;
      }
      EXPECT_LE(back.degree(), n);
    }
  }
}

TEST(Fourier, Examples) {
  EXPECT_EQ(fourier(make(2, {{0, Scalar(1)}})).coefficient(0), Scalar(1));
  EXPECT_EQ(fourier(make(2, {{1, Scalar(1)}})).coefficient(1), Scalar(-1));
  const LaguerreExpansion e = make(4, {{0, Scalar(1)}, {1, Scalar(2)}, {2, Scalar(3)}});
  const LaguerreExpansion twice = fourier(fourier(e));
  for (int k = 0; k <= 2; ++k) EXPECT_EQ(twice.coefficient(k), e.coefficient(k));
}

TEST(Fourier, EigenfunctionIdentityIsExact) {
  std::mt19937_64 rng(3);
  for (int s : {1, -1}) {
    for (int trial = 0; trial < 20; ++trial) {
      const LaguerreExpansion e = random_expansion(rng, 1 + trial * 5, 15, s);
      const LaguerreExpansion f = fourier(e);
      for (const auto& [k, c] : e.coeffs()) EXPECT_EQ(f.coefficient(k), Scalar(s) * c);
    }
  }
}

TEST(ValueAtZero, Examples) {
  EXPECT_EQ(value_at_zero(make(3, {{0, Scalar(1)}})), Scalar(1));
  EXPECT_EQ(value_at_zero(make(7, {{1, Scalar(1)}})), Scalar::parse("3.5"));
  EXPECT_EQ(value_at_zero(make(12, {{0, Scalar(-21)}, {2, Scalar(1)}})), Scalar(0));
}

TEST(HatValueAtZero, Examples) {
  EXPECT_EQ(hat_value_at_zero(make(3, {{0, Scalar(1)}})), Scalar(1));
  EXPECT_EQ(hat_value_at_zero(make(7, {{1, Scalar(1)}})), Scalar::parse("-3.5"));
  EXPECT_EQ(hat_value_at_zero(make(12, {{0, Scalar(-21)}, {2, Scalar(1)}})), Scalar(0));
}

TEST(HatValueAtZero, EqualsValueOfFourierTransform) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const LaguerreExpansion e = random_expansion(rng, 2 + trial, 10, 0);
    EXPECT_EQ(hat_value_at_zero(e), value_at_zero(fourier(e)));
  }
}

TEST(HatValueAtZero, AgreesWithMomentIntegral) {
  std::mt19937_64 rng(21);
  const Scalar tol = precision_tolerance(4);
  for (int d : {1, 2, 3, 8, 12, 24, 100}) {
    for (int n : {1, 4, 9, 16}) {
      const LaguerreExpansion e = random_expansion(rng, d, n, 0);
      Scalar scale(0);
      for (const auto& [k, c] : e.coeffs()) scale += abs(c) * laguerre_at_zero(k, e.param());
      EXPECT_LE(abs(hat_value_at_zero(e) - hat_value_at_zero_by_moments(e)), tol * max(Scalar(1), scale))
          << "d " << d << " n " << n;
    }
  }
}

TEST(EvalRadial, Examples) {
  const LaguerreExpansion gaussian = make(3, {{0, Scalar(1)}});
  EXPECT_EQ(eval_radial(gaussian, Scalar(0)), Scalar(1));
  EXPECT_TRUE(near(eval_radial(gaussian, Scalar(1)), "0.04321391826377224977441773717172801127573", "1e-40"));
  const LaguerreExpansion witness = make(2, {{0, Scalar(-1)}, {2, Scalar(1)}});
  EXPECT_TRUE(near(eval_radial(witness, sqrt(Scalar(2) / pi())), Scalar(0), "1e-70"));
}

TEST(EvalRadial, MatchesPolynomialTimesGaussian) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> radius(0.0, 4.0);
  const LaguerreExpansion e = random_expansion(rng, 8, 12, -1);
  const Polynomial<Scalar> p = to_polynomial(e);
  for (int i = 0; i < 100; ++i) {
    const Scalar r(radius(rng));
    const Scalar r2 = r * r;
    const Scalar expected = p(ldexp(pi() * r2, 1)) * exp(-(pi() * r2));
    const Scalar direct = eval_radial(e, r);
    EXPECT_LE(abs(direct - expected), precision_tolerance(4) * max(Scalar(1), abs(expected))) << "r " << r.to_double();
  }
}

TEST(EvalP, MatchesMonomialForm) {
  const LaguerreExpansion e = make(5, {{1, Scalar(2)}, {3, Scalar(-1)}, {7, Scalar::parse("0.25")}});
  const Polynomial<Scalar> p = to_polynomial(e);
  for (int t = 0; t <= 40; t += 5) {
    EXPECT_LE(abs(eval_p(e, Scalar(t)) - p(Scalar(t))), precision_tolerance(2) * max(Scalar(1), abs(p(Scalar(t)))));
  }
}

TEST(ExpansionJson, RoundTripsExactly) {
  std::mt19937_64 rng(4);
  const LaguerreExpansion e = random_expansion(rng, 12, 9, 1);
  const auto j = to_json(e);
  EXPECT_EQ(j["d"], 12);
  const LaguerreExpansion back = expansion_from_json(j);
  EXPECT_EQ(back.param(), e.param());
  for (const auto& [k, c] : e.coeffs()) EXPECT_EQ(back.coefficient(k), c);
}

TEST(ExpansionJson, RejectsMalformedInput) {
  EXPECT_THROW(expansion_from_json(nlohmann::ordered_json::parse(R"({"coeffs": {}})")), std::invalid_argument);
  EXPECT_THROW(expansion_from_json(nlohmann::ordered_json::parse(R"({"d": 2, "coeffs": {"x": "1"}})")),
               std::invalid_argument);
  EXPECT_THROW(expansion_from_json(nlohmann::ordered_json::parse(R"({"d": 2, "coeffs": {"1": "one"}})")),
               std::invalid_argument);
}

}  // namespace
}  // namespace sul
