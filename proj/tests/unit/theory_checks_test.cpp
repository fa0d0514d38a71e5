#include <atomic>

#include <gtest/gtest.h>

#include "sul/theory_checks.hpp"
#include "support.hpp"

namespace sul {
namespace {

using testing::near;
using testing::show;

RhoSolver exact_solver() {
  return [](int d, ParitySignature s, int n) { return solve_rho(d, s, n); };
}

TEST(QuadratureIdentity, Examples) {
  const Scalar tol = precision_tolerance(4);
  const LaguerreExpansion d2(LaguerreParam(2), {{0, Scalar(-1)}, {2, Scalar(1)}});
  EXPECT_LE(quadrature_identity_check(d2), tol);
  const LaguerreExpansion d12(LaguerreParam(12), {{0, Scalar(-21)}, {2, Scalar(1)}});
  EXPECT_LE(quadrature_identity_check(d12), tol);
  const LaguerreExpansion gaussian(LaguerreParam(5), {{0, Scalar(1)}});
  EXPECT_THROW(quadrature_identity_check(gaussian), PreconditionViolated);
}

TEST(QuadratureIdentity, HoldsForSolvedWitnesses) {
  for (int d : {1, 3, 8}) {
    for (int s : {1, -1}) {
      const RhoResult r = solve_rho(d, ParitySignature(s), 7);
      EXPECT_LE(quadrature_identity_check(r.witness), precision_tolerance(4)) << d << ' ' << s;
    }
  }
}

TEST(TheoremMainCheck, Examples) {
  const RhoResult r2 = solve_rho(2, ParitySignature::plus(), 2);
  EXPECT_TRUE(theorem_main_check(r2));
  const RhoResult r12 = solve_rho(12, ParitySignature::plus(), 2);
  EXPECT_TRUE(near(r12.T, Scalar(14), "1e-20")) << show(r12.T);
  EXPECT_TRUE(near(r12.lower_bound_T, Scalar(2) * (Scalar(7) - sqrt(Scalar(7))), "1e-60"));
  EXPECT_TRUE(theorem_main_check(r12));
}

TEST(TheoremMainCheck, RejectsSyntheticViolation) {
  RhoResult fake;
  fake.d = 2;
  fake.s = ParitySignature::minus();
  fake.n = 3;
  fake.m = 2;
  fake.witness = LaguerreExpansion(LaguerreParam(2), {{1, Scalar(1)}});
  EXPECT_FALSE(theorem_main_check(fake));
}

TEST(LambdaLowerBound, Examples) {
  for (int d : {1, 4, 9, 100}) EXPECT_EQ(lambda_lower_bound(1, d), Scalar(d) / Scalar(2) - Scalar(2));
  EXPECT_TRUE(near(lambda_lower_bound(2, 2), "-0.2360679774997896964091736687312762354406", "1e-40"));
  EXPECT_TRUE(near(lambda_lower_bound(17, 1024), "359.3454329454342156462066767502293483378", "1e-36"));
}

TEST(LambdaLowerBound, StrictlyBelowSmallestRoot) {
  for (int d = 1; d <= 400; ++d) {
    for (int m = 1; m <= 50; ++m) {
      const Scalar lambda = smallest_root(m, LaguerreParam(d));
      ASSERT_GT(lambda, lambda_lower_bound(m, d)) << "m " << m << " d " << d;
    }
  }
}

TEST(LinearDegreeBound, Examples) {
  EXPECT_TRUE(near(linear_degree_threshold(), "0.05185402479061949057671418628245222255911", "1e-40"));
  EXPECT_TRUE(near(linear_degree_rho_bound(linear_degree_threshold()), Scalar(1) / pi(), "1e-20"));
  EXPECT_TRUE(near(linear_degree_rho_bound(Scalar(1)), "0.1652473031463236090081333916263907173682", "1e-40"));
  EXPECT_TRUE(near(linear_degree_rho_bound(Scalar::parse("1e-60")), "0.3989422804014326779399460599343818684759",
                   "1e-28"));
  EXPECT_THROW(linear_degree_rho_bound(Scalar(0)), std::invalid_argument);
  EXPECT_THROW(linear_degree_rho_bound(Scalar(-1)), std::invalid_argument);
}

TEST(LinearDegreeBound, DecreasesInC) {
  Scalar previous = linear_degree_rho_bound(Scalar::parse("0.001"));
  for (const char* c : {"0.01", "0.05", "0.1", "0.5", "1", "4"}) {
    const Scalar current = linear_degree_rho_bound(Scalar::parse(c));
    EXPECT_LT(current, previous) << c;
    previous = current;
  }
}

TEST(LinearDegreeBound, MatchesObservedLowerRatio) {
  const int d = 400;
  for (const char* c : {"0.25", "1"}) {
    const DegreePolicy policy = DegreePolicy::parse(std::string("linear:") + c);
    const int m = policy.degree(d) / 2 + 1;
    const Scalar lower_ratio = sqrt(ldexp(smallest_root(m, LaguerreParam(d)), 1) / Scalar(d));
    const Scalar predicted = linear_degree_rho_bound(Scalar::parse(c)) * sqrt(ldexp(pi(), 1));
    EXPECT_GT(lower_ratio, predicted - Scalar::parse("0.01")) << c << ": " << show(lower_ratio) << " vs " << show(predicted);
  }
}

TEST(DegreePolicy, ParsesAndEvaluates) {
  EXPECT_EQ(DegreePolicy::parse("fixed:3").degree(1000), 3);
  EXPECT_EQ(DegreePolicy::parse("sqrt").degree(1024), 32);
  EXPECT_EQ(DegreePolicy::parse("sqrt").degree(1023), 31);
  EXPECT_EQ(DegreePolicy::parse("linear:0.5").degree(101), 50);
  EXPECT_EQ(DegreePolicy::parse("linear:0.1").degree(30), 3);
  EXPECT_EQ(DegreePolicy::linear(Rational(1, 3)).degree(9), 3);
  EXPECT_EQ(DegreePolicy::parse("linear:0.5").to_string(), "linear:1/2");
  EXPECT_EQ(DegreePolicy::square_root().to_string(), "sqrt");
  for (const char* bad : {"", "fixed", "fixed:x", "fixed:-1", "linear:", "linear:-2", "linear:abc", "cube"}) {
    EXPECT_THROW(DegreePolicy::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(AsymptoticScan, Examples) {
  const auto small = asymptotic_scan({2}, DegreePolicy::fixed(2), ParitySignature::plus(), exact_solver(), 256, 1);
  ASSERT_EQ(small.size(), 1u);
  EXPECT_TRUE(near(small[0].upper_ratio, sqrt(Scalar(2)), "1e-20")) << show(small[0].upper_ratio);

  const auto large = asymptotic_scan({1024}, DegreePolicy::fixed(2), ParitySignature::plus(), exact_solver(), 256, 1);
  EXPECT_TRUE(near(large[0].upper_ratio, sqrt(Scalar(1026) / Scalar(1024)), "1e-20"));
  EXPECT_TRUE(near(large[0].upper_ratio, "1.000976086127935426013580371774597871214", "1e-20"));
}

TEST(AsymptoticScan, SquareRootPolicyLowerRatio) {
  std::atomic<int> calls{0};
  RhoSolver stub = [&calls](int d, ParitySignature s, int n) {
    ++calls;
    RhoResult r;
    r.d = d;
    r.s = s;
    r.n = n;
    r.m = n / 2 + 1;
    r.T = ldexp(smallest_root(r.m, LaguerreParam(d)), 1);
    r.rho = sqrt(r.T / ldexp(pi(), 1));
    return r;
  };
  for (int s : {1, -1}) {
    const auto rows = asymptotic_scan({1024}, DegreePolicy::square_root(), ParitySignature(s), stub, 256, 1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].n, 32);
    EXPECT_EQ(rows[0].m, 17);
    EXPECT_GE(rows[0].lower_ratio, Scalar::parse("0.83"));
    EXPECT_GE(rows[0].lower_ratio, sqrt(ldexp(lambda_lower_bound(17, 1024), 1) / Scalar(1024)));
  }
  EXPECT_EQ(calls.load(), 2);
}

TEST(AsymptoticScan, RejectsInfeasiblePolicyBeforeSolving) {
  std::atomic<int> calls{0};
  RhoSolver counting = [&calls](int d, ParitySignature s, int n) {
    ++calls;
    return solve_rho(d, s, n);
  };
  EXPECT_THROW(asymptotic_scan({8, 2}, DegreePolicy::fixed(2), ParitySignature::minus(), counting, 256, 2), Infeasible);
  EXPECT_THROW(asymptotic_scan({4, 9}, DegreePolicy::square_root(), ParitySignature::minus(), counting, 256, 2),
               Infeasible);
  EXPECT_EQ(calls.load(), 0);
}

TEST(AsymptoticScan, SublinearTrendAndSandwich) {
  const auto rows =
      asymptotic_scan({64, 256, 1024}, DegreePolicy::fixed(3), ParitySignature::minus(), exact_solver(), 256, 3);
  ASSERT_EQ(rows.size(), 3u);
  const char* oracle_upper[] = {"1.045036210704047687446", "1.011593233239134788540", "1.002921648916012754350"};
  const Scalar slack = Scalar(1) + ldexp(Scalar(1), -20);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].d, (i == 0) ? 64 : (i == 1) ? 256 : 1024);
    EXPECT_LE(rows[i].lower_ratio, rows[i].upper_ratio * slack);
    EXPECT_LE(rows[i].lower_ratio, Scalar(1));
    EXPECT_GE(rows[i].upper_ratio, Scalar(1));
    EXPECT_TRUE(near(rows[i].upper_ratio, oracle_upper[i], "1e-9")) << show(rows[i].upper_ratio);
    if (i > 0) {
      EXPECT_LT(rows[i].upper_ratio, rows[i - 1].upper_ratio);
      EXPECT_GT(rows[i].lower_ratio, rows[i - 1].lower_ratio);
    }
  }
}

TEST(AsymptoticScan, ParallelMatchesSerial) {
  const std::vector<int> dims{3, 5, 7, 9, 11, 13};
  const auto serial = asymptotic_scan(dims, DegreePolicy::fixed(4), ParitySignature::plus(), exact_solver(), 256, 1);
  const auto parallel = asymptotic_scan(dims, DegreePolicy::fixed(4), ParitySignature::plus(), exact_solver(), 256, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].d, dims[i]);
    EXPECT_EQ(parallel[i].d, dims[i]);
    EXPECT_EQ(to_json(serial[i].result).dump(), to_json(parallel[i].result).dump());
  }
}

TEST(AsymptoticScan, PropagatesSolverErrors) {
  RhoSolver failing = [](int, ParitySignature, int) -> RhoResult { throw PrecisionExhausted("no certificate"); };
  EXPECT_THROW(asymptotic_scan({5, 6}, DegreePolicy::fixed(3), ParitySignature::plus(), failing, 256, 2),
               PrecisionExhausted);
}

}  // namespace
}  // namespace sul
