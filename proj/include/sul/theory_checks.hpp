#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sul/eigenbasis.hpp"
#include "sul/rho_optimizer.hpp"

namespace sul {

class PreconditionViolated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |sum_i w_i p(2 u_i)| / (sum_i w_i |p(2 u_i)| + 1) over the m-point rule,
/// m = floor(deg p / 2) + 1. Requires f^(0) = 0 to relative 2^(-bits/4),
/// otherwise throws PreconditionViolated.
Scalar quadrature_identity_check(const LaguerreExpansion& e);

/// True iff the witness's last sign change is at least
/// 2 smallest_root(floor(n/2) + 1, d) - 2^(-bits/4).
bool theorem_main_check(const RhoResult& r);

/// 2m + d/2 - 3 - sqrt(1 + 4(m - 1)(m + d/2 - 2)). Strict lower bound on the
/// smallest root of L_m^(d/2 - 1).
Scalar lambda_lower_bound(int m, int d);

/// sqrt((c + 1/2 - sqrt(c(c + 1))) / pi): the sqrt(d) coefficient of the
/// lower bound on rho when n grows like c d. Requires c > 0.
Scalar linear_degree_rho_bound(const Scalar& c);

/// (pi - 2)^2 / (8 pi), where linear_degree_rho_bound equals 1/pi.
Scalar linear_degree_threshold();

class DegreePolicy {
 public:
  enum class Kind { kFixed, kSqrt, kLinear };

  static DegreePolicy fixed(int n);
  static DegreePolicy square_root();
  /// The coefficient is kept as an exact rational so n(d) = floor(c d) is exact.
  static DegreePolicy linear(Rational c);
  /// "fixed:N", "sqrt" or "linear:C". Throws std::invalid_argument.
  static DegreePolicy parse(const std::string& text);

  Kind kind() const { return kind_; }
  int degree(int d) const;
  std::string to_string() const;

 private:
  DegreePolicy(Kind kind, int n, Rational c) : kind_(kind), n_(n), c_(std::move(c)) {}
  Kind kind_;
  int n_;
  Rational c_;
};

struct AsymptoticRow {
  int d = 0;
  int s = 1;
  int n = 0;
  int m = 0;
  Scalar lambda;
  Scalar lower_ratio;  // sqrt(2 lambda / d)
  Scalar upper_ratio;  // rho / sqrt(d / (2 pi))
  RhoResult result;
};

using RhoSolver = std::function<RhoResult(int d, ParitySignature s, int n)>;

/// One row per entry of dims, in input order, computed on up to `jobs`
/// threads at `bits` of precision. Throws Infeasible before any work if a
/// policy degree is below min_feasible_degree(s); solver errors propagate.
std::vector<AsymptoticRow> asymptotic_scan(const std::vector<int>& dims, const DegreePolicy& policy,
                                           ParitySignature s, const RhoSolver& solver, int bits, int jobs);

}  // namespace sul
