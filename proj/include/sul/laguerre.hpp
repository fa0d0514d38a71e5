#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "sul/polynomial.hpp"
#include "sul/scalar.hpp"

namespace sul {

/// Generalized Laguerre parameter alpha = d/2 - 1 for ambient dimension d.
/// alpha is a half-integer and is kept as the integer twice_alpha = d - 2.
class LaguerreParam {
 public:
  explicit LaguerreParam(int d);

  int d() const { return d_; }
  int twice_alpha() const { return d_ - 2; }
  Scalar alpha() const;
  Rational alpha_exact() const {
    Rational alpha(d_ - 2, 2);
    alpha.canonicalize();
    return alpha;
  }

  friend bool operator==(const LaguerreParam&, const LaguerreParam&) = default;

 private:
  int d_;
};

/// L_k^alpha in the monomial basis via
/// k L_k = (2k - 1 + alpha - t) L_{k-1} - (k - 1 + alpha) L_{k-2}.
Polynomial<Scalar> laguerre_poly(int k, const LaguerreParam& param);
Polynomial<Rational> laguerre_poly_exact(int k, const LaguerreParam& param);

/// Values L_0^alpha(t), ..., L_{k_max}^alpha(t) by the three-term recurrence.
std::vector<Scalar> laguerre_values(int k_max, const LaguerreParam& param, const Scalar& t);

/// L_k^alpha(0) = binomial(k + alpha, k).
Scalar laguerre_at_zero(int k, const LaguerreParam& param);
Rational laguerre_at_zero_exact(int k, const LaguerreParam& param);

/// Number of roots of L_m^alpha strictly below x (the inertia of J - x for
/// the Jacobi matrix J of the monic Laguerre recurrence).
int jacobi_count_below(int m, const LaguerreParam& param, const Scalar& x);

/// Least root of L_m^alpha: Jacobi eigenvalue bisection, Newton polish on
/// L_m^alpha, then an inertia check bracketing it. Throws std::logic_error
/// if the final check fails.
Scalar smallest_root(int m, const LaguerreParam& param);

/// All m roots of L_m^alpha, ascending.
std::vector<Scalar> laguerre_roots(int m, const LaguerreParam& param);

/// integral_0^inf u^j e^{-u} u^alpha du = Gamma(alpha + j + 1).
Scalar moment(int j, const LaguerreParam& param);

class MomentMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// m-point Gauss rule for e^{-u} u^alpha du on [0, inf).
struct QuadratureRule {
  LaguerreParam param;
  int m;
  std::vector<Scalar> nodes;    // ascending roots of L_m^alpha
  std::vector<Scalar> weights;  // all positive
  int bits;
};

/// Nodes are the roots of L_m^alpha; weights follow Golub-Welsch,
/// w_i = Gamma(alpha + 1) v_{i,1}^2 where v_i is the normalized eigenvector,
/// whose components are the orthonormal polynomials at u_i. The rule is
/// checked against the moments j = 0..2m-1 and throws MomentMismatch when a
/// relative residual exceeds 2^(-bits/4).
QuadratureRule gauss_laguerre_rule(int m, const LaguerreParam& param);

/// Memoized gauss_laguerre_rule keyed by (m, d, working bits). Safe for
/// concurrent callers.
std::shared_ptr<const QuadratureRule> cached_rule(int m, const LaguerreParam& param);

/// max_j |sum_i w_i u_i^j - Gamma(alpha+1+j)| / Gamma(alpha+1+j) for j < 2m.
Scalar max_moment_residual(const QuadratureRule& rule);

}  // namespace sul
