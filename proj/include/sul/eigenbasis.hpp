#pragma once

#include <map>

#include <json.hpp>

#include "sul/laguerre.hpp"
#include "sul/polynomial.hpp"

namespace sul {

/// Fourier eigenvalue s of an eigenfunction f^ = s f; the basis element
/// L_k^alpha(2 pi |x|^2) e^{-pi |x|^2} has s = (-1)^k.
class ParitySignature {
 public:
  /// Throws std::invalid_argument unless s is +1 or -1.
  explicit ParitySignature(int s);
  static ParitySignature plus() { return ParitySignature(1); }
  static ParitySignature minus() { return ParitySignature(-1); }

  int value() const { return s_; }
  bool admits(int k) const { return (k % 2 == 0) == (s_ == 1); }

  friend bool operator==(const ParitySignature&, const ParitySignature&) = default;

 private:
  int s_;
};

/// Radial f(x) = p(2 pi |x|^2) e^{-pi |x|^2} with p = sum_k c_k L_k^alpha,
/// alpha = d/2 - 1. Coefficients are sparse; zero entries are allowed and
/// ignored by degree().
class LaguerreExpansion {
 public:
  explicit LaguerreExpansion(LaguerreParam param, std::map<int, Scalar> coeffs = {});

  const LaguerreParam& param() const { return param_; }
  const std::map<int, Scalar>& coeffs() const { return coeffs_; }
  Scalar coefficient(int k) const;
  void set(int k, Scalar c);

  /// Largest k with c_k != 0, or -1 for the zero expansion.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

 private:
  LaguerreParam param_;
  std::map<int, Scalar> coeffs_;
};

/// p in the monomial basis of t = 2 pi |x|^2.
Polynomial<Scalar> to_polynomial(const LaguerreExpansion& e);
/// Same, with every coefficient taken as its exact dyadic rational value.
Polynomial<Rational> to_exact_polynomial(const LaguerreExpansion& e);
/// Inverse of to_polynomial (triangular solve from the top degree).
LaguerreExpansion from_polynomial(const Polynomial<Scalar>& p, const LaguerreParam& param);

/// c_k -> (-1)^k c_k.
LaguerreExpansion fourier(const LaguerreExpansion& e);

/// f(0) = sum_k c_k L_k^alpha(0).
Scalar value_at_zero(const LaguerreExpansion& e);
/// f^(0) = sum_k (-1)^k c_k L_k^alpha(0).
Scalar hat_value_at_zero(const LaguerreExpansion& e);
/// f^(0) through the radial integral after u = pi r^2:
/// sum_j a_j 2^j Gamma(alpha + 1 + j) / Gamma(alpha + 1) for p = sum_j a_j t^j.
Scalar hat_value_at_zero_by_moments(const LaguerreExpansion& e);
/// p evaluated at t via the Laguerre recurrence.
Scalar eval_p(const LaguerreExpansion& e, const Scalar& t);
/// f at radius r >= 0: p(2 pi r^2) e^{-pi r^2}.
Scalar eval_radial(const LaguerreExpansion& e, const Scalar& r);

/// {"d": int, "coeffs": {"k": decimal-string}}; coefficients are written with
/// enough digits to read back exactly at their precision.
nlohmann::ordered_json to_json(const LaguerreExpansion& e);
/// Parses at the working precision. Throws std::invalid_argument on malformed
/// input.
LaguerreExpansion expansion_from_json(const nlohmann::ordered_json& j);

}  // namespace sul
