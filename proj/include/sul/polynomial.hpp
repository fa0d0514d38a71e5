#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sul/scalar.hpp"

namespace sul {

template <typename F>
struct FieldTraits;

template <>
struct FieldTraits<Scalar> {
  static constexpr bool kExact = false;
  static int sign(const Scalar& x) { return x.sign(); }
  static Scalar abs(const Scalar& x) { return sul::abs(x); }
  /// Relative tolerance below which a computed coefficient counts as zero.
  static Scalar default_tolerance() { return precision_tolerance(2); }
};

template <>
struct FieldTraits<Rational> {
  static constexpr bool kExact = true;
  static int sign(const Rational& x) { return sgn(x); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static Rational default_tolerance() { return Rational(0); }
};

/// Single-variable polynomial; coefficient j multiplies t^j. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has degree -1.
template <typename F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
  Polynomial(std::initializer_list<F> coefficients) : coeffs_(coefficients) { trim(); }

  static Polynomial constant(F c) { return Polynomial(std::vector<F>{std::move(c)}); }
  static Polynomial monomial(const F& c, int power) {
    std::vector<F> coeffs(static_cast<std::size_t>(power) + 1, F(0));
    coeffs.back() = c;
    return Polynomial(std::move(coeffs));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<F>& coefficients() const { return coeffs_; }
  F coefficient(int j) const {
    return (j < 0 || j > degree()) ? F(0) : coeffs_[static_cast<std::size_t>(j)];
  }
  const F& leading() const { return coeffs_.back(); }

  /// Horner evaluation.
  F operator()(const F& t) const {
    if (coeffs_.empty()) return F(0);
    F acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  /// Term-by-term summation; reference path for checking Horner.
  F eval_naive(const F& t) const {
    F sum(0);
    F power(1);
    for (const F& c : coeffs_) {
      F term = c * power;
      sum += term;
      power *= t;
    }
    return sum;
  }

  Polynomial derivative() const {
    std::vector<F> out;
    for (std::size_t j = 1; j < coeffs_.size(); ++j) {
      F c = coeffs_[j] * F(static_cast<long>(j));
      out.push_back(std::move(c));
    }
    return Polynomial(std::move(out));
  }

  /// Copy with every coefficient of magnitude <= abs_tol set to zero.
  Polynomial chopped(const F& abs_tol) const {
    std::vector<F> out = coeffs_;
    for (F& c : out) {
      if (FieldTraits<F>::abs(c) <= abs_tol) c = F(0);
    }
    return Polynomial(std::move(out));
  }

  /// Largest coefficient magnitude.
  F max_norm() const {
    F out(0);
    for (const F& c : coeffs_) {
      F a = FieldTraits<F>::abs(c);
      if (out < a) out = a;
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), F(0));
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] += rhs.coeffs_[j];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), F(0));
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] -= rhs.coeffs_[j];
    trim();
    return *this;
  }
  Polynomial& operator*=(const F& factor) {
    for (F& c : coeffs_) c *= factor;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const F& factor) { return a *= factor; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> out(a.coeffs_.size() + b.coeffs_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        F term = a.coeffs_[i] * b.coeffs_[j];
        out[i + j] += term;
      }
    }
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && FieldTraits<F>::sign(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<F> coeffs_;
};

template <typename F>
struct DivMod {
  Polynomial<F> quotient;
  Polynomial<F> remainder;
};

/// Long division a = q*b + r with deg r < deg b. Throws std::domain_error
/// when b is zero.
template <typename F>
DivMod<F> divmod(const Polynomial<F>& a, const Polynomial<F>& b);

/// Scales p so its leading coefficient is 1.
template <typename F>
Polynomial<F> monic(const Polynomial<F>& p);

/// Monic gcd by the Euclidean algorithm, normalizing every remainder to
/// monic form. Remainder coefficients at or below rel_tol times the larger
/// operand norm are treated as zero (rel_tol = 0 for exact fields).
template <typename F>
Polynomial<F> gcd(const Polynomial<F>& a, const Polynomial<F>& b,
                  const F& rel_tol = FieldTraits<F>::default_tolerance());

template <typename F>
bool is_squarefree(const Polynomial<F>& p, const F& rel_tol = FieldTraits<F>::default_tolerance());

/// Monic squarefree part p / gcd(p, p').
template <typename F>
Polynomial<F> squarefree_part(const Polynomial<F>& p,
                              const F& rel_tol = FieldTraits<F>::default_tolerance());

/// Yun's decomposition: returns monic squarefree, pairwise coprime f_1..f_k
/// with p = lc(p) * f_1 * f_2^2 * ... * f_k^k.
template <typename F>
std::vector<Polynomial<F>> squarefree_factors(
    const Polynomial<F>& p, const F& rel_tol = FieldTraits<F>::default_tolerance());

/// Product of the odd-multiplicity squarefree factors: its real roots are
/// exactly the points where p changes sign.
template <typename F>
Polynomial<F> odd_multiplicity_part(const Polynomial<F>& p,
                                    const F& rel_tol = FieldTraits<F>::default_tolerance());

/// Human-readable form, e.g. "1/2*t^2 - 2*t". Intended for diagnostics.
std::string to_string(const Polynomial<Rational>& p);

/// Exact dyadic conversion of every coefficient.
Polynomial<Rational> to_exact(const Polynomial<Scalar>& p);
Polynomial<Scalar> to_scalar(const Polynomial<Rational>& p);

}  // namespace sul
