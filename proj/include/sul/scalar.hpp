#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>

namespace sul {

using Rational = mpq_class;

inline constexpr int kDefaultBits = 256;

/// Precision (in bits) given to scalars created on the calling thread.
int working_bits();
void set_working_bits(int bits);

/// Sets the working precision for the lifetime of the scope and restores the
/// previous value on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

/// Binary floating-point real backed by MPFR. Each value carries its own
/// precision; new values (including results of the free arithmetic operators)
/// are created at working_bits(). All operations round to nearest.
class Scalar {
 public:
  Scalar();
  Scalar(long value);  // NOLINT: integer literals convert implicitly
  Scalar(int value) : Scalar(static_cast<long>(value)) {}  // NOLINT
  explicit Scalar(double value);
  explicit Scalar(const Rational& value, mpfr_rnd_t rnd = MPFR_RNDN);

  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  /// Parses a decimal string ("1.5", "-2.25e-3"). Throws std::invalid_argument.
  static Scalar parse(std::string_view text);

  int bits() const { return static_cast<int>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Exact dyadic rational equal to this value.
  Rational to_rational() const;

  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  /// Shortest decimal string that reads back to the same value at this
  /// precision.
  std::string to_exact_string() const;

 private:
  mpfr_t value_;
};

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);

int compare(const Scalar& a, const Scalar& b);
inline bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
inline bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
inline bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

Scalar abs(const Scalar& x);
Scalar sqrt(const Scalar& x);
Scalar exp(const Scalar& x);
Scalar cos(const Scalar& x);
Scalar pow(const Scalar& x, unsigned long power);
Scalar ldexp(const Scalar& x, long exponent);
Scalar pi();
const Scalar& max(const Scalar& a, const Scalar& b);
const Scalar& min(const Scalar& a, const Scalar& b);

/// 2^(-working_bits() / divisor): the family of relative tolerances used
/// throughout (divisor 2 for pivots, 4 for residual checks).
Scalar precision_tolerance(int divisor);

/// Rounds a rational to a scalar in the given direction.
Scalar to_scalar(const Rational& q, mpfr_rnd_t rnd = MPFR_RNDN);

}  // namespace sul
