#include "sul/scalar.hpp"

#include <stdexcept>
#include <string>

namespace sul {

namespace {

thread_local int g_working_bits = kDefaultBits;

}  // namespace

int working_bits() { return g_working_bits; }

void set_working_bits(int bits) {
  if (bits < 16) throw std::invalid_argument("precision must be at least 16 bits");
  g_working_bits = bits;
}

PrecisionScope::PrecisionScope(int bits) : saved_(g_working_bits) {
  set_working_bits(bits);
}

PrecisionScope::~PrecisionScope() { g_working_bits = saved_; }

Scalar::Scalar() {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_zero(value_, 1);
}

Scalar::Scalar(long value) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Scalar::Scalar(double value) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Scalar::Scalar(const Rational& value, mpfr_rnd_t rnd) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

Scalar::Scalar(const Scalar& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Scalar::~Scalar() { mpfr_clear(value_); }

Scalar Scalar::parse(std::string_view text) {
  std::string buffer(text);
  Scalar out;
  char* end = nullptr;
  if (!buffer.empty()) mpfr_strtofr(out.value_, buffer.c_str(), &end, 10, MPFR_RNDN);
  if (buffer.empty() || end == buffer.c_str() || *end != '\0') {
    throw std::invalid_argument("not a decimal number: '" + buffer + "'");
  }
  if (!out.is_finite()) throw std::invalid_argument("non-finite number: '" + buffer + "'");
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out;
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

Rational Scalar::to_rational() const {
  if (!is_finite()) throw std::domain_error("cannot convert non-finite scalar to rational");
  Rational out;
  if (is_zero()) return out;
  mpz_class mantissa;
  const mpfr_exp_t exponent = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  out = mantissa;
  if (exponent > 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  } else if (exponent < 0) {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  out.canonicalize();
  return out;
}

std::string Scalar::to_string(int digits, mpfr_rnd_t rnd) const {
  if (digits < 1) digits = 1;
  char* raw = nullptr;
  const char* format = "%.*RNe";
  switch (rnd) {
    case MPFR_RNDU: format = "%.*RUe"; break;
    case MPFR_RNDD: format = "%.*RDe"; break;
    case MPFR_RNDZ: format = "%.*RZe"; break;
    default: break;
  }
  if (mpfr_asprintf(&raw, format, digits - 1, value_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

std::string Scalar::to_exact_string() const {
  const auto digits = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_)));
  return to_string(digits);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar out;
  mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar out;
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar out;
  mpfr_div(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

int compare(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.get(), b.get()); }

Scalar abs(const Scalar& x) {
  Scalar out;
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar sqrt(const Scalar& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of negative scalar");
  Scalar out;
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar exp(const Scalar& x) {
  Scalar out;
  mpfr_exp(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar cos(const Scalar& x) {
  Scalar out;
  mpfr_cos(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar pow(const Scalar& x, unsigned long power) {
  Scalar out;
  mpfr_pow_ui(out.get(), x.get(), power, MPFR_RNDN);
  return out;
}

Scalar ldexp(const Scalar& x, long exponent) {
  Scalar out;
  mpfr_mul_2si(out.get(), x.get(), exponent, MPFR_RNDN);
  return out;
}

Scalar pi() {
  Scalar out;
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

Scalar precision_tolerance(int divisor) {
  return ldexp(Scalar(1), -static_cast<long>(working_bits() / divisor));
}

Scalar to_scalar(const Rational& q, mpfr_rnd_t rnd) { return Scalar(q, rnd); }

}  // namespace sul
