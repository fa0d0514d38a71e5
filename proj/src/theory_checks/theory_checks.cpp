#include "sul/theory_checks.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace sul {

Scalar quadrature_identity_check(const LaguerreExpansion& e) {
  Scalar scale(0);
  for (const auto& [k, c] : e.coeffs()) scale += abs(c * laguerre_at_zero(k, e.param()));
  if (abs(hat_value_at_zero(e)) > precision_tolerance(4) * max(scale, Scalar(1))) {
    throw PreconditionViolated("f^(0) != 0: the quadrature identity does not apply");
  }
  const int degree = std::max(e.degree(), 0);
  const auto rule = cached_rule(degree / 2 + 1, e.param());
  Scalar sum(0);
  Scalar mass(0);
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    Scalar term = rule->weights[i] * eval_p(e, ldexp(rule->nodes[i], 1));
    mass += abs(term);
    sum += term;
  }
  return abs(sum) / (mass + Scalar(1));
}

bool theorem_main_check(const RhoResult& r) {
  PrecisionScope scope(r.bits);
  Scalar last;
  try {
    last = refine_from_witness(r.witness);
  } catch (const NoSignChange&) {
    return false;
  }
  const Scalar two_lambda = ldexp(smallest_root(r.n / 2 + 1, r.witness.param()), 1);
  return last >= two_lambda - precision_tolerance(4);
}

Scalar lambda_lower_bound(int m, int d) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const Scalar half_d = ldexp(Scalar(d), -1);
  const Scalar inner = Scalar(1) + Scalar(4) * Scalar(m - 1) * (Scalar(m) + half_d - Scalar(2));
  return Scalar(2 * m) + half_d - Scalar(3) - sqrt(inner);
}

Scalar linear_degree_rho_bound(const Scalar& c) {
  if (!(c.sign() > 0)) throw std::invalid_argument("c must be positive");
  const Scalar inner = c + ldexp(Scalar(1), -1) - sqrt(c * (c + Scalar(1)));
  return sqrt(inner / pi());
}

Scalar linear_degree_threshold() {
  const Scalar gap = pi() - Scalar(2);
  return gap * gap / (Scalar(8) * pi());
}

namespace {

// Exact value of a decimal literal such as "0.05", "3" or "1.5e-2".
Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  std::string digits;
  long exponent = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a decimal number: " + text);
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw std::invalid_argument("not a decimal number: " + text);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a decimal number: " + text);
    }
    if (pos + 1 + used != text.size()) throw std::invalid_argument("not a decimal number: " + text);
    exponent += e;
  }
  if (exponent > 4096 || exponent < -4096) throw std::invalid_argument("exponent out of range: " + text);
  mpz_class numerator(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent >= 0 ? Rational(numerator * power) : Rational(numerator, power);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: " + text);
  }
  if (used != text.size()) throw std::invalid_argument("not an integer: " + text);
  return value;
}

}  // namespace

DegreePolicy DegreePolicy::fixed(int n) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  return DegreePolicy(Kind::kFixed, n, Rational(0));
}

DegreePolicy DegreePolicy::square_root() { return DegreePolicy(Kind::kSqrt, 0, Rational(0)); }

DegreePolicy DegreePolicy::linear(Rational c) {
  if (sgn(c) <= 0) throw std::invalid_argument("linear policy coefficient must be positive");
  return DegreePolicy(Kind::kLinear, 0, std::move(c));
}

DegreePolicy DegreePolicy::parse(const std::string& text) {
  if (text == "sqrt") return square_root();
  if (text.rfind("fixed:", 0) == 0) return fixed(parse_int(text.substr(6)));
  if (text.rfind("linear:", 0) == 0) return linear(parse_decimal(text.substr(7)));
  throw std::invalid_argument("unknown degree policy '" + text + "' (expected fixed:N, sqrt or linear:C)");
}

int DegreePolicy::degree(int d) const {
  switch (kind_) {
    case Kind::kFixed:
      return n_;
    case Kind::kSqrt: {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), mpz_class(d).get_mpz_t());
      return static_cast<int>(root.get_si());
    }
    case Kind::kLinear: {
      mpz_class floor_value;
      const Rational product = c_ * d;
      mpz_fdiv_q(floor_value.get_mpz_t(), product.get_num_mpz_t(), product.get_den_mpz_t());
      return static_cast<int>(floor_value.get_si());
    }
  }
  return 0;
}

std::string DegreePolicy::to_string() const {
  switch (kind_) {
    case Kind::kFixed:
      return "fixed:" + std::to_string(n_);
    case Kind::kSqrt:
      return "sqrt";
    case Kind::kLinear:
      return "linear:" + c_.get_str();
  }
  return {};
}

std::vector<AsymptoticRow> asymptotic_scan(const std::vector<int>& dims, const DegreePolicy& policy,
                                           ParitySignature s, const RhoSolver& solver, int bits, int jobs) {
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    const int n = policy.degree(d);
    if (n < min_feasible_degree(s)) {
      throw Infeasible("policy " + policy.to_string() + " gives degree " + std::to_string(n) + " at d = " +
                       std::to_string(d) + ", below the minimum " + std::to_string(min_feasible_degree(s)));
    }
  }

  std::vector<AsymptoticRow> rows(dims.size());
  std::vector<std::exception_ptr> errors(dims.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    PrecisionScope scope(bits);
    for (std::size_t i = next++; i < dims.size(); i = next++) {
      try {
        AsymptoticRow& row = rows[i];
        row.d = dims[i];
        row.s = s.value();
        row.n = policy.degree(row.d);
        row.m = row.n / 2 + 1;
        const LaguerreParam param(row.d);
        row.lambda = smallest_root(row.m, param);
        row.lower_ratio = sqrt(ldexp(row.lambda, 1) / Scalar(row.d));
        row.result = solver(row.d, s, row.n);
        PrecisionScope inner(std::max(bits, row.result.bits));
        row.upper_ratio = sqrt(row.result.T / Scalar(row.d));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int threads = std::clamp(jobs, 1, std::max(1, static_cast<int>(dims.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return rows;
}

}  // namespace sul
