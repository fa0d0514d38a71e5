#include "sul/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace sul {

template <typename F>
DivMod<F> divmod(const Polynomial<F>& a, const Polynomial<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const int da = a.degree();
  const int db = b.degree();
  if (da < db) return {Polynomial<F>{}, a};

  std::vector<F> rem = a.coefficients();
  std::vector<F> quot(static_cast<std::size_t>(da - db) + 1, F(0));
  const auto& bc = b.coefficients();
  const F& lead = b.leading();
  for (int i = da - db; i >= 0; --i) {
    F coef = rem[static_cast<std::size_t>(i + db)] / lead;
    for (int j = 0; j < db; ++j) {
      F term = coef * bc[static_cast<std::size_t>(j)];
      rem[static_cast<std::size_t>(i + j)] -= term;
    }
    // The top coefficient cancels by construction; store an exact zero.
    rem[static_cast<std::size_t>(i + db)] = F(0);
    quot[static_cast<std::size_t>(i)] = std::move(coef);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<F>(std::move(quot)), Polynomial<F>(std::move(rem))};
}

template <typename F>
Polynomial<F> monic(const Polynomial<F>& p) {
  if (p.is_zero()) return p;
  F inv = F(1) / p.leading();
  std::vector<F> coeffs = p.coefficients();
  for (F& c : coeffs) c *= inv;
  coeffs.back() = F(1);
  return Polynomial<F>(std::move(coeffs));
}

template <typename F>
Polynomial<F> gcd(const Polynomial<F>& a, const Polynomial<F>& b, const F& rel_tol) {
  Polynomial<F> x = monic(a);
  Polynomial<F> y = monic(b);
  if (x.is_zero()) return y;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    F scale = x.max_norm();
    F ys = y.max_norm();
    if (scale < ys) scale = ys;
    F tol = rel_tol * scale;
    Polynomial<F> r = divmod(x, y).remainder.chopped(tol);
    x = std::move(y);
    y = monic(r);
  }
  return x;
}

template <typename F>
bool is_squarefree(const Polynomial<F>& p, const F& rel_tol) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative(), rel_tol).degree() <= 0;
}

template <typename F>
Polynomial<F> squarefree_part(const Polynomial<F>& p, const F& rel_tol) {
  if (p.degree() <= 0) return monic(p);
  const Polynomial<F> g = gcd(p, p.derivative(), rel_tol);
  return monic(divmod(p, g).quotient);
}

template <typename F>
std::vector<Polynomial<F>> squarefree_factors(const Polynomial<F>& p, const F& rel_tol) {
  std::vector<Polynomial<F>> factors;
  if (p.degree() <= 0) return factors;

  const Polynomial<F> dp = p.derivative();
  const Polynomial<F> a0 = gcd(p, dp, rel_tol);
  Polynomial<F> b = divmod(p, a0).quotient;
  Polynomial<F> c = divmod(dp, a0).quotient;
  auto residual = [&rel_tol](const Polynomial<F>& lhs, const Polynomial<F>& rhs) {
    F scale = lhs.max_norm();
    F rs = rhs.max_norm();
    if (scale < rs) scale = rs;
    F tol = rel_tol * scale;
    return (lhs - rhs).chopped(tol);
  };
  Polynomial<F> d = residual(c, b.derivative());
  while (b.degree() > 0) {
    Polynomial<F> a = gcd(b, d, rel_tol);
    Polynomial<F> next_b = divmod(b, a).quotient;
    c = divmod(d, a).quotient;
    factors.push_back(monic(a));
    b = std::move(next_b);
    d = residual(c, b.derivative());
  }
  return factors;
}

template <typename F>
Polynomial<F> odd_multiplicity_part(const Polynomial<F>& p, const F& rel_tol) {
  Polynomial<F> out = Polynomial<F>::constant(F(1));
  const auto factors = squarefree_factors(p, rel_tol);
  for (std::size_t i = 0; i < factors.size(); i += 2) out = out * factors[i];
  return out;
}

std::string to_string(const Polynomial<Rational>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = p.degree(); j >= 0; --j) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(j)];
    if (sgn(c) == 0) continue;
    Rational mag = ::abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (!unit || j == 0) os << mag.get_str();
    if (j > 0) {
      if (!unit) os << "*";
      os << "t";
      if (j > 1) os << "^" << j;
    }
  }
  return os.str();
}

Polynomial<Rational> to_exact(const Polynomial<Scalar>& p) {
  std::vector<Rational> out;
  out.reserve(p.coefficients().size());
  for (const Scalar& c : p.coefficients()) out.push_back(c.to_rational());
  return Polynomial<Rational>(std::move(out));
}

Polynomial<Scalar> to_scalar(const Polynomial<Rational>& p) {
  std::vector<Scalar> out;
  out.reserve(p.coefficients().size());
  for (const Rational& c : p.coefficients()) out.emplace_back(c);
  return Polynomial<Scalar>(std::move(out));
}

#define SUL_INSTANTIATE_POLYNOMIAL(F)                                                     \
  template DivMod<F> divmod(const Polynomial<F>&, const Polynomial<F>&);                  \
  template Polynomial<F> monic(const Polynomial<F>&);                                     \
  template Polynomial<F> gcd(const Polynomial<F>&, const Polynomial<F>&, const F&);       \
  template bool is_squarefree(const Polynomial<F>&, const F&);                            \
  template Polynomial<F> squarefree_part(const Polynomial<F>&, const F&);                 \
  template std::vector<Polynomial<F>> squarefree_factors(const Polynomial<F>&, const F&); \
  template Polynomial<F> odd_multiplicity_part(const Polynomial<F>&, const F&);

SUL_INSTANTIATE_POLYNOMIAL(Scalar)
SUL_INSTANTIATE_POLYNOMIAL(Rational)

#undef SUL_INSTANTIATE_POLYNOMIAL

}  // namespace sul
