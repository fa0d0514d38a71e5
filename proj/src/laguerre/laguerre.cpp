#include <stdexcept>
#include <string>

#include "sul/laguerre.hpp"

namespace sul {

LaguerreParam::LaguerreParam(int d) : d_(d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(d));
}

Scalar LaguerreParam::alpha() const { return ldexp(Scalar(d_ - 2), -1); }

namespace {

template <typename F>
Polynomial<F> laguerre_recurrence(int k, const F& alpha) {
  if (k < 0) throw std::invalid_argument("Laguerre degree must be nonnegative");
  Polynomial<F> prev = Polynomial<F>::constant(F(1));
  if (k == 0) return prev;
  Polynomial<F> cur({F(alpha + F(1)), F(-1)});
  const Polynomial<F> t = Polynomial<F>::monomial(F(1), 1);
  for (int j = 2; j <= k; ++j) {
    F a = alpha + F(2 * j - 1);
    F b = alpha + F(j - 1);
    Polynomial<F> next = cur * a - t * cur - prev * b;
    next *= F(1) / F(j);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Polynomial<Scalar> laguerre_poly(int k, const LaguerreParam& param) {
  return laguerre_recurrence<Scalar>(k, param.alpha());
}

Polynomial<Rational> laguerre_poly_exact(int k, const LaguerreParam& param) {
  return laguerre_recurrence<Rational>(k, param.alpha_exact());
}

std::vector<Scalar> laguerre_values(int k_max, const LaguerreParam& param, const Scalar& t) {
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  out.emplace_back(1);
  if (k_max == 0) return out;
  const Scalar alpha = param.alpha();
  out.push_back(alpha + Scalar(1) - t);
  Scalar a, b, tmp;
  for (int j = 2; j <= k_max; ++j) {
    // j L_j = (2j - 1 + alpha - t) L_{j-1} - (j - 1 + alpha) L_{j-2}
    mpfr_add_si(a.get(), alpha.get(), 2 * j - 1, MPFR_RNDN);
    mpfr_sub(a.get(), a.get(), t.get(), MPFR_RNDN);
    mpfr_mul(a.get(), a.get(), out[static_cast<std::size_t>(j - 1)].get(), MPFR_RNDN);
    mpfr_add_si(b.get(), alpha.get(), j - 1, MPFR_RNDN);
    mpfr_mul(tmp.get(), b.get(), out[static_cast<std::size_t>(j - 2)].get(), MPFR_RNDN);
    mpfr_sub(a.get(), a.get(), tmp.get(), MPFR_RNDN);
    mpfr_div_si(a.get(), a.get(), j, MPFR_RNDN);
    out.push_back(a);
  }
  return out;
}

Scalar laguerre_at_zero(int k, const LaguerreParam& param) {
  const Scalar alpha = param.alpha();
  Scalar value(1);
  for (int i = 1; i <= k; ++i) {
    value *= alpha + Scalar(i);
    value /= Scalar(i);
  }
  return value;
}

Rational laguerre_at_zero_exact(int k, const LaguerreParam& param) {
  const Rational alpha = param.alpha_exact();
  Rational value(1);
  for (int i = 1; i <= k; ++i) {
    value *= alpha + i;
    value /= i;
  }
  return value;
}

namespace {

/// Symmetric tridiagonal Jacobi matrix of the monic Laguerre recurrence:
/// diagonal 2i - 1 + alpha, squared off-diagonal i (i + alpha).
class JacobiMatrix {
 public:
  JacobiMatrix(int m, const LaguerreParam& param) : m_(m) {
    if (m < 1) throw std::invalid_argument("Laguerre root order must be >= 1");
    const Scalar alpha = param.alpha();
    for (int i = 1; i <= m; ++i) {
      diag_.push_back(alpha + Scalar(2 * i - 1));
      if (i < m) off_sq_.push_back(Scalar(i) * (alpha + Scalar(i)));
    }
  }

  int size() const { return m_; }

  int count_below(const Scalar& x) const {
    int negatives = 0;
    mpfr_sub(pivot_.get(), diag_[0].get(), x.get(), MPFR_RNDN);
    if (pivot_.is_zero()) nudge();
    if (pivot_.sign() < 0) ++negatives;
    for (int i = 1; i < m_; ++i) {
      mpfr_div(tmp_.get(), off_sq_[static_cast<std::size_t>(i - 1)].get(), pivot_.get(), MPFR_RNDN);
      mpfr_sub(pivot_.get(), diag_[static_cast<std::size_t>(i)].get(), x.get(), MPFR_RNDN);
      mpfr_sub(pivot_.get(), pivot_.get(), tmp_.get(), MPFR_RNDN);
      if (pivot_.is_zero()) nudge();
      if (pivot_.sign() < 0) ++negatives;
    }
    return negatives;
  }

  Scalar upper_bound() const {
    const Scalar& last = diag_.back();
    Scalar bound = last + Scalar(1);
    if (!off_sq_.empty()) bound += Scalar(2) * sqrt(off_sq_.back() + last);
    return bound;
  }

 private:
  void nudge() const { mpfr_set_ui_2exp(pivot_.get(), 1, -4 * working_bits(), MPFR_RNDN); }

  int m_;
  std::vector<Scalar> diag_;
  std::vector<Scalar> off_sq_;
  mutable Scalar pivot_;
  mutable Scalar tmp_;
};

/// Newton correction L_m(x) / L_m'(x), using x L_m' = m L_m - (m + alpha) L_{m-1}.
Scalar newton_step(int m, const LaguerreParam& param, const Scalar& x) {
  const std::vector<Scalar> values = laguerre_values(m, param, x);
  const Scalar& lm = values[static_cast<std::size_t>(m)];
  const Scalar& lm1 = values[static_cast<std::size_t>(m - 1)];
  Scalar derivative = Scalar(m) * lm - (param.alpha() + Scalar(m)) * lm1;
  derivative /= x;
  return lm / derivative;
}

/// k-th smallest root (1-based) of L_m^alpha.
Scalar kth_root(const JacobiMatrix& jacobi, int k, const LaguerreParam& param, Scalar lo) {
  const int m = jacobi.size();
  Scalar hi = jacobi.upper_bound();
  const Scalar seed_tol = precision_tolerance(4);
  auto bisect_until = [&](const Scalar& rel_tol) {
    while (true) {
      Scalar mid = ldexp(lo + hi, -1);
      if (!(lo < mid && mid < hi)) break;
      if (hi - lo <= rel_tol * max(Scalar(1), hi)) break;
      if (jacobi.count_below(mid) >= k) {
        hi = std::move(mid);
      } else {
        lo = std::move(mid);
      }
    }
  };
  bisect_until(seed_tol);

  Scalar x = ldexp(lo + hi, -1);
  const Scalar stop = ldexp(Scalar(1), -(working_bits() - 3));
  const Scalar noise = precision_tolerance(2);
  Scalar previous = hi - lo;
  bool converged = false;
  for (int iter = 0; iter < 60 && !converged; ++iter) {
    const Scalar delta = newton_step(m, param, x);
    Scalar step = abs(delta);
    Scalar next = x - delta;
    if (next < lo || next > hi) break;
    x = std::move(next);
    // Either the update fell to the last bits, or it stopped shrinking
    // once already below the rounding noise of the recurrence.
    converged = step <= stop * x || (step <= noise * x && ldexp(step, 1) >= previous);
    previous = std::move(step);
  }
  if (!converged) {
    bisect_until(ldexp(Scalar(1), -(working_bits() - 2)));
    x = ldexp(lo + hi, -1);
  }

  const Scalar eps = precision_tolerance(2) * max(Scalar(1), x);
  if (jacobi.count_below(x + eps) != k || jacobi.count_below(x - eps) != k - 1) {
    throw std::logic_error("Laguerre root certification failed (m=" + std::to_string(m) +
                           ", d=" + std::to_string(param.d()) + ", k=" + std::to_string(k) + ")");
  }
  return x;
}

}  // namespace

int jacobi_count_below(int m, const LaguerreParam& param, const Scalar& x) {
  return JacobiMatrix(m, param).count_below(x);
}

Scalar smallest_root(int m, const LaguerreParam& param) {
  const JacobiMatrix jacobi(m, param);
  return kth_root(jacobi, 1, param, Scalar(0));
}

std::vector<Scalar> laguerre_roots(int m, const LaguerreParam& param) {
  const JacobiMatrix jacobi(m, param);
  std::vector<Scalar> roots;
  roots.reserve(static_cast<std::size_t>(m));
  Scalar lo(0);
  for (int k = 1; k <= m; ++k) {
    roots.push_back(kth_root(jacobi, k, param, lo));
    lo = roots.back();
  }
  return roots;
}

}  // namespace sul
