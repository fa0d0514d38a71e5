#include "sul/sturm.hpp"

#include <type_traits>

namespace sul {

namespace {

template <typename F>
F midpoint(const F& a, const F& b) {
  F mid = a + b;
  mid /= F(2);
  return mid;
}

/// Clears denominators so sign evaluation at a rational point runs on
/// integers without a gcd per Horner step.
std::vector<mpz_class> integer_coefficients(const Polynomial<Rational>& p) {
  mpz_class common(1);
  for (const Rational& c : p.coefficients()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(p.coefficients().size());
  for (const Rational& c : p.coefficients()) out.push_back(c.get_num() * (common / c.get_den()));
  return out;
}

/// Sign of sum_i c_i x^i for x = a / b, b > 0, as the sign of
/// sum_i c_i a^i b^(n - i).
int integer_sign_at(const std::vector<mpz_class>& c, const Rational& x) {
  if (c.empty()) return 0;
  const mpz_class& a = x.get_num();
  const mpz_class& b = x.get_den();
  mpz_class value = c.back();
  mpz_class power(1);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    value *= a;
    power *= b;
    mpz_addmul(value.get_mpz_t(), c[i].get_mpz_t(), power.get_mpz_t());
  }
  return sgn(value);
}

template <typename F>
class SignEvaluator {
 public:
  explicit SignEvaluator(const Polynomial<F>& p) : p_(p) {}
  int operator()(const F& x) const { return FieldTraits<F>::sign(p_(x)); }

 private:
  const Polynomial<F>& p_;
};

template <>
class SignEvaluator<Rational> {
 public:
  explicit SignEvaluator(const Polynomial<Rational>& p) : c_(integer_coefficients(p)) {}
  int operator()(const Rational& x) const { return integer_sign_at(c_, x); }

 private:
  std::vector<mpz_class> c_;
};

template <typename F>
F one_or_abs(const F& x) {
  F a = FieldTraits<F>::abs(x);
  return a < F(1) ? F(1) : a;
}

}  // namespace

template <typename F>
SturmChain<F>::SturmChain(Polynomial<F> source, const F& rel_tol) : source_(std::move(source)) {
  if (source_.is_zero()) return;
  auto normalized = [](const Polynomial<F>& p) {
    F inv = F(1) / FieldTraits<F>::abs(p.leading());
    return p * inv;
  };
  sequence_.push_back(normalized(source_));
  Polynomial<F> d = source_.derivative();
  if (!d.is_zero()) sequence_.push_back(normalized(d));
  while (sequence_.size() >= 2) {
    const Polynomial<F>& a = sequence_[sequence_.size() - 2];
    const Polynomial<F>& b = sequence_.back();
    F scale = a.max_norm();
    F bs = b.max_norm();
    if (scale < bs) scale = bs;
    F tol = rel_tol * scale;
    Polynomial<F> r = divmod(a, b).remainder.chopped(tol);
    if (r.is_zero()) break;
    r *= F(-1);
    sequence_.push_back(normalized(r));
  }
  if constexpr (std::is_same_v<F, Rational>) {
    for (const auto& p : sequence_) integer_sequence_.push_back(integer_coefficients(p));
  }
}

template <typename F>
int SturmChain<F>::variations_at(const F& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : sequence_) {
    int s = 0;
    if constexpr (std::is_same_v<F, Rational>) {
      s = integer_sign_at(integer_sequence_[static_cast<std::size_t>(&p - sequence_.data())], x);
    } else {
      s = FieldTraits<F>::sign(p(x));
    }
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

template <typename F>
int SturmChain<F>::variations_at_infinity() const {
  int changes = 0;
  int last = 0;
  for (const auto& p : sequence_) {
    const int s = FieldTraits<F>::sign(p.leading());
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

template <typename F>
int sturm_count(const Polynomial<F>& p, const F& a, const F& b) {
  if (!(a < b)) throw std::invalid_argument("sturm_count requires a < b");
  if (p.is_zero() || !is_squarefree(p)) throw NotSquarefree();
  return SturmChain<F>(p).count(a, b);
}

template <typename F>
F root_bound(const Polynomial<F>& p) {
  F bound(1);
  if (p.degree() >= 1) {
    F worst(0);
    const F lead = FieldTraits<F>::abs(p.leading());
    for (int j = 0; j < p.degree(); ++j) {
      F ratio = FieldTraits<F>::abs(p.coefficients()[static_cast<std::size_t>(j)]) / lead;
      if (worst < ratio) worst = ratio;
    }
    bound += worst;
  }
  F power(1);
  while (!(bound < power)) power *= F(2);
  return power;
}

template <typename F>
std::vector<RootInterval<F>> isolate_roots(const SturmChain<F>& chain, const F& lo, const F& hi) {
  std::vector<RootInterval<F>> out;
  struct Pending {
    F lo, hi;
    int v_lo, v_hi;
  };
  std::vector<Pending> stack;
  stack.push_back({lo, hi, chain.variations_at(lo), chain.variations_at(hi)});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    const int roots = cur.v_lo - cur.v_hi;
    if (roots <= 0) continue;
    if (roots == 1) {
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    F mid = midpoint(cur.lo, cur.hi);
    if (!(cur.lo < mid && mid < cur.hi)) {
      // Interval exhausted at this precision; report it unsplit.
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    const int v_mid = chain.variations_at(mid);
    // Upper half first so the lower half is processed first (LIFO).
    stack.push_back({mid, cur.hi, v_mid, cur.v_hi});
    stack.push_back({cur.lo, mid, cur.v_lo, v_mid});
  }
  return out;
}

template <typename F>
RootInterval<F> refine_root(const Polynomial<F>& q, RootInterval<F> interval, const F& rel_width) {
  const SignEvaluator<F> sign_of(q);
  const int s_hi = sign_of(interval.upper);
  if (s_hi == 0) {
    interval.lower = interval.upper;
    return interval;
  }
  while (true) {
    F width = interval.upper - interval.lower;
    F limit = rel_width * one_or_abs(interval.upper);
    if (!(limit < width)) break;
    F mid = midpoint(interval.lower, interval.upper);
    if (!(interval.lower < mid && mid < interval.upper)) break;
    const int s = sign_of(mid);
    if (s == 0) {
      interval.lower = mid;
      interval.upper = std::move(mid);
      break;
    }
    if (s == s_hi) {
      interval.upper = std::move(mid);
    } else {
      interval.lower = std::move(mid);
    }
  }
  return interval;
}

template <>
Scalar default_resolution<Scalar>() {
  return ldexp(Scalar(1), -static_cast<long>(working_bits() - 4));
}

template <>
Rational default_resolution<Rational>() {
  Rational out(1);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(working_bits()));
  return out;
}

template <typename F>
SturmChain<F> odd_part_chain(const Polynomial<F>& p) {
  SturmChain<F> chain(p);
  if (chain.sequence().empty() || chain.sequence().back().degree() == 0) return chain;
  return SturmChain<F>(odd_multiplicity_part(p));
}

template <typename F>
SignChangeReport<F> last_sign_change(const Polynomial<F>& p, const F& from, const F& rel_resolution) {
  SignChangeReport<F> report;
  if (p.degree() <= 0) return report;

  // The last element of the chain of p is gcd(p, p'); when it is constant, p
  // is squarefree and its own chain serves both counts.
  const SturmChain<F> full(p);
  const bool squarefree = full.sequence().back().degree() == 0;
  report.total_real_roots_beyond_from =
      squarefree ? full.count_above(from) : SturmChain<F>(squarefree_part(p)).count_above(from);

  const SturmChain<F> chain = squarefree ? full : SturmChain<F>(odd_multiplicity_part(p));
  const Polynomial<F>& q = chain.source();
  if (q.degree() <= 0) return report;
  if (chain.count_above(from) == 0) {
    if (FieldTraits<F>::sign(q(from)) == 0) {
      report.last_change = from;
      report.lower = from;
    }
    return report;
  }

  F lo = from;
  F hi = root_bound(q);
  while (!(from < hi)) hi *= F(2);
  // Invariant: every root of q above lo lies in (lo, hi]; at least one does.
  while (chain.count_above(lo) > 1) {
    F mid = midpoint(lo, hi);
    if (!(lo < mid && mid < hi)) break;
    if (chain.count_above(mid) >= 1) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  RootInterval<F> root = refine_root(q, RootInterval<F>{lo, hi}, rel_resolution);
  report.last_change = std::move(root.upper);
  report.lower = std::move(root.lower);
  return report;
}

#define SUL_INSTANTIATE_STURM(F)                                                                \
  template class SturmChain<F>;                                                                 \
  template int sturm_count(const Polynomial<F>&, const F&, const F&);                           \
  template F root_bound(const Polynomial<F>&);                                                  \
  template std::vector<RootInterval<F>> isolate_roots(const SturmChain<F>&, const F&, const F&); \
  template RootInterval<F> refine_root(const Polynomial<F>&, RootInterval<F>, const F&);        \
  template SturmChain<F> odd_part_chain(const Polynomial<F>&);                                  \
  template SignChangeReport<F> last_sign_change(const Polynomial<F>&, const F&, const F&);

SUL_INSTANTIATE_STURM(Scalar)
SUL_INSTANTIATE_STURM(Rational)

#undef SUL_INSTANTIATE_STURM

}  // namespace sul
