#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sul/polynomial.hpp"

namespace sul {

class NotSquarefree : public std::domain_error {
 public:
  NotSquarefree() : std::domain_error("polynomial is not squarefree") {}
};

/// Sturm sequence p, p', -rem(p, p'), ... Each element is rescaled by the
/// magnitude of its leading coefficient, which preserves signs.
template <typename F>
class SturmChain {
 public:
  explicit SturmChain(Polynomial<F> source, const F& rel_tol = FieldTraits<F>::default_tolerance());

  const Polynomial<F>& source() const { return source_; }
  const std::vector<Polynomial<F>>& sequence() const { return sequence_; }

  int variations_at(const F& x) const;
  int variations_at_infinity() const;

  /// Distinct real roots of a squarefree source in (a, b].
  int count(const F& a, const F& b) const { return variations_at(a) - variations_at(b); }
  /// Distinct real roots of a squarefree source in (a, +inf).
  int count_above(const F& a) const { return variations_at(a) - variations_at_infinity(); }

 private:
  Polynomial<F> source_;
  std::vector<Polynomial<F>> sequence_;
  std::vector<std::vector<mpz_class>> integer_sequence_;  // rational chains only
};

/// Number of distinct real roots of p in (a, b]. Requires a < b and a
/// squarefree, nonzero p; throws NotSquarefree otherwise.
template <typename F>
int sturm_count(const Polynomial<F>& p, const F& a, const F& b);

/// A power of two strictly exceeding every |root| of p (Cauchy bound).
template <typename F>
F root_bound(const Polynomial<F>& p);

/// Half-open isolating interval: exactly one root lies in (lower, upper].
template <typename F>
struct RootInterval {
  F lower;
  F upper;
};

/// Isolates every root of the chain's (squarefree) source in (lo, hi],
/// ascending.
template <typename F>
std::vector<RootInterval<F>> isolate_roots(const SturmChain<F>& chain, const F& lo, const F& hi);

/// Shrinks an isolating interval of a simple root of q by sign bisection
/// until its width is at most rel_width * max(1, |upper|).
template <typename F>
RootInterval<F> refine_root(const Polynomial<F>& q, RootInterval<F> interval, const F& rel_width);

template <typename F>
struct SignChangeReport {
  /// Upper end of an isolating interval of the largest sign change >= from.
  std::optional<F> last_change;
  /// Lower end of the same interval (equal to last_change when exact).
  std::optional<F> lower;
  /// Distinct real roots of the source in (from, +inf), any multiplicity.
  int total_real_roots_beyond_from = 0;
};

/// Sturm chain of the odd-multiplicity part of p, whose roots are exactly
/// the sign changes of p.
template <typename F>
SturmChain<F> odd_part_chain(const Polynomial<F>& p);

/// Default bisection resolution: close to the working precision.
template <typename F>
F default_resolution();
template <>
Scalar default_resolution<Scalar>();
template <>
Rational default_resolution<Rational>();

/// Largest x* >= from where p changes sign, i.e. its largest odd-multiplicity
/// real root, via squarefree decomposition, Sturm isolation and bisection.
/// Returns an empty report for p == 0 or when p keeps its sign on [from, inf).
template <typename F>
SignChangeReport<F> last_sign_change(const Polynomial<F>& p, const F& from,
                                     const F& rel_resolution = default_resolution<F>());

}  // namespace sul
