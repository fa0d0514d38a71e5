#include "sul/rho_optimizer.hpp"
#include "sul/sturm.hpp"

namespace sul {

namespace {

Certificate failed(Certificate cert, std::string reason) {
  cert.status = CertificateStatus::kFailed;
  cert.reason = std::move(reason);
  return cert;
}

Rational half(const Rational& a, const Rational& b) {
  Rational mid = a + b;
  mid /= 2;
  return mid;
}

}  // namespace

Certificate certify(const Candidate& candidate, const Scalar& T) {
  if (!(candidate.margin.sign() > 0)) {
    Certificate cert;
    cert.verified_T = T.to_rational();
    return failed(std::move(cert), "candidate margin is not positive");
  }
  return certify_expansion(candidate.expansion, T.to_rational());
}

Certificate certify_expansion(const LaguerreExpansion& witness, const Rational& T) {
  Certificate cert;
  cert.verified_T = T;
  if (witness.is_zero()) return failed(std::move(cert), "witness is identically zero");

  const LaguerreParam& param = witness.param();
  // The floating witness must already satisfy p(0) = 0 to a relative 2^(-bits/4).
  Scalar scale(0);
  int dominant = -1;
  Scalar dominant_size(0);
  for (const auto& [k, c] : witness.coeffs()) {
    Scalar size = abs(c * laguerre_at_zero(k, param));
    scale += size;
    if (dominant < 0 || dominant_size < size) {
      dominant = k;
      dominant_size = std::move(size);
    }
  }
  if (abs(value_at_zero(witness)) > precision_tolerance(4) * scale) {
    return failed(std::move(cert), "witness violates p(0) = 0");
  }

  // Exact rounding, then solve p(0) = 0 for the dominant coefficient.
  Rational others(0);
  for (const auto& [k, c] : witness.coeffs()) {
    if (k != dominant) others += c.to_rational() * laguerre_at_zero_exact(k, param);
  }
  Polynomial<Rational> exact;
  for (const auto& [k, c] : witness.coeffs()) {
    Rational r = (k == dominant) ? Rational(-others / laguerre_at_zero_exact(k, param)) : c.to_rational();
    if (sgn(r) != 0) exact += laguerre_poly_exact(k, param) * r;
  }
  cert.exact_witness = exact;
  if (exact.is_zero()) return failed(std::move(cert), "exact witness vanishes");
  if (sgn(exact.coefficient(0)) != 0) return failed(std::move(cert), "exact witness has p(0) != 0");
  if (sgn(exact.leading()) <= 0) return failed(std::move(cert), "leading coefficient is not positive");

  const SturmChain<Rational> chain = odd_part_chain(exact);
  if (chain.count_above(T) > 0) {
    Rational slack = precision_tolerance(4).to_rational();
    const SignChangeReport<Rational> report = last_sign_change(exact, T, slack);
    if (::abs(T) > 1) slack *= ::abs(T);
    if (!report.last_change || *report.last_change - T > slack) {
      return failed(std::move(cert), "sign change beyond T");
    }
    cert.verified_T = *report.last_change;
    if (chain.count_above(cert.verified_T) != 0) return failed(std::move(cert), "sign change beyond T");
  }
  if (sgn(exact(cert.verified_T + 1)) <= 0) {
    return failed(std::move(cert), "witness not positive at verified_T + 1");
  }
  cert.status = CertificateStatus::kCertified;
  return cert;
}

std::vector<Scalar> negative_region_points(const Polynomial<Rational>& p, const Rational& T) {
  std::vector<Scalar> points;
  if (p.degree() <= 0) return points;
  const SturmChain<Rational> chain = odd_part_chain(p);
  const Polynomial<Rational>& q = chain.source();

  std::vector<Rational> cuts{T};
  if (q.degree() > 0) {
    Rational hi = root_bound(q);
    while (hi <= T) hi *= 2;
    const Rational width(1ul, 1ul << 40);
    for (auto interval : isolate_roots(chain, T, hi)) {
      cuts.push_back(refine_root(q, std::move(interval), width).upper);
    }
  }

  auto add = [&points](const Rational& x) { points.push_back(to_scalar(x)); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& a = cuts[i];
    const Rational& b = cuts[i + 1];
    const Rational mid = half(a, b);
    if (sgn(p(mid)) >= 0) continue;
    add(half(a, mid));
    add(mid);
    add(half(mid, b));
  }
  if (sgn(p.leading()) < 0) {
    const Rational& last = cuts.back();
    const Rational far = 2 * ::abs(last) + 1;
    add(far);
    add(2 * far);
  }
  return points;
}

}  // namespace sul
