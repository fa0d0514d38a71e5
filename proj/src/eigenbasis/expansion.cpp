#include <stdexcept>
#include <string>

#include "sul/eigenbasis.hpp"

namespace sul {

ParitySignature::ParitySignature(int s) : s_(s) {
  if (s != 1 && s != -1) throw std::invalid_argument("parity signature must be +1 or -1");
}

LaguerreExpansion::LaguerreExpansion(LaguerreParam param, std::map<int, Scalar> coeffs)
    : param_(param), coeffs_(std::move(coeffs)) {
  for (const auto& [k, c] : coeffs_) {
    if (k < 0) throw std::invalid_argument("Laguerre index must be nonnegative");
  }
}

Scalar LaguerreExpansion::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

void LaguerreExpansion::set(int k, Scalar c) {
  if (k < 0) throw std::invalid_argument("Laguerre index must be nonnegative");
  coeffs_[k] = std::move(c);
}

int LaguerreExpansion::degree() const {
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!it->second.is_zero()) return it->first;
  }
  return -1;
}

Polynomial<Scalar> to_polynomial(const LaguerreExpansion& e) {
  Polynomial<Scalar> p;
  for (const auto& [k, c] : e.coeffs()) {
    if (c.is_zero()) continue;
    p += laguerre_poly(k, e.param()) * c;
  }
  return p;
}

Polynomial<Rational> to_exact_polynomial(const LaguerreExpansion& e) {
  Polynomial<Rational> p;
  for (const auto& [k, c] : e.coeffs()) {
    if (c.is_zero()) continue;
    p += laguerre_poly_exact(k, e.param()) * c.to_rational();
  }
  return p;
}

LaguerreExpansion from_polynomial(const Polynomial<Scalar>& p, const LaguerreParam& param) {
  LaguerreExpansion out(param);
  Polynomial<Scalar> rest = p;
  for (int k = p.degree(); k >= 0; --k) {
    const Polynomial<Scalar> basis = laguerre_poly(k, param);
    Scalar c = rest.coefficient(k) / basis.leading();
    if (!c.is_zero()) {
      rest -= basis * c;
      out.set(k, std::move(c));
    }
    // Drop the (rounded) top coefficient so the next step sees degree k - 1.
    std::vector<Scalar> coeffs = rest.coefficients();
    if (static_cast<int>(coeffs.size()) > k) coeffs.resize(static_cast<std::size_t>(k));
    rest = Polynomial<Scalar>(std::move(coeffs));
  }
  return out;
}

LaguerreExpansion fourier(const LaguerreExpansion& e) {
  std::map<int, Scalar> out;
  for (const auto& [k, c] : e.coeffs()) out.emplace(k, k % 2 == 0 ? c : -c);
  return LaguerreExpansion(e.param(), std::move(out));
}

Scalar value_at_zero(const LaguerreExpansion& e) {
  Scalar sum(0);
  for (const auto& [k, c] : e.coeffs()) sum += c * laguerre_at_zero(k, e.param());
  return sum;
}

Scalar hat_value_at_zero(const LaguerreExpansion& e) { return value_at_zero(fourier(e)); }

Scalar hat_value_at_zero_by_moments(const LaguerreExpansion& e) {
  const Polynomial<Scalar> p = to_polynomial(e);
  const Scalar mass = moment(0, e.param());
  Scalar sum(0);
  for (int j = 0; j <= p.degree(); ++j) {
    sum += ldexp(p.coefficient(j), j) * moment(j, e.param());
  }
  return sum / mass;
}

Scalar eval_p(const LaguerreExpansion& e, const Scalar& t) {
  const int n = e.degree();
  if (n < 0) return Scalar(0);
  const std::vector<Scalar> values = laguerre_values(n, e.param(), t);
  Scalar sum(0);
  for (const auto& [k, c] : e.coeffs()) {
    if (k <= n) sum += c * values[static_cast<std::size_t>(k)];
  }
  return sum;
}

Scalar eval_radial(const LaguerreExpansion& e, const Scalar& r) {
  if (r.sign() < 0) throw std::invalid_argument("radius must be nonnegative");
  const Scalar pr2 = pi() * r * r;
  return eval_p(e, ldexp(pr2, 1)) * exp(-pr2);
}

nlohmann::ordered_json to_json(const LaguerreExpansion& e) {
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
  for (const auto& [k, c] : e.coeffs()) coeffs[std::to_string(k)] = c.to_exact_string();
  nlohmann::ordered_json out;
  out["d"] = e.param().d();
  out["coeffs"] = std::move(coeffs);
  return out;
}

LaguerreExpansion expansion_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("coeffs") || !j["d"].is_number_integer() ||
      !j["coeffs"].is_object()) {
    throw std::invalid_argument("expansion JSON must be {\"d\": int, \"coeffs\": {...}}");
  }
  LaguerreExpansion out{LaguerreParam(j["d"].get<int>())};
  for (const auto& [key, value] : j["coeffs"].items()) {
    if (!value.is_string()) throw std::invalid_argument("coefficient values must be decimal strings");
    std::size_t used = 0;
    int k = -1;
    try {
      k = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || k < 0) throw std::invalid_argument("bad coefficient index '" + key + "'");
    out.set(k, Scalar::parse(value.get<std::string>()));
  }
  return out;
}

}  // namespace sul
