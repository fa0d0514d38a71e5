#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "sul/gamma.hpp"
#include "sul/laguerre.hpp"

namespace sul {

Scalar moment(int j, const LaguerreParam& param) {
  if (j < 0) throw std::invalid_argument("moment order must be nonnegative");
  // alpha + j + 1 = d/2 + j
  return gamma_half_integer(param.d() + 2 * j);
}

Scalar max_moment_residual(const QuadratureRule& rule) {
  std::vector<Scalar> powers(rule.weights);  // w_i u_i^j, starting at j = 0
  Scalar worst(0);
  for (int j = 0; j < 2 * rule.m; ++j) {
    Scalar sum(0);
    for (const Scalar& term : powers) sum += term;
    const Scalar exact = moment(j, rule.param);
    Scalar residual = abs(sum - exact) / exact;
    if (worst < residual) worst = std::move(residual);
    for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= rule.nodes[i];
  }
  return worst;
}

QuadratureRule gauss_laguerre_rule(int m, const LaguerreParam& param) {
  QuadratureRule rule{param, m, laguerre_roots(m, param), {}, working_bits()};

  // First eigenvector component squared = 1 / sum_k p_k(u)^2 over the
  // orthonormal polynomials p_k = L_k / sqrt(h_k), h_k = binomial(k + alpha, k).
  std::vector<Scalar> norms;
  for (int k = 0; k < m; ++k) norms.push_back(laguerre_at_zero(k, param));
  const Scalar mass = moment(0, param);
  rule.weights.reserve(static_cast<std::size_t>(m));
  for (const Scalar& u : rule.nodes) {
    const std::vector<Scalar> values = laguerre_values(m - 1, param, u);
    Scalar sum(0);
    for (int k = 0; k < m; ++k) {
      const Scalar& v = values[static_cast<std::size_t>(k)];
      sum += v * v / norms[static_cast<std::size_t>(k)];
    }
    rule.weights.push_back(mass / sum);
  }

  for (const Scalar& w : rule.weights) {
    if (w.sign() <= 0) throw MomentMismatch("nonpositive Gauss-Laguerre weight");
  }
  const Scalar residual = max_moment_residual(rule);
  if (residual > precision_tolerance(4)) {
    throw MomentMismatch("Gauss-Laguerre moment residual " + residual.to_string(6) + " for m=" +
                         std::to_string(m) + ", d=" + std::to_string(param.d()) +
                         "; raise the precision");
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_rule(int m, const LaguerreParam& param) {
  using Key = std::tuple<int, int, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

  const Key key{m, param.d(), working_bits()};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_laguerre_rule(m, param));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(rule));
  return it->second;
}

}  // namespace sul
