#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sul/eigenbasis.hpp"
#include "sul/laguerre.hpp"
#include "sul/polynomial.hpp"

namespace sul {

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSignChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  int bits = kDefaultBits;
  /// Bisection stops once the T-bracket is narrower than this.
  double t_tol = 0x1p-40;
  /// Precision is doubled on numerical failure up to this cap.
  int max_bits = 1024;
  /// Cutting-plane rounds per threshold before it is declared infeasible.
  int max_refine_rounds = 24;
};

/// Smallest degree cap admitting a nonzero parity-s witness with p(0) = 0:
/// 2 for s = +1 (indices {0, 2}), 3 for s = -1 (indices {1, 3}).
int min_feasible_degree(ParitySignature s);

/// Chebyshev-spaced points T + span (1 - cos(j pi / N)) / 2, j = 0..N, with
/// N = max(64, 8n) and span = 16 max(T, n^2).
std::vector<Scalar> chebyshev_grid(const Scalar& T, int n);

/// One LP of the bisection: is there a parity-s expansion of degree <= n with
/// p(0) = 0 and p(t_j) > 0 on every grid point t_j >= T?
struct FeasibilityProblem {
  LaguerreParam param;
  ParitySignature s;
  int n;
  Scalar T;
  std::vector<Scalar> grid;
};

FeasibilityProblem make_feasibility_problem(const LaguerreParam& param, ParitySignature s, int n,
                                            const Scalar& T);

struct Candidate {
  LaguerreExpansion expansion;
  /// Optimal LP margin: min_j p(t_j) / sigma(t_j).
  Scalar margin;
};

/// Maximizes mu subject to p(0) = 0, p(t_j) >= mu sigma(t_j), |c~_k| <= 1 and
/// a sign on the top admissible coefficient that makes p -> +inf (zero
/// allowed, which covers lower-degree witnesses). Here
/// c~_k = c_k L_k(0) and sigma(t) = sum_k |L_k(t) / L_k(0)|. Returns a
/// candidate when mu > 2^(-bits/4). Throws LpNumericalFailure.
std::optional<Candidate> solve_feasibility(const FeasibilityProblem& fp);

enum class CertificateStatus { kCertified, kFailed };

/// Exact-arithmetic proof that exact_witness(0) = 0, its leading coefficient
/// is positive, and it has no sign change in (verified_T, inf).
struct Certificate {
  Polynomial<Rational> exact_witness;
  Rational verified_T;
  CertificateStatus status = CertificateStatus::kFailed;
  std::string reason;

  bool certified() const { return status == CertificateStatus::kCertified; }
};

/// Rounds the witness to exact rationals, re-imposes p(0) = 0 by solving for
/// the dominant coefficient and checks nonnegativity on (T, inf) with exact
/// Sturm sequences. A sign change within 2^(-bits/4) max(1, T) beyond T is
/// absorbed by moving verified_T outward to it; anything larger fails.
Certificate certify(const Candidate& candidate, const Scalar& T);
Certificate certify_expansion(const LaguerreExpansion& witness, const Rational& T);

/// Points inside every interval of (T, inf) where p < 0 (cutting planes for
/// the grid LP). Empty when p has no negative region beyond T.
std::vector<Scalar> negative_region_points(const Polynomial<Rational>& p, const Rational& T);

struct RhoResult {
  int d = 0;
  ParitySignature s = ParitySignature::plus();
  int n = 0;
  int m = 0;
  Scalar rho;
  Scalar T;  // 2 pi rho^2
  LaguerreExpansion witness{LaguerreParam(1)};
  Certificate certificate;
  Scalar lower_bound_T;  // 2 lambda
  int bits = kDefaultBits;

  bool certified() const { return certificate.certified(); }
};

/// Certified upper bound on rho_{d,s,n}. Throws Infeasible for n below
/// min_feasible_degree(s) and PrecisionExhausted when no certified threshold
/// is found up to opts.max_bits.
RhoResult solve_rho(int d, ParitySignature s, int n, const SolveOptions& opts = {});

/// Exact last sign change of the witness polynomial on [0, inf), rounded up.
/// Throws NoSignChange if there is none.
Scalar refine_from_witness(const LaguerreExpansion& witness);

/// {"d","s","n","m","rho","T","two_lambda","witness","certified","bits"}.
/// rho and T are rounded up, two_lambda down, to `digits` significant digits.
nlohmann::ordered_json to_json(const RhoResult& result, int digits = 30);

/// Parses at the stored precision; the certificate holds only the stored
/// flag (revalidate with certify_expansion). Throws std::invalid_argument.
RhoResult rho_result_from_json(const nlohmann::ordered_json& j);

}  // namespace sul
