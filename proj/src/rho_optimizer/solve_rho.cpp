#include <algorithm>
#include <string>

#include "sul/rho_optimizer.hpp"
#include "sul/simplex.hpp"
#include "sul/sturm.hpp"

namespace sul {

Scalar refine_from_witness(const LaguerreExpansion& witness) {
  if (witness.is_zero()) throw NoSignChange("zero witness has no sign change");
  const Polynomial<Rational> p = to_exact_polynomial(witness);
  const SignChangeReport<Rational> report = last_sign_change(p, Rational(0));
  if (!report.last_change) throw NoSignChange("witness keeps its sign on [0, inf)");
  return to_scalar(*report.last_change, MPFR_RNDU);
}

namespace {

class NeedsPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Accepted {
  Candidate candidate;
  Certificate certificate;
  Scalar last_change;  // exact last sign change of the certified polynomial, rounded up
};

/// Threshold oracle for one (d, s, n): grid LP plus exact certificate, with
/// cutting-plane refinement. Points added by refinement are kept for later
/// thresholds.
class ThresholdSearch {
 public:
  ThresholdSearch(LaguerreParam param, ParitySignature s, int n, int max_rounds)
      : param_(param), s_(s), n_(n), max_rounds_(max_rounds) {}

  std::optional<Accepted> try_threshold(const Scalar& T) {
    for (int round = 0; round <= max_rounds_; ++round) {
      FeasibilityProblem fp = make_feasibility_problem(param_, s_, n_, T);
      for (const Scalar& x : extra_points_) {
        if (x >= T) fp.grid.push_back(x);
      }
      std::optional<Candidate> candidate = solve_feasibility(fp);
      if (!candidate) return std::nullopt;
      Certificate cert = certify(*candidate, T);
      if (cert.certified()) {
        const SignChangeReport<Rational> report =
            last_sign_change(cert.exact_witness, Rational(0), precision_tolerance(4).to_rational());
        Scalar last = report.last_change ? to_scalar(*report.last_change, MPFR_RNDU) : Scalar(0);
        return Accepted{std::move(*candidate), std::move(cert), std::move(last)};
      }
      if (cert.exact_witness.is_zero()) return std::nullopt;
      std::vector<Scalar> cuts = negative_region_points(cert.exact_witness, cert.verified_T);
      if (cuts.empty()) return std::nullopt;
      for (Scalar& x : cuts) extra_points_.push_back(std::move(x));
    }
    return std::nullopt;
  }

 private:
  LaguerreParam param_;
  ParitySignature s_;
  int n_;
  int max_rounds_;
  std::vector<Scalar> extra_points_;
};

RhoResult solve_at_precision(int d, ParitySignature s, int n, const SolveOptions& opts, int bits) {
  PrecisionScope scope(bits);
  const LaguerreParam param(d);
  const int m = n / 2 + 1;
  const Scalar two_lambda = ldexp(smallest_root(m, param), 1);
  ThresholdSearch search(param, s, n, opts.max_refine_rounds);

  // Any admissible witness changes sign at or beyond 2 lambda.
  Scalar lo = two_lambda;
  Scalar hi;
  std::optional<Accepted> best;
  Scalar T(d);
  for (int attempt = 0; attempt < 64 && !best; ++attempt) {
    if (T > lo) {
      if (auto accepted = search.try_threshold(T)) {
        hi = min(T, accepted->last_change);
        best = std::move(accepted);
        break;
      }
      lo = T;
    }
    T *= Scalar(2);
  }
  if (!best) throw NeedsPrecision("no certified upper threshold found");

  const Scalar t_tol(opts.t_tol);
  while (hi - lo > t_tol) {
    Scalar mid = ldexp(lo + hi, -1);
    if (!(lo < mid && mid < hi)) break;
    if (auto accepted = search.try_threshold(mid)) {
      hi = min(mid, accepted->last_change);
      best = std::move(accepted);
    } else {
      lo = std::move(mid);
    }
  }

  RhoResult result;
  result.d = d;
  result.s = s;
  result.n = n;
  result.m = m;
  result.witness = best->candidate.expansion;
  result.T = refine_from_witness(result.witness);
  result.certificate = certify_expansion(result.witness, result.T.to_rational());
  if (!result.certificate.certified()) {
    throw NeedsPrecision("final witness failed certification: " + result.certificate.reason);
  }
  result.rho = sqrt(result.T / ldexp(pi(), 1));
  result.lower_bound_T = two_lambda;
  result.bits = bits;
  return result;
}

}  // namespace

RhoResult solve_rho(int d, ParitySignature s, int n, const SolveOptions& opts) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (n < min_feasible_degree(s)) {
    throw Infeasible("degree " + std::to_string(n) + " admits only p = 0 for s = " + std::to_string(s.value()) +
                     " (needs n >= " + std::to_string(min_feasible_degree(s)) + ")");
  }
  std::string last_error = "no attempt";
  for (int bits = opts.bits; bits <= std::max(opts.bits, opts.max_bits); bits *= 2) {
    try {
      return solve_at_precision(d, s, n, opts, bits);
    } catch (const NeedsPrecision& e) {
      last_error = e.what();
    } catch (const LpNumericalFailure& e) {
      last_error = e.what();
    } catch (const MomentMismatch& e) {
      last_error = e.what();
    }
  }
  throw PrecisionExhausted("d=" + std::to_string(d) + " s=" + std::to_string(s.value()) +
                           " n=" + std::to_string(n) + ": " + last_error);
}

nlohmann::ordered_json to_json(const RhoResult& result, int digits) {
  nlohmann::ordered_json j;
  j["d"] = result.d;
  j["s"] = result.s.value();
  j["n"] = result.n;
  j["m"] = result.m;
  j["rho"] = result.rho.to_string(digits, MPFR_RNDU);
  j["T"] = result.T.to_string(digits, MPFR_RNDU);
  j["two_lambda"] = result.lower_bound_T.to_string(digits, MPFR_RNDD);
  j["witness"] = to_json(result.witness);
  j["certified"] = result.certified();
  j["bits"] = result.bits;
  return j;
}

RhoResult rho_result_from_json(const nlohmann::ordered_json& j) {
  auto require = [&j](const char* key) -> const nlohmann::ordered_json& {
    if (!j.is_object() || !j.contains(key)) {
      throw std::invalid_argument(std::string("result JSON is missing \"") + key + "\"");
    }
    return j[key];
  };
  auto integer = [&require](const char* key) {
    const auto& v = require(key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
  };
  auto decimal = [&require](const char* key) {
    const auto& v = require(key);
    if (!v.is_string()) throw std::invalid_argument(std::string("\"") + key + "\" must be a decimal string");
    return Scalar::parse(v.get<std::string>());
  };

  RhoResult r;
  r.bits = integer("bits");
  PrecisionScope scope(r.bits);
  r.d = integer("d");
  r.s = ParitySignature(integer("s"));
  r.n = integer("n");
  r.m = integer("m");
  r.rho = decimal("rho");
  r.T = decimal("T");
  r.lower_bound_T = decimal("two_lambda");
  r.witness = expansion_from_json(require("witness"));
  const auto& flag = require("certified");
  if (!flag.is_boolean()) throw std::invalid_argument("\"certified\" must be a boolean");
  r.certificate.status = flag.get<bool>() ? CertificateStatus::kCertified : CertificateStatus::kFailed;
  return r;
}

}  // namespace sul
