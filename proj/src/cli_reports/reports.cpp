#include <cctype>
#include <ostream>

#include "sul/cli_reports.hpp"

namespace sul {

std::string format_decimal(const Scalar& x, int digits, mpfr_rnd_t rnd) {
  if (!x.is_finite()) return "nan";
  return x.to_string(digits, rnd);
}

void write_scan_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows, const RunManifest& manifest) {
  out << csv_comment_block(manifest) << kScanColumns << '\n';
  for (const AsymptoticRow& row : rows) {
    PrecisionScope scope(std::max(manifest.bits, row.result.bits));
    out << row.d << ',' << row.s << ',' << row.n << ',' << row.m << ','
        << format_decimal(row.lambda, kReportDigits, MPFR_RNDD) << ','
        << format_decimal(ldexp(row.lambda, 1), kReportDigits, MPFR_RNDD) << ','
        << format_decimal(row.result.T, kReportDigits, MPFR_RNDU) << ','
        << format_decimal(row.result.rho, kReportDigits, MPFR_RNDU) << ','
        << format_decimal(row.lower_ratio, kReportDigits, MPFR_RNDD) << ','
        << format_decimal(row.upper_ratio, kReportDigits, MPFR_RNDU) << ','
        << (row.result.certified() ? "true" : "false") << '\n';
  }
}

nlohmann::ordered_json result_document(const RhoResult& result, const RunManifest& manifest) {
  nlohmann::ordered_json j = to_json(result, kReportDigits);
  j["manifest"] = to_json(manifest);
  return j;
}

namespace {

// Significant digits written in a decimal string such as "1.2345e+01".
int significant_digits(const std::string& text) {
  int count = 0;
  bool leading = true;
  for (char ch : text) {
    if (ch == 'e' || ch == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(ch))) continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++count;
  }
  return std::max(count, 1);
}

// Relative agreement expected of a value stored with the given digit count.
Scalar stored_tolerance(const std::string& text) {
  return Scalar::parse("1e-" + std::to_string(std::max(significant_digits(text) - 3, 1)));
}

}  // namespace

VerifyReport verify_result(const nlohmann::ordered_json& document) {
  VerifyReport report;
  RhoResult r;
  try {
    r = rho_result_from_json(document);
  } catch (const std::exception& e) {
    report.messages.push_back(std::string("malformed result: ") + e.what());
    return report;
  }
  PrecisionScope scope(r.bits);
  const LaguerreParam param(r.d);

  bool shape_ok = r.witness.param().d() == r.d && r.m == r.n / 2 + 1 && !r.witness.is_zero();
  for (const auto& [k, c] : r.witness.coeffs()) {
    if (!c.is_zero() && (k > r.n || !r.s.admits(k))) shape_ok = false;
  }
  if (!shape_ok) report.messages.push_back("witness does not match (d, s, n)");

  const Certificate cert = certify_expansion(r.witness, r.T.to_rational());
  report.certificate = shape_ok && cert.certified();
  report.messages.push_back(report.certificate ? "certificate: pass"
                                               : "certificate: FAIL (" + (cert.reason.empty() ? std::string("shape")
                                                                                               : cert.reason) +
                                                     ")");

  const Scalar two_lambda = ldexp(smallest_root(r.m, param), 1);
  const Scalar slack = precision_tolerance(4) * max(Scalar(1), two_lambda);
  const bool witness_bound = theorem_main_check(r);
  const bool stored_bound = r.T >= two_lambda - slack;
  report.sign_change_bound = witness_bound && stored_bound;
  if (report.sign_change_bound) {
    report.messages.push_back("sign change at or beyond 2 lambda: pass");
  } else {
    report.messages.push_back(std::string("sign change at or beyond 2 lambda: FAIL (") +
                              (witness_bound ? "stored T" : "witness") + " below 2 lambda = " +
                              format_decimal(two_lambda, 20) + ")");
  }

  try {
    const Scalar residual = quadrature_identity_check(r.witness);
    report.quadrature_identity = residual <= precision_tolerance(4);
    report.messages.push_back(std::string("quadrature identity: ") + (report.quadrature_identity ? "pass" : "FAIL") +
                              " (residual " + format_decimal(residual, 6) + ")");
  } catch (const PreconditionViolated& e) {
    report.messages.push_back(std::string("quadrature identity: FAIL (") + e.what() + ")");
  }

  const std::string rho_text = document["rho"].get<std::string>();
  const std::string lambda_text = document["two_lambda"].get<std::string>();
  const Scalar rho_expected = sqrt(r.T / ldexp(pi(), 1));
  const bool rho_ok = abs(r.rho - rho_expected) <= stored_tolerance(rho_text) * max(Scalar(1), rho_expected);
  const bool lambda_ok =
      abs(r.lower_bound_T - two_lambda) <= stored_tolerance(lambda_text) * max(Scalar(1), two_lambda);
  report.stored_values = shape_ok && rho_ok && lambda_ok;
  report.messages.push_back(std::string("stored rho and two_lambda: ") + (report.stored_values ? "pass" : "FAIL"));
  return report;
}

}  // namespace sul
