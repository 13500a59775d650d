#include "lcq/report.hpp"

#include <cmath>

namespace lcq {

void VerificationReport::assert_le(double lhs_value, double rhs_value, double lhs_se,
                                   double rhs_se, double det_tol) {
  lhs = lhs_value;
  rhs = rhs_value;
  lhs_stderr = lhs_se;
  rhs_stderr = rhs_se;
  if (hypothesis_status == Hypo::Violated) {
    verdict = Verdict::NotApplicable;
    return;
  }
  const double slack = 3.0 * std::sqrt(lhs_se * lhs_se + rhs_se * rhs_se) +
                       det_tol * std::max({1.0, std::fabs(lhs_value), std::fabs(rhs_value)});
  verdict = lhs_value <= rhs_value + slack ? Verdict::Pass : Verdict::Fail;
}

void VerificationReport::report_ratio(double lhs_value, double rhs_value, double lhs_se,
                                      double rhs_se) {
  lhs = lhs_value;
  rhs = rhs_value;
  lhs_stderr = lhs_se;
  rhs_stderr = rhs_se;
  verdict = hypothesis_status == Hypo::Violated ? Verdict::NotApplicable : Verdict::ReportOnly;
  if (rhs_value != 0.0) empirical_constant = lhs_value / rhs_value;
}

std::string to_string(VerificationReport::Verdict v) {
  switch (v) {
    case VerificationReport::Verdict::Pass:
      return "pass";
    case VerificationReport::Verdict::Fail:
      return "fail";
    case VerificationReport::Verdict::ReportOnly:
      return "report-only";
    default:
      return "not-applicable";
  }
}

std::string to_string(VerificationReport::Hypo h) {
  switch (h) {
    case VerificationReport::Hypo::Satisfied:
      return "satisfied";
    case VerificationReport::Hypo::Violated:
      return "violated";
    default:
      return "not-applicable";
  }
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = statement_id;
  j["verdict"] = to_string(verdict);
  j["hypothesis"] = to_string(hypothesis_status);
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["stderr"] = std::sqrt(lhs_stderr * lhs_stderr + rhs_stderr * rhs_stderr);
  if (explicit_constant)
    j["constant"] = *explicit_constant;
  else
    j["constant"] = nullptr;
  if (empirical_constant)
    j["empirical_constant"] = *empirical_constant;
  else
    j["empirical_constant"] = nullptr;
  j["seed"] = seed;
  j["caveats"] = caveats;
  j["runtime_ms"] = runtime_ms;
  if (!details.is_null()) j["details"] = details;
  return j;
}

}  // namespace lcq
