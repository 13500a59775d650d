#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lcq {

// Per-statement verification record. `verdict == Fail` is reserved for
// deficits beyond three combined standard errors plus deterministic
// tolerance; unspecified absolute constants are never asserted, only
// reported through `empirical_constant`.
struct VerificationReport {
  enum class Hypo { Satisfied, Violated, NotApplicable };
  enum class Verdict { Pass, Fail, ReportOnly, NotApplicable };

  std::string statement_id;
  Hypo hypothesis_status = Hypo::Satisfied;
  double lhs = 0.0, rhs = 0.0;
  double lhs_stderr = 0.0, rhs_stderr = 0.0;
  std::optional<double> explicit_constant;
  Verdict verdict = Verdict::ReportOnly;
  std::optional<double> empirical_constant;
  uint64_t seed = 0;
  int64_t runtime_ms = 0;
  std::vector<std::string> caveats;
  nlohmann::ordered_json details;

  bool failed() const { return verdict == Verdict::Fail; }

  // Applies the soundness rule: pass iff lhs <= rhs + 3*combined stderr +
  // deterministic tolerance. A violated hypothesis forces NotApplicable.
  void assert_le(double lhs_value, double rhs_value, double lhs_se, double rhs_se,
                 double det_tol = 1e-9);
  // Report-only entry: records both sides and the empirical constant.
  void report_ratio(double lhs_value, double rhs_value, double lhs_se, double rhs_se);

  nlohmann::ordered_json to_json() const;
};

std::string to_string(VerificationReport::Verdict v);
std::string to_string(VerificationReport::Hypo h);

}  // namespace lcq
