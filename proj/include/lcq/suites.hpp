#pragma once

#include <string>
#include <vector>

#include "lcq/config.hpp"
#include "lcq/function.hpp"
#include "lcq/mc.hpp"
#include "lcq/report.hpp"
#include "lcq/starbody.hpp"

namespace lcq {

// Section/projection comparison (Milman's question, log-concave form):
// if ||P_E f||_1 <= ||g|_E||_1 for all E in G_{n,n-k} then
// ||f||_1 <= n!/((n-k)!)^{n/(n-k)} ||g||_1. The hypothesis is checked on a
// sampled subspace set (caveat recorded); the conclusion carries the exact
// Stirling-ratio constant.
VerificationReport suite_mixed(const FunctionDescriptor& f, const FunctionDescriptor& g, int k,
                               const McSpec& mc);

// Radon-transform quotient theorem: asserts the explicit proof skeleton
// (ball-body identities and inclusions) and reports the empirical absolute
// constant of the quotient inequality.
VerificationReport suite_quotient(const FunctionDescriptor& f, const FunctionDescriptor& g,
                                  const StarBody& K, const StarBody& T, int k, const McSpec& mc);

// Corollary with |K|^{k/n} on the right-hand side (report-only constant).
VerificationReport suite_corollary_quotient(const FunctionDescriptor& f,
                                            const FunctionDescriptor& g, const StarBody& K,
                                            const StarBody& T, int k, const McSpec& mc);

// Slicing inequality for geometric log-concave f: empirical constant plus the
// explicit chain int_K f <= |K| and omega_n^{(n-k)/n}/omega_{n-k} <= 1.
VerificationReport suite_slicing(const FunctionDescriptor& f, const StarBody& K, int k,
                                 const McSpec& mc);

// Mean-value inequality for the Radon transform (report-only).
VerificationReport suite_mean_value(const FunctionDescriptor& f, const StarBody& K, int k,
                                    const McSpec& mc);

// Volume-ratio form (f = g = 1): report-only empirical constant.
VerificationReport suite_volume_ratio(const StarBody& K, const StarBody& T, int k,
                                      const McSpec& mc);

// s-concave quotient: asserts K_n(f_K) subset delta_{n,k,s} K_{n-k}(f_K)
// radially and reports the empirical constant after dividing out
// delta^{n-k}.
VerificationReport suite_quotient_s(const FunctionDescriptor& f, const FunctionDescriptor& g,
                                    const StarBody& K, const StarBody& T, int k, const McSpec& mc);

// Shephard-type estimate: hypothesis |R_t(P_E f)| <= |R_t(P_E g)| on a
// sampled (E, t) grid, conclusion with the explicit n^{k/2} bound; the
// alternative S~ bound is recorded report-only.
VerificationReport suite_shephard(const FunctionDescriptor& f, const FunctionDescriptor& g, int k,
                                  const McSpec& mc);

// Busemann-Straus/Grinberg body inequality plus the dual affine
// quermassintegral upper bound with the e^{k/2} constant.
VerificationReport suite_dual_grinberg_body(const StarBody& K, int k, const McSpec& mc);

struct StatementInfo {
  std::string id;
  std::string description;
};
const std::vector<StatementInfo>& statement_registry();

struct RunReport {
  nlohmann::ordered_json json;
  bool any_fail = false;
};

// Executes the requested suites over the configured function/body grid and
// assembles the machine-readable report (deterministic statement order).
RunReport run(const RunConfig& cfg);

}  // namespace lcq
