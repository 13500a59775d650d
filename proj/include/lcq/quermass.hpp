#pragma once

#include <json.hpp>

#include "lcq/function.hpp"
#include "lcq/mc.hpp"
#include "lcq/projection.hpp"
#include "lcq/report.hpp"
#include "lcq/starbody.hpp"

namespace lcq {

struct QuermassResult {
  enum class Kind { Psi, Phi, PhiPrime, W };
  Kind kind = Kind::Psi;
  int k = 0;
  McEstimate value;
  nlohmann::ordered_json decomposition;
  std::vector<std::string> caveats;
};

// Psi_k(f) = ( int_{G_{n,k}} ||f|_{E^perp}||_1^n dnu )^{1/(kn)}. Inner section
// masses run at a fixed per-subspace budget so the outer n-th powers carry a
// documented O(n^2 var/mass^2) bias, kept below 0.5% at the default budgets.
QuermassResult psi_k(const FunctionDescriptor& f, int k, const McSpec& mc);

// Psi_k(f) <= sqrt(e) ||f||_inf^{1/n} ||f||_1^{(n-k)/(kn)} (asserted).
VerificationReport psi_upper_check(const FunctionDescriptor& f, int k, const McSpec& mc);
// Psi_k(f) >= c f(0)^{1/n} ||f||_1^{(n-k)/(kn)}: c is an unspecified absolute,
// so only positivity is asserted and the empirical c is reported.
VerificationReport psi_lower_report(const FunctionDescriptor& f, int k, const McSpec& mc);
// s-concave version: upper bound asserted, empirical lower constant reported
// after dividing out delta_{n,k,s}^{(n-k)/k}.
VerificationReport psi_s_concave_check(const FunctionDescriptor& f, int k, const McSpec& mc);

// Psi_k of a star body (sections of K), for the cross-module identity
// Psi_k(f) = f(0)^{1/k} Psi_k(K_{n-k}(f)).
McEstimate psi_k_body(const StarBody& K, int k, const McSpec& mc);

// Phi_k(K) = ( int_{G_{n,k}} |P_E(K)|^{-n} dnu )^{-1/(kn)}; projected volumes
// by hit-or-miss Monte Carlo over fiber feasibility.
McEstimate phi_k_body(const StarBody& K, int k, const McSpec& mc);

// Phi_k(f) = ( int_0^sup (Phi_k(R_t(f)))^n dt )^{1/n} via the level grid and
// projected radial profiles.
QuermassResult phi_k(const FunctionDescriptor& f, int k, const McSpec& mc);

// Phi'_k(f) = int_0^sup Phi_k(R_t(f)) dt; Phi'_k <= Phi_k for geometric f.
QuermassResult phi_prime_k(const FunctionDescriptor& f, int k, const McSpec& mc);

// Level-wise sandwich: the functional constant c_f = Phi_k(f) / (sqrt(n/k)
// ||f||_1^{1/n}) lies between the extreme per-level body constants
// Phi_k(R_t)/(sqrt(n/k) |R_t|^{1/n}); asserted, empirical constants reported.
VerificationReport phi_bounds_check(const FunctionDescriptor& f, int k, const McSpec& mc);

// W_k(f) by the projection average (omega_n/omega_{n-k}) int ||P_E f||_1 dnu
// over G_{n,n-k}; cross-checked against the per-level Kubota route
// int_0^sup W_k(R_t(f)) dt. k = 0 returns ||f||_1.
QuermassResult w_k(const FunctionDescriptor& f, int k, const McSpec& mc);

// Milman-Rotem monotonicity: k -> (W_k(f)/W_k(u))^{1/(n-k)} nondecreasing,
// and the explicit Aleksandrov-type inequality
// ||f||_1^{(n-k)/n} <= (n!)^{(n-k)/n} / ((n-k)! omega_n^{k/n}) W_k(f).
VerificationReport aleksandrov_monotonicity_check(const FunctionDescriptor& f, const McSpec& mc);

}  // namespace lcq
