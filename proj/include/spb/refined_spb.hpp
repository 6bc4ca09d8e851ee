#pragma once

// Refined sphere packing bounds: lower bounds on the error probability of
// (M, L) list codes of the form A n^{-1/(2 rho*)} e^{-n E_sp(R)}, in the log
// domain. Only ln M - ln L enters.

#include <string>
#include <vector>

#include "spb/gaussian.hpp"
#include "spb/htbe.hpp"
#include "spb/spe.hpp"
#include "spb/symmetric.hpp"

namespace spb {

struct RspbReport {
  double rate;
  long n;
  double rho_star;
  double exponent_total;
  double log_prefactor;  // (rho* - 1) ln delta_hat - ln(4n) / (2 rho*)
  double bound_log;      // log_prefactor - exponent_total
  double condition_lhs;  // sqrt(a2 n) - ln(4n) / (2 rho*)
  double condition_rhs;  // ln delta_hat
  bool applicable;       // condition_lhs >= condition_rhs
  HtParams params;
  bool slope_certified = true;

  // Gaussian reports also carry the condition as printed in the equality
  // theorem: sqrt(a2 n) - ln(n) / (2 rho*) >= delta_hat.
  double printed_condition_lhs = kNaN;
  double printed_condition_rhs = kNaN;
  bool printed_applicable = false;
};

/// Constant composition codes: composition P with n P(x) integral (within
/// 1e-9) and R = log_M_over_L / n inside the parametric rate range.
RspbReport rspb_constant_composition(const DiscreteChannel& channel, const FiniteDist& composition,
                                     long n, double log_M_over_L);

/// Product of Renyi symmetric channels W_1, ..., W_n.
RspbReport rspb_symmetric(const std::vector<DiscreteChannel>& channels, double log_M_over_L);

/// AWGN codes meeting the power constraint with equality.
RspbReport rspb_awgn_equality(long n, double log_M_over_L, const AwgnParams& params);

enum class AwgnExtension { shannon, vazquez_vilar };

/// AWGN codes meeting the power constraint with inequality: the equality
/// theorem at blocklength n + 1 (cost unchanged for shannon, n cost/(n + 1)
/// for vazquez_vilar) transferred to rate R = log_M_over_L / n through the
/// tangent of E_sp at R0 = log_M_over_L / (n + 1). Here rho_star is rho(R0),
/// log_prefactor = (rho0 - 1) ln delta_hat - ln(8n) / (2 rho0)
/// - (1 - rho0)/rho0 C_{rho0}, exponent_total = n E_sp(R), and the condition
/// is the equality one at n + 1.
RspbReport rspb_awgn_inequality(long n, double log_M_over_L, const AwgnParams& params,
                                AwgnExtension extension);

}  // namespace spb
