#pragma once

// Sphere packing exponent E_sp(R, W, P) = sup_{rho in (0,1)} (1-rho)/rho (I_rho(P;W) - R).

#include "spb/augustin.hpp"

namespace spb {

struct SpePoint {
  double rate;
  double rho_star;
  double exponent;  // E_sp
  double slope;     // dE_sp/dR = (rho* - 1)/rho*
};

/// Rates (I_rho at rho = 1e-6, I_1) bracketing the parametric form. The lower
/// end stands in for the rho -> 0 limit.
struct RateRange {
  double lower;
  double upper;
};

inline constexpr double kRhoFloor = 1e-9;
inline constexpr double kLowerLimitOrder = 1e-6;

RateRange spe_rate_range(const FiniteDist& p, const DiscreteChannel& channel);

/// Parametric form: rho* solves haroutunian_rate(rho*) = rate, found by
/// bisection over [1e-9, 1 - 1e-9]; exponent = D_1(W_{rho*}^q || W | P).
/// Throws RateOutOfRangeError outside the open rate range and
/// DegenerateError when the range is empty.
SpePoint spe_parametric(const FiniteDist& p, const DiscreteChannel& channel, double rate);

/// max over rho in {1/N, ..., N/N} of (1-rho)/rho (I_rho - rate), clamped at 0.
/// Requires grid_size >= 64.
double spe_grid_sup(const FiniteDist& p, const DiscreteChannel& channel, double rate,
                    int grid_size);

struct SpeConstrained {
  double value;
  FiniteDist argmax;
  double rho;      // maximizing order
  bool certified;  // capacity certificates held along the search
};

/// sup over P in the constraint set of E_sp(R, W, P), computed as
/// sup_rho (1-rho)/rho (C_{rho,Gamma} - R) with certified capacities.
SpeConstrained spe_constrained(const DiscreteChannel& channel, const ConstraintSet& constraint,
                               double rate);

}  // namespace spb
