#pragma once

// Renyi symmetric channels: the law of ln(dW(x)/dq_rho) under W(x) does not
// depend on x, with q_rho the power-mean center of the uniform input.

#include <string>
#include <vector>

#include "spb/spe.hpp"

namespace spb {

struct SymmetricCenter {
  FiniteDist center;
  double capacity;
};

/// center proportional to (sum_x W(y|x)^rho / |X|)^{1/rho};
/// capacity = rho/(rho - 1) ln ||m_rho||_1. At rho = 1 the uniform mixture and
/// the mutual information of the uniform input.
SymmetricCenter symmetric_center(double rho, const DiscreteChannel& channel);

/// {0.05, 0.10, ..., 0.95, 1}.
std::vector<double> default_symmetry_grid();

struct SymmetryReport {
  bool is_symmetric;
  std::vector<double> checked_orders;
  std::vector<FiniteDist> center_per_order;
  double max_divergence_spread;  // max_x D_rho(W(x)||q) - min_x D_rho(W(x)||q)
  double max_profile_distance;   // between merged (log-ratio, mass) profiles
  double max_center_mismatch;    // TV to the augustin_capacity center
  std::string failure;           // first failing order, empty when symmetric
};

SymmetryReport check_renyi_symmetry(const DiscreteChannel& channel,
                                    const std::vector<double>& rho_grid = default_symmetry_grid(),
                                    double tol = 1e-9);

/// Tilted quantities of input x against the symmetric center at order rho.
struct SymmetricTilt {
  SymmetricCenter center;
  double rate;      // D_1(W_rho^{q}(x) || q)
  double exponent;  // D_1(W_rho^{q}(x) || W(x))
  LogMoments moments;
};

SymmetricTilt symmetric_tilt(double rho, const DiscreteChannel& channel, Index x = 0);

struct SymmetricSpePoint {
  SpePoint point;
  bool slope_certified;
  /// "log-ratio spread", "order-independent center" or empty.
  std::string certificate;
};

/// Parametric solution for a Renyi symmetric channel: bisection on
/// rho -> D_1(W_rho^{q_rho}(x) || q_rho). Throws PreconditionError when the
/// symmetry check fails and RateOutOfRangeError outside (C_{1e-6}, C_1).
SymmetricSpePoint parametric_symmetric(const DiscreteChannel& channel, double rate);

}  // namespace spb
