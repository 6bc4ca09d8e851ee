#pragma once

// Closed forms for the additive white Gaussian noise channel with noise
// variance sigma2 and average power budget cost, in nats.

#include "spb/htbe.hpp"

namespace spb {

struct AwgnParams {
  double sigma2;
  double cost;
  /// Throws PreconditionError unless both are positive.
  void validate() const;
};

struct AwgnPoint {
  double rho;
  double theta;     // variance of the Augustin center N(0, theta)
  double rate;
  double esp;
  double a2;
  double a3_bound;  // closed-form upper bound on the third absolute moment
  double log_delta_hat;
  double delta_hat() const { return std::exp(log_delta_hat); }
};

struct ConeQuantities {
  double xi;        // arcsin(e^{-rate})
  double theta_c;   // cone angle at capacity
  double theta_cr;  // critical cone angle
  double G_of_xi;
  double sgex;      // fixed cone angle exponent at xi
};

/// theta_rho = sigma2 + cost/2 - sigma2/(2 rho) + sqrt((cost/2 - sigma2/(2 rho))^2 + cost sigma2).
double theta_of_rho(double rho, const AwgnParams& params);

/// Relative residual of rho cost theta = (theta - sigma2)(rho theta + (1 - rho) sigma2).
double theta_identity_residual(double rho, double theta, const AwgnParams& params);

/// Order-rho Augustin capacity for any rho > 0; half ln(1 + cost/sigma2) at rho = 1.
double awgn_capacity(double rho, const AwgnParams& params);

/// Parametric rate and exponent at rho in (0,1) with the moment constants of
/// the tilted channel at input amplitude sqrt(cost).
AwgnPoint awgn_parametric(double rho, const AwgnParams& params);

/// Order whose parametric rate equals rate, for 0 < rate < C_1.
double awgn_rho_star(double rate, const AwgnParams& params);

struct GaussianClosedForms {
  double d1_to_center;  // D_1(N(x, sigma2) || N(0, theta))
  double tilted_mean;
  double tilted_var;
};

GaussianClosedForms gaussian_closed_forms(double rho, double x, double theta,
                                          const AwgnParams& params);

/// Cone-angle quantities at 0 < rate < C_1.
ConeQuantities shannon_cone(double rate, const AwgnParams& params);

/// G(angle) = ((sqrt(cost)/sigma) cos a + sqrt((cost/sigma2) cos^2 a + 4)) / 2.
double cone_G(double angle, const AwgnParams& params);

/// 2 cos a - (sqrt(cost)/sigma) G(a) sin^2 a; zero at the critical angle.
double cone_critical_residual(double angle, const AwgnParams& params);

}  // namespace spb
