#include "spb/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spb/error.hpp"

namespace spb {

namespace {

void require_order(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw PreconditionError("order rho must be positive");
}

double safe_asin(double v) {
  if (v > 1.0 && v <= 1.0 + 1e-15) v = 1.0;
  if (v < -1.0 && v >= -1.0 - 1e-15) v = -1.0;
  return std::asin(v);
}

}  // namespace

void AwgnParams::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw PreconditionError("noise variance sigma2 must be positive");
  }
  if (!(cost > 0.0) || !std::isfinite(cost)) throw PreconditionError("power cost must be positive");
}

double theta_of_rho(double rho, const AwgnParams& params) {
  require_order(rho);
  params.validate();
  const double s = params.sigma2;
  const double h = 0.5 * params.cost - s / (2.0 * rho);
  const double root = std::sqrt(h * h + params.cost * s);
  if (h >= 0.0) return s + h + root;
  return s + params.cost * s / (root - h);
}

double theta_identity_residual(double rho, double theta, const AwgnParams& params) {
  const double lhs = rho * params.cost * theta;
  const double rhs = (theta - params.sigma2) * (rho * theta + (1.0 - rho) * params.sigma2);
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

double awgn_capacity(double rho, const AwgnParams& params) {
  require_order(rho);
  params.validate();
  const double s = params.sigma2;
  if (rho == 1.0) return 0.5 * std::log1p(params.cost / s);
  const double th = theta_of_rho(rho, params);
  const double d = rho * th + (1.0 - rho) * s;
  return rho * params.cost / (2.0 * d) +
         (0.5 * rho * std::log(th) + 0.5 * (1.0 - rho) * std::log(s) - 0.5 * std::log(d)) /
             (rho - 1.0);
}

AwgnPoint awgn_parametric(double rho, const AwgnParams& params) {
  if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("order rho must lie in (0,1)");
  const double th = theta_of_rho(rho, params);
  const double s = params.sigma2;
  const double c = params.cost;
  const double d = rho * th + (1.0 - rho) * s;
  AwgnPoint pt;
  pt.rho = rho;
  pt.theta = th;
  pt.rate = 0.5 * std::log(d / s);
  pt.esp = (1.0 - rho) * c / (2.0 * d) + 0.5 * std::log(d / th);
  const double g = th - s;
  pt.a2 = g * g / (2.0 * d * d) + s * th * c / (d * d * d);
  pt.a3_bound = 18.0 * g * g * g / (d * d * d) +
                18.0 * std::sqrt(2.0 / std::numbers::pi) * std::pow(s, 1.5) * std::pow(th, 1.5) *
                    std::pow(c, 1.5) / std::pow(d, 4.5);
  pt.log_delta_hat = ht_params_from_moments(pt.a2, pt.a3_bound).log_delta_hat;
  return pt;
}

double awgn_rho_star(double rate, const AwgnParams& params) {
  params.validate();
  const double cap = awgn_capacity(1.0, params);
  if (!(rate > 0.0 && rate < cap)) throw RateOutOfRangeError(rate, 0.0, cap);
  const double e = std::expm1(2.0 * rate);  // e^{2R} - 1
  return 0.5 * e * (std::sqrt(1.0 + 4.0 * params.sigma2 / params.cost * (e + 1.0) / e) - 1.0);
}

GaussianClosedForms gaussian_closed_forms(double rho, double x, double theta,
                                          const AwgnParams& params) {
  if (!(theta > 0.0)) throw PreconditionError("center variance theta must be positive");
  if (!(rho > 0.0)) throw PreconditionError("order rho must be positive");
  const double s = params.sigma2;
  if (!(s > 0.0)) throw PreconditionError("noise variance sigma2 must be positive");
  const double d = rho * theta + (1.0 - rho) * s;
  return {(s + x * x - theta) / (2.0 * theta) + 0.5 * std::log(theta / s), rho * theta * x / d,
          s * theta / d};
}

double cone_G(double angle, const AwgnParams& params) {
  const double a = std::sqrt(params.cost / params.sigma2);
  const double c = std::cos(angle);
  return 0.5 * (a * c + std::sqrt(a * a * c * c + 4.0));
}

double cone_critical_residual(double angle, const AwgnParams& params) {
  const double a = std::sqrt(params.cost / params.sigma2);
  const double s = std::sin(angle);
  return 2.0 * std::cos(angle) - a * cone_G(angle, params) * s * s;
}

ConeQuantities shannon_cone(double rate, const AwgnParams& params) {
  params.validate();
  const double cap = awgn_capacity(1.0, params);
  if (!(rate > 0.0 && rate < cap)) throw RateOutOfRangeError(rate, 0.0, cap);
  const double snr = params.cost / params.sigma2;
  const double a = std::sqrt(snr);
  ConeQuantities cq;
  cq.xi = safe_asin(std::exp(-rate));
  cq.G_of_xi = cone_G(cq.xi, params);
  cq.sgex = 0.5 * snr - 0.5 * a * cq.G_of_xi * std::cos(cq.xi) -
            std::log(cq.G_of_xi * std::sin(cq.xi));
  cq.theta_c = safe_asin(1.0 / std::sqrt(1.0 + snr));
  cq.theta_cr = safe_asin(
      1.0 / std::sqrt(0.5 + snr / 4.0 + std::sqrt(0.25 + (snr / 4.0) * (snr / 4.0))));
  return cq;
}

}  // namespace spb
