#pragma once

// Finite probability distributions, discrete channels, Renyi divergences and
// tilted measures. All quantities are in nats.

#include <Eigen/Dense>

#include "spb/numeric.hpp"

namespace spb {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Probability vector over an indexed finite alphabet.
class FiniteDist {
 public:
  /// Validates non-negativity and |sum - 1| <= tol, then renormalizes.
  explicit FiniteDist(VectorXd masses, double tol = 1e-12);

  static FiniteDist uniform(Index size);
  static FiniteDist point_mass(Index size, Index at);
  /// Two-point law (1 - p, p); p is the probability of symbol 1.
  static FiniteDist bernoulli(double p);

  Index size() const { return masses_.size(); }
  double operator[](Index i) const { return masses_(i); }
  const VectorXd& masses() const { return masses_; }

  double total_variation(const FiniteDist& other) const;

 private:
  VectorXd masses_;
};

/// W: X -> P(Y) stored as an |X| x |Y| row-stochastic matrix.
class DiscreteChannel {
 public:
  explicit DiscreteChannel(MatrixXd rows, double tol = 1e-12);

  static DiscreteChannel bsc(double p);
  /// Outputs ordered {0, erasure, 1}.
  static DiscreteChannel bec(double erasure);
  /// W(0) = delta_0, W(1) = Bernoulli(p).
  static DiscreteChannel z_channel(double p);

  Index inputs() const { return rows_.rows(); }
  Index outputs() const { return rows_.cols(); }
  const MatrixXd& matrix() const { return rows_; }
  FiniteDist row(Index x) const;

  /// Output distribution sum_x p(x) W(x).
  FiniteDist mix(const FiniteDist& p) const;

 private:
  MatrixXd rows_;
};

/// Product channel W1 x W2 with inputs and outputs in row-major pair order
/// (first component varies slowest).
DiscreteChannel product(const DiscreteChannel& a, const DiscreteChannel& b);
FiniteDist product(const FiniteDist& a, const FiniteDist& b);

/// Order-rho Renyi divergence D_rho(w || q) in nats; +inf when infinite.
double renyi_divergence(double rho, const FiniteDist& w, const FiniteDist& q);

inline double kl_divergence(const FiniteDist& w, const FiniteDist& q) {
  return renyi_divergence(1.0, w, q);
}

/// Tilted measure proportional to w^rho q^(1-rho).
FiniteDist tilted_measure(double rho, const FiniteDist& w, const FiniteDist& q);

/// sum_x p(x) D_rho(W(x) || q); inputs outside the support of p are ignored.
double conditional_renyi_divergence(double rho, const DiscreteChannel& channel,
                                    const FiniteDist& q, const FiniteDist& p);

/// Row x is tilted_measure(rho, W(x), q).
DiscreteChannel tilted_channel(double rho, const DiscreteChannel& channel,
                               const FiniteDist& q);

/// Moments of L = ln(w/q) under the tilted measure, over supp(q).
struct LogMoments {
  double mean = 0.0;
  double a2 = 0.0;  // second central moment
  double a3 = 0.0;  // third central absolute moment
};

LogMoments tilted_log_moments(double rho, const FiniteDist& w, const FiniteDist& q);

/// Largest violation of the variational identity and of the two pointwise
/// log-likelihood identities for the tilted measure. Requires rho in (0,1).
double identity_residuals(double rho, const FiniteDist& w, const FiniteDist& q);

}  // namespace spb
