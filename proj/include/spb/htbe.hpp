#pragma once

// Berry-Esseen based bounds on the binary hypothesis testing trade-off between
// product measures W = (x)_t W_t and Q = (x)_t Q_t, stated around the tilted
// measure of order rho. Everything is in the log domain.

#include <optional>
#include <vector>

#include "spb/measures.hpp"

namespace spb {

inline constexpr double kBerryEsseen = 0.56;

struct HtParams {
  double a2;  // average second central moment of ln(dW_t/dQ_t) under the tilt
  double a3;  // average third central absolute moment
  double log_delta_hat;  // 2 sqrt(2 pi e) (0.56 a3/a2 + sqrt(a2))
  double delta_hat() const { return std::exp(log_delta_hat); }
};

/// Params from explicit moments; a2 must be positive.
HtParams ht_params_from_moments(double a2, double a3);

/// Averages of tilted_log_moments over the components. Requires rho in (0,1),
/// equal non-empty sequences and finite divergences; throws DegenerateError
/// when a2 vanishes.
HtParams ht_params(double rho, const std::vector<FiniteDist>& w_seq,
                   const std::vector<FiniteDist>& q_seq);

/// Sums over components of D_1(tilt || Q_t) and D_1(tilt || W_t).
struct TiltTotals {
  double d1_tq;
  double d1_tw;
};

TiltTotals tilt_totals(double rho, const std::vector<FiniteDist>& w_seq,
                       const std::vector<FiniteDist>& q_seq);

struct HtBoundReport {
  std::optional<double> converse_log;
  std::optional<double> achievability_w_log;
  double q_budget_log;  // ln beta - d1_tq_total
  double log_beta_min;  // -ln(n)/2 - rho sqrt(a2 n)
  double log_beta_max;  // -rho ln(delta_hat) - ln(n)/2 + rho sqrt(a2 n)
  bool applicable;      // beta inside the window
};

/// Lower bound on W(reject) for every event with Q(accept) <= beta e^{-d1_tq}.
HtBoundReport htbe_converse(double rho, long n, double beta, const HtParams& params,
                            double d1_tq_total, double d1_tw_total);

/// Upper bound on W(reject) of an event with Q(accept) <= beta e^{-d1_tq}.
HtBoundReport htbe_achievability(double rho, long n, double beta, const HtParams& params,
                                 double d1_tq_total, double d1_tw_total);

/// omega a3 / (a2 sqrt(a2 n)) with omega = 0.56.
double be_gap(double a2, double a3, long n);

/// Threshold at which the achievability event meets its Q-side budget.
double proof_gamma(double rho, long n, double beta, const HtParams& params);

/// Test "accept iff sum_t ln(dW_t/dQ_t) >= center + gamma", where center is
/// the tilted mean of the sum, and always accept Q-null points with W mass.
struct ThresholdTest {
  double gamma;
  double center;
  double threshold() const { return center + gamma; }
  bool accepts(double log_ratio_sum) const;

  std::optional<double> type1;  // Q(accept)
  std::optional<double> type2;  // W(reject)
  std::optional<double> log_type1;
  std::optional<double> log_type2;
};

/// Builds the test; fills the exact error probabilities when the log-ratio
/// enumeration fits in budget atoms.
ThresholdTest threshold_test(double gamma, const std::vector<FiniteDist>& w_seq,
                             const std::vector<FiniteDist>& q_seq, double rho,
                             std::size_t budget = 1u << 20);

}  // namespace spb
