#include "spb/htbe.hpp"

#include <cmath>
#include <numbers>

#include "spb/error.hpp"
#include "spb/oracle.hpp"

namespace spb {

namespace {

void require_sequences(double rho, const std::vector<FiniteDist>& w_seq,
                       const std::vector<FiniteDist>& q_seq) {
  if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("order rho must lie in (0,1)");
  if (w_seq.empty() || w_seq.size() != q_seq.size()) {
    throw PreconditionError("W and Q sequences must be non-empty and of equal length");
  }
}

void require_bound_args(double rho, long n, double beta) {
  if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("order rho must lie in (0,1)");
  if (n < 1) throw PreconditionError("blocklength n must be positive");
  if (!(beta > 0.0)) throw PreconditionError("beta must be positive");
}

HtBoundReport window(double rho, long n, double beta, const HtParams& params,
                     double d1_tq_total) {
  HtBoundReport r;
  const double half_log_n = 0.5 * std::log(double(n));
  const double spread = rho * std::sqrt(params.a2 * double(n));
  r.q_budget_log = std::log(beta) - d1_tq_total;
  r.log_beta_min = -half_log_n - spread;
  r.log_beta_max = -rho * params.log_delta_hat - half_log_n + spread;
  const double lb = std::log(beta);
  r.applicable = r.log_beta_min <= r.log_beta_max && lb >= r.log_beta_min && lb <= r.log_beta_max;
  return r;
}

}  // namespace

HtParams ht_params_from_moments(double a2, double a3) {
  if (!(a2 > 0.0)) throw DegenerateError("a2 vanishes: the log-likelihood ratio is a.s. constant");
  if (!(a3 >= 0.0)) throw PreconditionError("a3 must be non-negative");
  const double c = 2.0 * std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
  return {a2, a3, c * (kBerryEsseen * a3 / a2 + std::sqrt(a2))};
}

HtParams ht_params(double rho, const std::vector<FiniteDist>& w_seq,
                   const std::vector<FiniteDist>& q_seq) {
  require_sequences(rho, w_seq, q_seq);
  double a2 = 0.0;
  double a3 = 0.0;
  for (std::size_t t = 0; t < w_seq.size(); ++t) {
    const LogMoments m = tilted_log_moments(rho, w_seq[t], q_seq[t]);
    a2 += m.a2;
    a3 += m.a3;
  }
  const double n = double(w_seq.size());
  if (a2 / n <= 1e-300) {
    throw DegenerateError("a2 vanishes: every component has an a.s. constant log-likelihood ratio");
  }
  return ht_params_from_moments(a2 / n, a3 / n);
}

TiltTotals tilt_totals(double rho, const std::vector<FiniteDist>& w_seq,
                       const std::vector<FiniteDist>& q_seq) {
  require_sequences(rho, w_seq, q_seq);
  TiltTotals tot{0.0, 0.0};
  for (std::size_t t = 0; t < w_seq.size(); ++t) {
    const FiniteDist v = tilted_measure(rho, w_seq[t], q_seq[t]);
    tot.d1_tq += kl_divergence(v, q_seq[t]);
    tot.d1_tw += kl_divergence(v, w_seq[t]);
  }
  return tot;
}

HtBoundReport htbe_converse(double rho, long n, double beta, const HtParams& params,
                            double d1_tq_total, double d1_tw_total) {
  require_bound_args(rho, n, beta);
  HtBoundReport r = window(rho, n, beta, params, d1_tq_total);
  r.converse_log = (rho - 1.0) * params.log_delta_hat + (rho - 1.0) / rho * std::log(beta) -
                   std::log(double(n)) / (2.0 * rho) - d1_tw_total;
  return r;
}

HtBoundReport htbe_achievability(double rho, long n, double beta, const HtParams& params,
                                 double d1_tq_total, double d1_tw_total) {
  require_bound_args(rho, n, beta);
  HtBoundReport r = window(rho, n, beta, params, d1_tq_total);
  const double pi = std::numbers::pi;
  const double lead =
      std::max(1.0, std::sqrt(8.0 * pi * params.a2)) / (4.0 * pi * params.a2) * params.log_delta_hat;
  r.achievability_w_log = std::log(lead) / rho + (rho - 1.0) / rho * std::log(rho * beta) -
                          std::log1p(-rho) - std::log(double(n)) / (2.0 * rho) - d1_tw_total;
  return r;
}

double be_gap(double a2, double a3, long n) {
  if (!(a2 > 0.0)) throw PreconditionError("a2 must be positive");
  if (n < 1) throw PreconditionError("blocklength n must be positive");
  return kBerryEsseen * a3 / (a2 * std::sqrt(a2 * double(n)));
}

double proof_gamma(double rho, long n, double beta, const HtParams& params) {
  require_bound_args(rho, n, beta);
  const double a2 = params.a2;
  const double mass = 1.0 / std::sqrt(2.0 * std::numbers::pi * a2) +
                      2.0 * kBerryEsseen * params.a3 / (a2 * std::sqrt(a2));
  return (std::log(mass) - 0.5 * std::log(double(n)) - std::log(beta) -
          std::log(-std::expm1(-rho))) /
         rho;
}

bool ThresholdTest::accepts(double log_ratio_sum) const {
  if (log_ratio_sum == kInf) return true;
  if (gamma == -kInf) return true;
  return log_ratio_sum >= threshold();
}

ThresholdTest threshold_test(double gamma, const std::vector<FiniteDist>& w_seq,
                             const std::vector<FiniteDist>& q_seq, double rho,
                             std::size_t budget) {
  require_sequences(rho, w_seq, q_seq);
  if (std::isnan(gamma)) throw PreconditionError("gamma must not be NaN");
  ThresholdTest test{gamma, 0.0, {}, {}, {}, {}};
  for (std::size_t t = 0; t < w_seq.size(); ++t) {
    test.center += tilted_log_moments(rho, w_seq[t], q_seq[t]).mean;
  }
  try {
    const auto atoms = log_ratio_atoms(w_seq, q_seq, budget);
    double lq = -kInf;
    double lw = -kInf;
    for (const auto& a : atoms) {
      if (test.accepts(a.value)) {
        lq = log_add(lq, a.log_q);
      } else {
        lw = log_add(lw, a.log_w);
      }
    }
    test.log_type1 = lq;
    test.log_type2 = lw;
    test.type1 = std::exp(lq);
    test.type2 = std::exp(lw);
  } catch (const BudgetExceededError&) {
    // rule only
  }
  return test;
}

}  // namespace spb
