#pragma once

// Independent checks: exact Neyman-Pearson trade-offs, Monte Carlo estimates,
// finite differences, the three-term third-moment inequality and a
// brute-force sphere packing exponent.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "spb/measures.hpp"

namespace spb {

/// Atom of the law of S = sum_t ln(dW_t/dQ_t) on a product space. S = +inf on
/// Q-null points with W mass and -inf on W-null points with Q mass.
struct LogRatioAtom {
  double value;
  double log_q;  // ln Q(S = value)
  double log_w;  // ln W(S = value)
};

/// Sorted by value. Equal sums are merged within 1e-12 relative, so i.i.d.
/// components collapse to type classes. Throws BudgetExceededError when more
/// than budget atoms would be kept.
std::vector<LogRatioAtom> log_ratio_atoms(const std::vector<FiniteDist>& w_seq,
                                          const std::vector<FiniteDist>& q_seq,
                                          std::size_t budget);

struct NpPoint {
  double log_type1;  // ln Q(accept)
  double log_type2;  // ln W(reject)
  double type1() const { return std::exp(log_type1); }
  double type2() const { return std::exp(log_type2); }
};

/// Deterministic likelihood-ratio tests "accept iff S >= s", one point per
/// distinct threshold, from accept-nothing (0, 1) to accept-everything.
struct NpCurve {
  std::vector<NpPoint> points;  // increasing type I, non-increasing type II

  /// Smallest type II of a deterministic test with type I <= exp(log_budget).
  double log_type2_deterministic(double log_budget) const;
  /// Same over randomized tests (linear interpolation between vertices).
  double log_type2_randomized(double log_budget) const;
};

NpCurve exact_np_tradeoff(const std::vector<FiniteDist>& w_seq,
                          const std::vector<FiniteDist>& q_seq, std::size_t budget);

/// Seedable generator with portable uniform and normal draws: mt19937_64 bits,
/// 53-bit uniforms and Box-Muller normals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // in [0, 1)
  double normal();
  Index sample(const FiniteDist& p);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct McEstimate {
  double mean;
  double half_width_95;  // 1.96 sqrt(mean (1 - mean) / trials)
  long trials;
  std::uint64_t seed;
};

/// Fraction of trials on which event(rng) holds. Trials run in fixed-size
/// shards; shard k uses seed splitmix64(seed + k), so the estimate depends
/// only on (seed, trials) whatever the thread count. Requires trials >= 1e4.
McEstimate mc_event_probability(const std::function<bool(Rng&)>& event, long trials,
                                std::uint64_t seed);

/// Probability that a rule on the product sample y_1..y_n, y_t ~ dists[t],
/// returns true.
McEstimate mc_product_probability(const std::vector<FiniteDist>& dists,
                                  const std::function<bool(const std::vector<Index>&)>& rule,
                                  long trials, std::uint64_t seed);

/// Product of N(means[t], sigma2).
struct GaussianProduct {
  VectorXd means;
  double sigma2;
};

McEstimate mc_gaussian_probability(const GaussianProduct& dist,
                                   const std::function<bool(const VectorXd&)>& rule,
                                   long trials, std::uint64_t seed);

/// (f(x + step) - f(x - step)) / (2 step).
double fd_derivative_check(const std::function<double(double)>& f, double x, double step);

/// Three real random variables on a common finite space: row k of values
/// holds (X1, X2, X3) on the atom with probability prob(k).
struct JointTriple {
  VectorXd prob;
  Eigen::MatrixX3d values;
};

/// Independent coupling of three finitely supported variables.
JointTriple independent_triple(const VectorXd& v1, const FiniteDist& p1, const VectorXd& v2,
                               const FiniteDist& p2, const VectorXd& v3, const FiniteDist& p3);

struct MomentCheck {
  double lhs;  // E|X1 + X2 + X3|^3
  double rhs;  // 9 (E|X1|^3 + E|X2|^3 + E|X3|^3)
  bool holds;
};

MomentCheck third_moment_inequality_check(const JointTriple& t);

/// Dense-grid sup over rho = i/N of (1-rho)/rho (I_rho(P;W) - rate), clamped
/// at 0. Self-contained: plain fixed-point iteration warm-started down the
/// grid from rho = 1.
double brute_spe(const FiniteDist& p, const DiscreteChannel& channel, double rate,
                 int grid_size);

}  // namespace spb
