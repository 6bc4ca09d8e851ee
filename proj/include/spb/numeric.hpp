#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

namespace spb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// log(sum(exp(x))) with a max shift. Entries equal to -inf are skipped;
/// returns -inf for an empty or all -inf argument.
template <typename Derived>
double log_sum_exp(const Eigen::DenseBase<Derived>& x) {
  double hi = -kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) hi = std::max(hi, double(x(i)));
  if (hi == -kInf) return -kInf;
  if (hi == kInf) return kInf;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::exp(double(x(i)) - hi);
  return hi + std::log(s);
}

/// Elementwise exp with exp(-inf) = 0 exactly; Eigen's packet exp flushes
/// very negative arguments to a denormal instead.
template <typename Derived>
auto exp_exact(const Eigen::ArrayBase<Derived>& x) {
  return x.unaryExpr([](double v) { return std::exp(v); });
}

/// log(exp(a) + exp(b)).
inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

/// log(1 - exp(a)) for a <= 0.
inline double log1m_exp(double a) {
  if (a > -0.6931471805599453) return std::log(-std::expm1(a));
  return std::log1p(-std::exp(a));
}

struct BisectionResult {
  double x;
  double value;  // f(x)
  int iterations;
};

/// Solves f(x) = target for a non-decreasing f on [lo, hi]. Stops when
/// |f(x) - target| <= value_tol or the bracket is narrower than x_tol.
BisectionResult bisect_increasing(const std::function<double(double)>& f,
                                  double target, double lo, double hi,
                                  double value_tol, double x_tol = 1e-15,
                                  int max_iter = 200);

/// Number of worker threads: SPB_THREADS when set and positive, otherwise
/// hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads. Each index
/// is processed exactly once; callers keep results per index and reduce in
/// index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace spb
