#include "spb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spb/error.hpp"

namespace spb {

namespace {

void require_same_alphabet(const FiniteDist& a, const FiniteDist& b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << "alphabet mismatch: " << a.size() << " vs " << b.size();
    throw PreconditionError(os.str());
  }
}

void require_positive_order(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw PreconditionError("order rho must be a positive real");
  }
}

// ln sum_y w_y^rho q_y^(1-rho), restricted to y with w_y > 0. For rho > 1 any
// w_y > 0 with q_y = 0 makes the sum infinite.
double log_power_sum(double rho, const VectorXd& w, const VectorXd& q) {
  const double s = 1.0 - rho;
  const Index n = w.size();
  VectorXd terms = VectorXd::Constant(n, -kInf);
  for (Index y = 0; y < n; ++y) {
    if (w(y) <= 0.0) continue;
    if (q(y) <= 0.0) {
      if (rho > 1.0) return kInf;
      continue;
    }
    terms(y) = std::log(w(y)) + s * (std::log(q(y)) - std::log(w(y)));
  }
  const double lse = log_sum_exp(terms);
  if (!std::isfinite(lse) || std::abs(lse) > 0.5) return lse;
  // Near-zero sums: E_w[exp(s z)] - 1 through expm1 keeps relative accuracy
  // when rho is close to one.
  double excess = 0.0;
  for (Index y = 0; y < n; ++y) {
    if (w(y) <= 0.0) continue;
    if (q(y) <= 0.0) {
      excess -= w(y);
      continue;
    }
    excess += w(y) * std::expm1(s * (std::log(q(y)) - std::log(w(y))));
  }
  return std::log1p(excess);
}

}  // namespace

FiniteDist::FiniteDist(VectorXd masses, double tol) : masses_(std::move(masses)) {
  if (masses_.size() == 0) throw PreconditionError("distribution over an empty alphabet");
  for (Index i = 0; i < masses_.size(); ++i) {
    if (!std::isfinite(masses_(i)) || masses_(i) < 0.0) {
      throw PreconditionError("distribution masses must be finite and non-negative");
    }
  }
  const double total = masses_.sum();
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "distribution masses sum to " << total << ", not 1";
    throw PreconditionError(os.str());
  }
  masses_ /= total;
}

FiniteDist FiniteDist::uniform(Index size) {
  if (size <= 0) throw PreconditionError("uniform distribution needs a positive size");
  return FiniteDist(VectorXd::Constant(size, 1.0 / double(size)));
}

FiniteDist FiniteDist::point_mass(Index size, Index at) {
  if (at < 0 || at >= size) throw PreconditionError("point mass index out of range");
  VectorXd m = VectorXd::Zero(size);
  m(at) = 1.0;
  return FiniteDist(std::move(m));
}

FiniteDist FiniteDist::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("Bernoulli parameter outside [0,1]");
  VectorXd m(2);
  m << 1.0 - p, p;
  return FiniteDist(std::move(m));
}

double FiniteDist::total_variation(const FiniteDist& other) const {
  require_same_alphabet(*this, other);
  return 0.5 * (masses_ - other.masses_).cwiseAbs().sum();
}

DiscreteChannel::DiscreteChannel(MatrixXd rows, double tol) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0) {
    throw PreconditionError("channel needs at least one input and one output");
  }
  for (Index x = 0; x < rows_.rows(); ++x) {
    rows_.row(x) = FiniteDist(rows_.row(x).transpose(), tol).masses().transpose();
  }
}

DiscreteChannel DiscreteChannel::bsc(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("crossover probability outside [0,1]");
  MatrixXd m(2, 2);
  m << 1.0 - p, p, p, 1.0 - p;
  return DiscreteChannel(std::move(m));
}

DiscreteChannel DiscreteChannel::bec(double erasure) {
  if (!(erasure >= 0.0 && erasure <= 1.0)) {
    throw PreconditionError("erasure probability outside [0,1]");
  }
  MatrixXd m(2, 3);
  m << 1.0 - erasure, erasure, 0.0, 0.0, erasure, 1.0 - erasure;
  return DiscreteChannel(std::move(m));
}

DiscreteChannel DiscreteChannel::z_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("Z-channel parameter outside [0,1]");
  MatrixXd m(2, 2);
  m << 1.0, 0.0, 1.0 - p, p;
  return DiscreteChannel(std::move(m));
}

FiniteDist DiscreteChannel::row(Index x) const {
  return FiniteDist(rows_.row(x).transpose(), 1e-9);
}

FiniteDist DiscreteChannel::mix(const FiniteDist& p) const {
  if (p.size() != inputs()) throw PreconditionError("input distribution size mismatch");
  return FiniteDist(rows_.transpose() * p.masses(), 1e-9);
}

DiscreteChannel product(const DiscreteChannel& a, const DiscreteChannel& b) {
  const MatrixXd& A = a.matrix();
  const MatrixXd& B = b.matrix();
  MatrixXd k(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      k.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return DiscreteChannel(std::move(k), 1e-9);
}

FiniteDist product(const FiniteDist& a, const FiniteDist& b) {
  VectorXd k(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) k.segment(i * b.size(), b.size()) = a[i] * b.masses();
  return FiniteDist(std::move(k), 1e-9);
}

double renyi_divergence(double rho, const FiniteDist& w, const FiniteDist& q) {
  require_positive_order(rho);
  require_same_alphabet(w, q);
  const VectorXd& wm = w.masses();
  const VectorXd& qm = q.masses();
  if (rho == 1.0) {
    double d = 0.0;
    for (Index y = 0; y < wm.size(); ++y) {
      if (wm(y) <= 0.0) continue;
      if (qm(y) <= 0.0) return kInf;
      d += wm(y) * (std::log(wm(y)) - std::log(qm(y)));
    }
    return std::max(0.0, d);
  }
  const double lps = log_power_sum(rho, wm, qm);
  if (lps == kInf) return kInf;
  if (lps == -kInf) return kInf;  // mutually singular, rho < 1
  return std::max(0.0, lps / (rho - 1.0));
}

FiniteDist tilted_measure(double rho, const FiniteDist& w, const FiniteDist& q) {
  require_positive_order(rho);
  require_same_alphabet(w, q);
  if (rho == 1.0) return w;
  const double d = renyi_divergence(rho, w, q);
  if (!std::isfinite(d)) {
    throw InfiniteDivergenceError("tilted measure undefined: divergence is infinite");
  }
  const VectorXd& wm = w.masses();
  const VectorXd& qm = q.masses();
  VectorXd logt = VectorXd::Constant(wm.size(), -kInf);
  for (Index y = 0; y < wm.size(); ++y) {
    if (wm(y) > 0.0 && qm(y) > 0.0) {
      logt(y) = rho * std::log(wm(y)) + (1.0 - rho) * std::log(qm(y));
    }
  }
  const double norm = log_sum_exp(logt);
  VectorXd t = exp_exact(logt.array() - norm);
  return FiniteDist(t / t.sum(), 1e-9);
}

double conditional_renyi_divergence(double rho, const DiscreteChannel& channel,
                                    const FiniteDist& q, const FiniteDist& p) {
  if (p.size() != channel.inputs()) {
    throw PreconditionError("input distribution does not match the channel input alphabet");
  }
  if (q.size() != channel.outputs()) {
    throw PreconditionError("output distribution does not match the channel output alphabet");
  }
  double total = 0.0;
  for (Index x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    const double d = renyi_divergence(rho, channel.row(x), q);
    if (!std::isfinite(d)) return kInf;
    total += p[x] * d;
  }
  return total;
}

DiscreteChannel tilted_channel(double rho, const DiscreteChannel& channel,
                               const FiniteDist& q) {
  if (q.size() != channel.outputs()) {
    throw PreconditionError("output distribution does not match the channel output alphabet");
  }
  MatrixXd rows(channel.inputs(), channel.outputs());
  for (Index x = 0; x < channel.inputs(); ++x) {
    rows.row(x) = tilted_measure(rho, channel.row(x), q).masses().transpose();
  }
  return DiscreteChannel(std::move(rows), 1e-9);
}

LogMoments tilted_log_moments(double rho, const FiniteDist& w, const FiniteDist& q) {
  const FiniteDist t = tilted_measure(rho, w, q);
  LogMoments m;
  for (Index y = 0; y < t.size(); ++y) {
    if (t[y] > 0.0 && q[y] > 0.0) m.mean += t[y] * (std::log(w[y]) - std::log(q[y]));
  }
  for (Index y = 0; y < t.size(); ++y) {
    if (!(t[y] > 0.0 && q[y] > 0.0)) continue;
    const double c = std::abs(std::log(w[y]) - std::log(q[y]) - m.mean);
    m.a2 += t[y] * c * c;
    m.a3 += t[y] * c * c * c;
  }
  return m;
}

double identity_residuals(double rho, const FiniteDist& w, const FiniteDist& q) {
  if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("identity check needs rho in (0,1)");
  const double d = renyi_divergence(rho, w, q);
  if (!std::isfinite(d)) throw InfiniteDivergenceError("divergence is infinite");
  const FiniteDist t = tilted_measure(rho, w, q);
  const double d_tw = kl_divergence(t, w);
  const double d_tq = kl_divergence(t, q);
  double worst = std::abs((1.0 - rho) * d - rho * d_tw - (1.0 - rho) * d_tq);

  const LogMoments m = tilted_log_moments(rho, w, q);
  for (Index y = 0; y < t.size(); ++y) {
    if (t[y] <= 0.0) continue;
    const double centered = std::log(w[y]) - std::log(q[y]) - m.mean;
    const double clq = std::log(t[y]) - std::log(q[y]) - d_tq - rho * centered;
    const double clw = std::log(t[y]) - std::log(w[y]) - d_tw - (rho - 1.0) * centered;
    worst = std::max({worst, std::abs(clq), std::abs(clw)});
  }
  return worst;
}

}  // namespace spb
