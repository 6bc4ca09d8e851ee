#include "spb/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "spb/error.hpp"

namespace spb {

namespace {

using Profile = std::vector<std::pair<double, double>>;  // (log-ratio, mass)

Profile merged_profile(const FiniteDist& w, const FiniteDist& q, double tol) {
  Profile atoms;
  for (Index y = 0; y < w.size(); ++y) {
    if (w[y] <= 0.0) continue;
    const double v = q[y] > 0.0 ? std::log(w[y]) - std::log(q[y]) : kInf;
    atoms.emplace_back(v, w[y]);
  }
  std::sort(atoms.begin(), atoms.end());
  Profile out;
  for (const auto& a : atoms) {
    if (!out.empty() && (out.back().first == a.first || std::abs(out.back().first - a.first) <= tol)) {
      out.back().second += a.second;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

double profile_distance(const Profile& a, const Profile& b) {
  if (a.size() != b.size()) return kInf;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dv = a[i].first == b[i].first ? 0.0 : std::abs(a[i].first - b[i].first);
    d = std::max({d, dv, std::abs(a[i].second - b[i].second)});
  }
  return d;
}

}  // namespace

SymmetricCenter symmetric_center(double rho, const DiscreteChannel& channel) {
  if (!(rho > 0.0 && rho <= 1.0)) throw PreconditionError("order rho must lie in (0,1]");
  const FiniteDist u = FiniteDist::uniform(channel.inputs());
  if (rho == 1.0) {
    FiniteDist q = channel.mix(u);
    const double cap = conditional_renyi_divergence(1.0, channel, q, u);
    return {std::move(q), cap};
  }
  const double log_nx = std::log(double(channel.inputs()));
  VectorXd log_m(channel.outputs());
  for (Index y = 0; y < channel.outputs(); ++y) {
    VectorXd terms(channel.inputs());
    for (Index x = 0; x < channel.inputs(); ++x) {
      const double w = channel.matrix()(x, y);
      terms(x) = w > 0.0 ? rho * std::log(w) - log_nx : -kInf;
    }
    log_m(y) = log_sum_exp(terms) / rho;
  }
  const double log_norm = log_sum_exp(log_m);
  VectorXd q = exp_exact(log_m.array() - log_norm);
  return {FiniteDist(q / q.sum(), 1e-9), rho / (rho - 1.0) * log_norm};
}

std::vector<double> default_symmetry_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
  g.push_back(1.0);
  return g;
}

SymmetryReport check_renyi_symmetry(const DiscreteChannel& channel,
                                    const std::vector<double>& rho_grid, double tol) {
  for (double rho : rho_grid) {
    if (!(rho > 0.0 && rho <= 1.0)) throw PreconditionError("symmetry grid must lie in (0,1]");
  }
  SymmetryReport rep{true, rho_grid, {}, 0.0, 0.0, 0.0, {}};
  struct PerOrder {
    FiniteDist center = FiniteDist::uniform(1);
    double spread = 0.0;
    double profile = 0.0;
    double mismatch = 0.0;
  };
  std::vector<PerOrder> per(rho_grid.size());
  parallel_for(rho_grid.size(), [&](std::size_t k) {
    const double rho = rho_grid[k];
    const FiniteDist q = symmetric_center(rho, channel).center;
    double lo = kInf;
    double hi = -kInf;
    Profile first;
    double profile = 0.0;
    for (Index x = 0; x < channel.inputs(); ++x) {
      const FiniteDist w = channel.row(x);
      const double d = renyi_divergence(rho, w, q);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      Profile pr = merged_profile(w, q, tol);
      if (x == 0) {
        first = std::move(pr);
      } else {
        profile = std::max(profile, profile_distance(first, pr));
      }
    }
    const CapacityResult cap = augustin_capacity(rho, channel, ConstraintSet::all());
    per[k].spread = hi == lo ? 0.0 : hi - lo;
    per[k].profile = profile;
    per[k].mismatch = cap.center.total_variation(q);
    per[k].center = q;
  });
  for (std::size_t k = 0; k < per.size(); ++k) {
    rep.center_per_order.push_back(per[k].center);
    rep.max_divergence_spread = std::max(rep.max_divergence_spread, per[k].spread);
    rep.max_profile_distance = std::max(rep.max_profile_distance, per[k].profile);
    rep.max_center_mismatch = std::max(rep.max_center_mismatch, per[k].mismatch);
    if (rep.is_symmetric && (per[k].spread > tol || per[k].profile > tol)) {
      rep.is_symmetric = false;
      std::ostringstream os;
      os << "order " << rho_grid[k] << ": divergence spread " << per[k].spread
         << ", profile distance " << per[k].profile;
      rep.failure = os.str();
    }
  }
  return rep;
}

SymmetricTilt symmetric_tilt(double rho, const DiscreteChannel& channel, Index x) {
  if (x < 0 || x >= channel.inputs()) throw PreconditionError("input index out of range");
  SymmetricCenter c = symmetric_center(rho, channel);
  const FiniteDist w = channel.row(x);
  const FiniteDist v = tilted_measure(rho, w, c.center);
  const double rate = kl_divergence(v, c.center);
  const double exponent = kl_divergence(v, w);
  const LogMoments m = tilted_log_moments(rho, w, c.center);
  return {std::move(c), rate, exponent, m};
}

SymmetricSpePoint parametric_symmetric(const DiscreteChannel& channel, double rate) {
  const SymmetryReport rep = check_renyi_symmetry(channel);
  if (!rep.is_symmetric) {
    throw PreconditionError("channel is not Renyi symmetric (" + rep.failure + ")");
  }
  const double lower = symmetric_center(kLowerLimitOrder, channel).capacity;
  const double upper = symmetric_center(1.0, channel).capacity;
  if (upper - lower < 1e-12) throw DegenerateError("capacity does not vary with the order");
  if (!(rate > lower && rate < upper)) throw RateOutOfRangeError(rate, lower, upper);

  auto f = [&](double rho) { return symmetric_tilt(rho, channel).rate; };
  const BisectionResult b = bisect_increasing(f, rate, kRhoFloor, 1.0 - kRhoFloor, 1e-14, 1e-15);
  if (std::abs(b.value - rate) > 1e-8) {
    throw ConvergenceError("no order reaches the requested rate", std::abs(b.value - rate),
                           b.iterations);
  }
  const double rho = b.x;
  SymmetricSpePoint out{{rate, rho, 0.0, (rho - 1.0) / rho}, false, {}};
  double spread = 0.0;
  for (Index x = 0; x < channel.inputs(); ++x) {
    const SymmetricTilt t = symmetric_tilt(rho, channel, x);
    if (x == 0) {
      out.point.exponent = t.exponent;
    } else {
      spread = std::max(spread, std::abs(t.exponent - out.point.exponent));
    }
    if (t.moments.a2 > 1e-12) out.certificate = "log-ratio spread";
  }
  if (spread > 1e-9) {
    throw PreconditionError("tilted exponents differ across inputs; channel is not symmetric");
  }
  if (out.certificate.empty()) {
    const FiniteDist ref = rep.center_per_order.front();
    bool constant = true;
    for (const auto& c : rep.center_per_order) constant = constant && c.total_variation(ref) <= 1e-9;
    if (constant) out.certificate = "order-independent center";
  }
  out.slope_certified = !out.certificate.empty();
  return out;
}

}  // namespace spb
