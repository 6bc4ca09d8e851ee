#include "spb/augustin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "spb/error.hpp"

namespace spb {

namespace {

void require_order(double rho) {
  if (!(rho > 0.0)) throw PreconditionError("order rho must be positive");
  if (rho > 1.0) {
    throw PreconditionError("Augustin means are supported only for orders in (0,1]");
  }
}

// Restriction of the fixed-point map to supp(p) x supp(q0), in log domain.
class AugustinMap {
 public:
  AugustinMap(double rho, const FiniteDist& p, const DiscreteChannel& channel)
      : rho_(rho) {
    const FiniteDist q0 = channel.mix(p);
    for (Index x = 0; x < p.size(); ++x) {
      if (p[x] > 0.0) inputs_.push_back(x);
    }
    for (Index y = 0; y < q0.size(); ++y) {
      if (q0[y] > 0.0) outputs_.push_back(y);
    }
    const Index a = Index(inputs_.size());
    const Index m = Index(outputs_.size());
    weights_.resize(a);
    log_w_.resize(a, m);
    for (Index i = 0; i < a; ++i) {
      weights_(i) = p[inputs_[i]];
      for (Index j = 0; j < m; ++j) {
        const double w = channel.matrix()(inputs_[i], outputs_[j]);
        log_w_(i, j) = w > 0.0 ? std::log(w) : -kInf;
      }
    }
    weights_ /= weights_.sum();
    start_.resize(m);
    for (Index j = 0; j < m; ++j) start_(j) = std::log(q0[outputs_[j]]);
  }

  const VectorXd& start() const { return start_; }

  // Tilted rows for log-mean u (rows sum to one) and their p-mixture.
  void apply(const VectorXd& u, MatrixXd& tilted, VectorXd& mixture) const {
    const Index a = log_w_.rows();
    const Index m = log_w_.cols();
    tilted.resize(a, m);
    for (Index i = 0; i < a; ++i) {
      VectorXd row(m);
      for (Index j = 0; j < m; ++j) {
        row(j) = log_w_(i, j) == -kInf ? -kInf : rho_ * log_w_(i, j) + (1.0 - rho_) * u(j);
      }
      const double norm = log_sum_exp(row);
      tilted.row(i) = exp_exact(row.array() - norm).matrix().transpose();
    }
    mixture = tilted.transpose() * weights_;
    mixture /= mixture.sum();
  }

  double step_size(const VectorXd& u) const {
    MatrixXd t;
    VectorXd mix;
    apply(u, t, mix);
    return 0.5 * (mix - exp_exact(u.array()).matrix()).cwiseAbs().sum();
  }

  // Newton direction for ln T(u) - u = 0; the Jacobian of the residual is
  // -(rho I + (1 - rho) M) with M_{yy'} = sum_x p(x) t_x(y) t_x(y') / T(y).
  VectorXd newton_direction(const VectorXd& u, const MatrixXd& tilted,
                            const VectorXd& mixture) const {
    const Index m = u.size();
    MatrixXd mm = tilted.transpose() * weights_.asDiagonal() * tilted;
    for (Index j = 0; j < m; ++j) mm.row(j) /= mixture(j);
    const MatrixXd jac = rho_ * MatrixXd::Identity(m, m) + (1.0 - rho_) * mm;
    const VectorXd residual = mixture.array().log().matrix() - u;
    return jac.partialPivLu().solve(residual);
  }

  FiniteDist embed(const VectorXd& mixture, Index outputs) const {
    VectorXd q = VectorXd::Zero(outputs);
    for (std::size_t j = 0; j < outputs_.size(); ++j) q(outputs_[j]) = mixture(Index(j));
    return FiniteDist(q / q.sum(), 1e-9);
  }

 private:
  double rho_;
  std::vector<Index> inputs_;
  std::vector<Index> outputs_;
  VectorXd weights_;
  MatrixXd log_w_;
  VectorXd start_;
};

VectorXd normalize_log(VectorXd u) {
  const double s = log_sum_exp(u);
  return (u.array() - s).matrix();
}

// D_1 conditional divergences of the tilted channel against W and q,
// restricted to the support of p.
struct TiltedDivergences {
  double to_channel = 0.0;  // D_1(W_rho^q || W | P)
  double to_mean = 0.0;     // D_1(W_rho^q || q | P)
};

TiltedDivergences tilted_divergences(double rho, const FiniteDist& p,
                                     const DiscreteChannel& channel, const FiniteDist& q) {
  TiltedDivergences out;
  for (Index x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    const FiniteDist w = channel.row(x);
    const FiniteDist v = tilted_measure(rho, w, q);
    out.to_channel += p[x] * kl_divergence(v, w);
    out.to_mean += p[x] * kl_divergence(v, q);
  }
  return out;
}

}  // namespace

AugustinSolution augustin_fixed_point(double rho, const FiniteDist& p,
                                      const DiscreteChannel& channel,
                                      const AugustinOptions& opts) {
  require_order(rho);
  if (p.size() != channel.inputs()) {
    throw PreconditionError("input distribution does not match the channel input alphabet");
  }
  if (rho == 1.0) {
    FiniteDist q = channel.mix(p);
    const double info = conditional_renyi_divergence(1.0, channel, q, p);
    return {std::move(q), info, 0, 0.0, 0.0};
  }

  const AugustinMap map(rho, p, channel);
  VectorXd u = map.start();
  MatrixXd tilted;
  VectorXd mixture;
  double tv = kInf;
  int it = 0;
  for (;; ++it) {
    map.apply(u, tilted, mixture);
    tv = 0.5 * (mixture - exp_exact(u.array()).matrix()).cwiseAbs().sum();
    if (tv <= opts.tol) break;
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "Augustin fixed point did not converge in " << opts.max_iter
         << " iterations (residual " << tv << ")";
      throw ConvergenceError(os.str(), tv, it);
    }
    const VectorXd dir = map.newton_direction(u, tilted, mixture);
    bool accepted = false;
    if (dir.allFinite()) {
      double scale = 1.0;
      for (int k = 0; k < 30 && !accepted; ++k, scale *= 0.5) {
        VectorXd trial = normalize_log(u + scale * dir);
        if (trial.allFinite() && map.step_size(trial) < tv) {
          u = std::move(trial);
          accepted = true;
        }
      }
    }
    if (!accepted) u = normalize_log(mixture.array().log().matrix());
  }

  FiniteDist q = map.embed(mixture, channel.outputs());
  const double info = conditional_renyi_divergence(rho, channel, q, p);
  const TiltedDivergences td = tilted_divergences(rho, p, channel, q);
  const double alt = rho / (1.0 - rho) * td.to_channel + td.to_mean;
  return {std::move(q), info, it, tv, std::abs(alt - info)};
}

double augustin_info_derivative(double rho, const FiniteDist& p,
                                const DiscreteChannel& channel,
                                const AugustinOptions& opts) {
  require_order(rho);
  if (rho == 1.0) {
    const FiniteDist q = channel.mix(p);
    double total = 0.0;
    for (Index x = 0; x < p.size(); ++x) {
      if (p[x] <= 0.0) continue;
      double mean = 0.0;
      double second = 0.0;
      for (Index y = 0; y < q.size(); ++y) {
        const double w = channel.matrix()(x, y);
        if (w <= 0.0) continue;
        const double l = std::log(w) - std::log(q[y]);
        mean += w * l;
        second += w * l * l;
      }
      total += 0.5 * p[x] * std::max(0.0, second - mean * mean);
    }
    return total;
  }
  const AugustinSolution sol = augustin_fixed_point(rho, p, channel, opts);
  const TiltedDivergences td = tilted_divergences(rho, p, channel, sol.mean);
  return td.to_channel / ((rho - 1.0) * (rho - 1.0));
}

TiltedPoint tilted_point(double rho, const FiniteDist& p, const DiscreteChannel& channel,
                         const AugustinOptions& opts) {
  AugustinSolution sol = augustin_fixed_point(rho, p, channel, opts);
  const TiltedDivergences td = tilted_divergences(rho, p, channel, sol.mean);
  return {std::move(sol), td.to_mean, td.to_channel};
}

double haroutunian_rate(double rho, const FiniteDist& p, const DiscreteChannel& channel,
                        const AugustinOptions& opts) {
  return tilted_point(rho, p, channel, opts).rate;
}

void ConstraintSet::validate(Index inputs) const {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Single>) {
          if (k.p.size() != inputs) throw PreconditionError("constraint distribution size mismatch");
        } else if constexpr (std::is_same_v<K, Cost>) {
          if (k.costs.size() != inputs) throw PreconditionError("cost vector size mismatch");
          if (!(k.budget >= k.costs.minCoeff())) {
            throw PreconditionError("cost budget below the cheapest input: constraint set is empty");
          }
        } else if constexpr (std::is_same_v<K, ExplicitList>) {
          if (k.members.empty()) throw PreconditionError("explicit constraint list is empty");
          for (const auto& p : k.members) {
            if (p.size() != inputs) throw PreconditionError("constraint distribution size mismatch");
          }
        }
      },
      kind);
}

bool ConstraintSet::contains(const FiniteDist& p, double tol) const {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, All>) {
          return true;
        } else if constexpr (std::is_same_v<K, Single>) {
          return k.p.total_variation(p) <= tol;
        } else if constexpr (std::is_same_v<K, Cost>) {
          return p.masses().dot(k.costs) <= k.budget + tol;
        } else {
          for (const auto& m : k.members) {
            if (m.total_variation(p) <= tol) return true;
          }
          return false;
        }
      },
      kind);
}

namespace {

struct AscentState {
  FiniteDist p;
  AugustinSolution sol;
  VectorXd gradient;  // D_rho(W(x) || q_{rho,P}) for every input
  double objective;   // I_rho(P;W) - lambda E_P[c]
  double gap;         // max_x (gradient - lambda c) - objective
  int iterations;
};

AscentState evaluate(double rho, const DiscreteChannel& channel, const VectorXd& costs,
                     double lambda, FiniteDist p, const AugustinOptions& opts) {
  AugustinSolution sol = augustin_fixed_point(rho, p, channel, opts);
  VectorXd g(channel.inputs());
  for (Index x = 0; x < channel.inputs(); ++x) {
    g(x) = renyi_divergence(rho, channel.row(x), sol.mean);
  }
  const double objective = sol.information - lambda * p.masses().dot(costs);
  const double gap = (g - lambda * costs).maxCoeff() - objective;
  return {std::move(p), std::move(sol), std::move(g), objective, gap, 0};
}

// Exponentiated-gradient ascent of I_rho(P;W) - lambda E_P[c] from the
// uniform distribution.
AscentState ascend(double rho, const DiscreteChannel& channel, const VectorXd& costs,
                   double lambda, double tol, const AugustinOptions& opts,
                   int max_steps = 20000) {
  AscentState s = evaluate(rho, channel, costs, lambda,
                           FiniteDist::uniform(channel.inputs()), opts);
  double eta = 1.0;
  int steps = 0;
  while (s.gap > tol && steps < max_steps) {
    ++steps;
    const VectorXd g = s.gradient - lambda * costs;
    const double top = g.maxCoeff();
    bool moved = false;
    for (int k = 0; k < 60 && !moved; ++k) {
      VectorXd logp(channel.inputs());
      for (Index x = 0; x < logp.size(); ++x) {
        logp(x) = (s.p[x] > 0.0 ? std::log(s.p[x]) : -kInf) + eta * (g(x) - top);
      }
      const double norm = log_sum_exp(logp);
      VectorXd next = exp_exact(logp.array() - norm);
      next /= next.sum();
      AscentState cand = evaluate(rho, channel, costs, lambda, FiniteDist(next, 1e-9), opts);
      // Close to the optimum objective gains drop below rounding, so the
      // certificate gap takes over as the progress measure.
      const double noise = 1e-14 * std::max(1.0, std::abs(s.objective));
      const bool gained = cand.objective > s.objective + noise;
      if (gained || (cand.gap < s.gap && cand.objective >= s.objective - noise)) {
        s = std::move(cand);
        moved = true;
        if (gained) eta = std::min(eta * 1.5, 1e4);
      } else {
        eta *= 0.5;
      }
    }
    if (!moved) break;
  }
  s.iterations = steps;
  return s;
}

}  // namespace

CapacityResult augustin_capacity(double rho, const DiscreteChannel& channel,
                                 const ConstraintSet& constraint, double tol,
                                 const AugustinOptions& opts) {
  require_order(rho);
  constraint.validate(channel.inputs());

  if (const auto* single = std::get_if<ConstraintSet::Single>(&constraint.kind)) {
    AugustinSolution sol = augustin_fixed_point(rho, single->p, channel, opts);
    return {sol.information, sol.mean, single->p, 0.0, true, sol.iterations};
  }
  if (const auto* list = std::get_if<ConstraintSet::ExplicitList>(&constraint.kind)) {
    std::size_t best = 0;
    std::vector<AugustinSolution> sols;
    for (std::size_t i = 0; i < list->members.size(); ++i) {
      sols.push_back(augustin_fixed_point(rho, list->members[i], channel, opts));
      if (sols[i].information > sols[best].information) best = i;
    }
    return {sols[best].information, sols[best].mean, list->members[best], 0.0, true,
            int(list->members.size())};
  }

  const VectorXd zero = VectorXd::Zero(channel.inputs());
  if (std::holds_alternative<ConstraintSet::All>(constraint.kind)) {
    AscentState s = ascend(rho, channel, zero, 0.0, tol, opts);
    return {s.sol.information, s.sol.mean, s.p, s.gap, s.gap <= tol, s.iterations};
  }

  const auto& cost = std::get<ConstraintSet::Cost>(constraint.kind);
  auto cost_of = [&](const AscentState& s) { return s.p.masses().dot(cost.costs); };
  auto lagrangian_gap = [&](const AscentState& s, double lambda) {
    return (s.gradient - lambda * (cost.costs.array() - cost.budget).matrix()).maxCoeff() -
           s.sol.information;
  };
  const double inner_tol = 0.1 * tol;

  AscentState free = ascend(rho, channel, cost.costs, 0.0, inner_tol, opts);
  if (cost_of(free) <= cost.budget) {
    const double gap = lagrangian_gap(free, 0.0);
    return {free.sol.information, free.sol.mean, free.p, gap, gap <= tol, free.iterations, 0.0};
  }

  double lo = 0.0;
  double hi = 1.0;
  AscentState feasible = ascend(rho, channel, cost.costs, hi, inner_tol, opts);
  int total = free.iterations + feasible.iterations;
  while (cost_of(feasible) > cost.budget && hi < 1e12) {
    lo = hi;
    hi *= 2.0;
    feasible = ascend(rho, channel, cost.costs, hi, inner_tol, opts);
    total += feasible.iterations;
  }
  double best_gap = lagrangian_gap(feasible, hi);
  for (int k = 0; k < 80 && best_gap > tol; ++k) {
    const double mid = 0.5 * (lo + hi);
    AscentState s = ascend(rho, channel, cost.costs, mid, inner_tol, opts);
    total += s.iterations;
    if (cost_of(s) <= cost.budget) {
      hi = mid;
      feasible = std::move(s);
      best_gap = lagrangian_gap(feasible, hi);
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  return {feasible.sol.information, feasible.sol.mean, feasible.p, best_gap,
          best_gap <= tol, total, hi};
}

}  // namespace spb
