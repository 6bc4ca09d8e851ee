#include "spb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spb/error.hpp"

namespace spb {

namespace {

bool same_value(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<LogRatioAtom> merge_atoms(std::vector<LogRatioAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const LogRatioAtom& a, const LogRatioAtom& b) { return a.value < b.value; });
  std::vector<LogRatioAtom> out;
  for (const auto& a : atoms) {
    if (a.log_q == -kInf && a.log_w == -kInf) continue;
    if (!out.empty() && same_value(out.back().value, a.value)) {
      out.back().log_q = log_add(out.back().log_q, a.log_q);
      out.back().log_w = log_add(out.back().log_w, a.log_w);
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::vector<LogRatioAtom> component_atoms(const FiniteDist& w, const FiniteDist& q) {
  std::vector<LogRatioAtom> atoms;
  for (Index y = 0; y < w.size(); ++y) {
    const double lw = w[y] > 0.0 ? std::log(w[y]) : -kInf;
    const double lq = q[y] > 0.0 ? std::log(q[y]) : -kInf;
    if (lw == -kInf && lq == -kInf) continue;
    double v = 0.0;
    if (lq == -kInf) {
      v = kInf;
    } else if (lw == -kInf) {
      v = -kInf;
    } else {
      v = lw - lq;
    }
    atoms.push_back({v, lq, lw});
  }
  return merge_atoms(std::move(atoms));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr long kShard = 4096;

}  // namespace

std::vector<LogRatioAtom> log_ratio_atoms(const std::vector<FiniteDist>& w_seq,
                                          const std::vector<FiniteDist>& q_seq,
                                          std::size_t budget) {
  if (w_seq.empty() || w_seq.size() != q_seq.size()) {
    throw PreconditionError("W and Q sequences must be non-empty and of equal length");
  }
  std::vector<LogRatioAtom> acc{{0.0, 0.0, 0.0}};
  for (std::size_t t = 0; t < w_seq.size(); ++t) {
    if (w_seq[t].size() != q_seq[t].size()) {
      throw PreconditionError("component alphabets of W and Q differ");
    }
    const auto comp = component_atoms(w_seq[t], q_seq[t]);
    std::vector<LogRatioAtom> next;
    next.reserve(acc.size() * comp.size());
    for (const auto& a : acc) {
      for (const auto& c : comp) {
        const double lq = a.log_q + c.log_q;
        const double lw = a.log_w + c.log_w;
        if (lq == -kInf && lw == -kInf) continue;
        next.push_back({a.value + c.value, lq, lw});
      }
    }
    acc = merge_atoms(std::move(next));
    if (acc.size() > budget) {
      std::ostringstream os;
      os << "enumeration needs more than " << budget << " states after component " << t + 1;
      throw BudgetExceededError(os.str());
    }
  }
  return acc;
}

NpCurve exact_np_tradeoff(const std::vector<FiniteDist>& w_seq,
                          const std::vector<FiniteDist>& q_seq, std::size_t budget) {
  auto atoms = log_ratio_atoms(w_seq, q_seq, budget);
  std::reverse(atoms.begin(), atoms.end());
  const std::size_t m = atoms.size();
  std::vector<double> w_tail(m + 1, -kInf);
  for (std::size_t k = m; k-- > 0;) w_tail[k] = log_add(w_tail[k + 1], atoms[k].log_w);
  NpCurve curve;
  curve.points.push_back({-kInf, w_tail[0]});
  double type1 = -kInf;
  for (std::size_t k = 0; k < m; ++k) {
    type1 = log_add(type1, atoms[k].log_q);
    curve.points.push_back({type1, w_tail[k + 1]});
  }
  return curve;
}

namespace {

std::size_t last_within(const std::vector<NpPoint>& pts, double log_budget) {
  std::size_t k = 0;
  while (k + 1 < pts.size() && pts[k + 1].log_type1 <= log_budget) ++k;
  return k;
}

}  // namespace

double NpCurve::log_type2_deterministic(double log_budget) const {
  return points[last_within(points, log_budget)].log_type2;
}

double NpCurve::log_type2_randomized(double log_budget) const {
  const std::size_t k = last_within(points, log_budget);
  if (k + 1 >= points.size()) return points[k].log_type2;
  const NpPoint& a = points[k];
  const NpPoint& b = points[k + 1];
  // theta = (budget - t1_a) / (t1_b - t1_a), scaled by exp(t1_b).
  const double ea = std::exp(a.log_type1 - b.log_type1);
  const double theta = (std::exp(log_budget - b.log_type1) - ea) / (1.0 - ea);
  if (!(theta > 0.0)) return a.log_type2;
  return log_add(a.log_type2 + std::log1p(-theta), b.log_type2 + std::log(theta));
}

double Rng::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Index Rng::sample(const FiniteDist& p) {
  const double u = uniform();
  double cum = 0.0;
  Index last = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cum += p[i];
    last = i;
    if (u < cum) return i;
  }
  return last;
}

McEstimate mc_event_probability(const std::function<bool(Rng&)>& event, long trials,
                                std::uint64_t seed) {
  if (trials < 10000) throw PreconditionError("Monte Carlo estimates need at least 1e4 trials");
  const std::size_t shards = std::size_t((trials + kShard - 1) / kShard);
  std::vector<long> hits(shards, 0);
  parallel_for(shards, [&](std::size_t k) {
    Rng rng(splitmix64(seed + k));
    const long begin = long(k) * kShard;
    const long end = std::min(trials, begin + kShard);
    long h = 0;
    for (long i = begin; i < end; ++i) h += event(rng) ? 1 : 0;
    hits[k] = h;
  });
  long total = 0;
  for (long h : hits) total += h;
  const double mean = double(total) / double(trials);
  return {mean, 1.96 * std::sqrt(mean * (1.0 - mean) / double(trials)), trials, seed};
}

McEstimate mc_product_probability(const std::vector<FiniteDist>& dists,
                                  const std::function<bool(const std::vector<Index>&)>& rule,
                                  long trials, std::uint64_t seed) {
  return mc_event_probability(
      [&](Rng& rng) {
        std::vector<Index> y(dists.size());
        for (std::size_t t = 0; t < dists.size(); ++t) y[t] = rng.sample(dists[t]);
        return rule(y);
      },
      trials, seed);
}

McEstimate mc_gaussian_probability(const GaussianProduct& dist,
                                   const std::function<bool(const VectorXd&)>& rule,
                                   long trials, std::uint64_t seed) {
  if (!(dist.sigma2 > 0.0)) throw PreconditionError("noise variance must be positive");
  const double sd = std::sqrt(dist.sigma2);
  return mc_event_probability(
      [&](Rng& rng) {
        VectorXd y(dist.means.size());
        for (Index t = 0; t < y.size(); ++t) y(t) = dist.means(t) + sd * rng.normal();
        return rule(y);
      },
      trials, seed);
}

double fd_derivative_check(const std::function<double(double)>& f, double x, double step) {
  if (!(step > 0.0)) throw PreconditionError("finite-difference step must be positive");
  const double hi = f(x + step);
  const double lo = f(x - step);
  if (!std::isfinite(hi) || !std::isfinite(lo)) {
    throw PreconditionError("function is not finite at x +/- step");
  }
  return (hi - lo) / (2.0 * step);
}

JointTriple independent_triple(const VectorXd& v1, const FiniteDist& p1, const VectorXd& v2,
                               const FiniteDist& p2, const VectorXd& v3, const FiniteDist& p3) {
  if (v1.size() != p1.size() || v2.size() != p2.size() || v3.size() != p3.size()) {
    throw PreconditionError("support and mass vectors differ in length");
  }
  const Index n = p1.size() * p2.size() * p3.size();
  JointTriple t{VectorXd(n), Eigen::MatrixX3d(n, 3)};
  Index k = 0;
  for (Index i = 0; i < p1.size(); ++i) {
    for (Index j = 0; j < p2.size(); ++j) {
      for (Index l = 0; l < p3.size(); ++l, ++k) {
        t.prob(k) = p1[i] * p2[j] * p3[l];
        t.values.row(k) << v1(i), v2(j), v3(l);
      }
    }
  }
  return t;
}

MomentCheck third_moment_inequality_check(const JointTriple& t) {
  if (t.prob.size() != t.values.rows()) throw PreconditionError("triple size mismatch");
  double lhs = 0.0;
  double rhs = 0.0;
  for (Index k = 0; k < t.prob.size(); ++k) {
    const double s = std::abs(t.values.row(k).sum());
    lhs += t.prob(k) * s * s * s;
    rhs += t.prob(k) * t.values.row(k).cwiseAbs().array().cube().sum();
  }
  rhs *= 9.0;
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12)};
}

double brute_spe(const FiniteDist& p, const DiscreteChannel& channel, double rate,
                 int grid_size) {
  if (grid_size < 64) throw PreconditionError("grid_size must be at least 64");
  if (p.size() != channel.inputs()) throw PreconditionError("input distribution size mismatch");
  const MatrixXd& w = channel.matrix();
  const Index nx = w.rows();
  const Index ny = w.cols();
  std::vector<double> q(std::size_t(ny), 0.0);
  for (Index x = 0; x < nx; ++x) {
    for (Index y = 0; y < ny; ++y) q[std::size_t(y)] += p[x] * w(x, y);
  }
  std::vector<double> next(q.size());
  double best = 0.0;
  for (int i = grid_size - 1; i >= 1; --i) {
    const double rho = double(i) / grid_size;
    for (long it = 0; it < 1000000; ++it) {
      std::fill(next.begin(), next.end(), 0.0);
      for (Index x = 0; x < nx; ++x) {
        if (p[x] <= 0.0) continue;
        double norm = 0.0;
        for (Index y = 0; y < ny; ++y) {
          if (w(x, y) > 0.0 && q[std::size_t(y)] > 0.0) {
            norm += std::pow(w(x, y), rho) * std::pow(q[std::size_t(y)], 1.0 - rho);
          }
        }
        for (Index y = 0; y < ny; ++y) {
          if (w(x, y) > 0.0 && q[std::size_t(y)] > 0.0) {
            next[std::size_t(y)] +=
                p[x] * std::pow(w(x, y), rho) * std::pow(q[std::size_t(y)], 1.0 - rho) / norm;
          }
        }
      }
      double step = 0.0;
      for (std::size_t y = 0; y < q.size(); ++y) step += std::abs(next[y] - q[y]);
      q.swap(next);
      if (step <= 1e-14) break;
    }
    double info = 0.0;
    for (Index x = 0; x < nx; ++x) {
      if (p[x] <= 0.0) continue;
      double s = 0.0;
      for (Index y = 0; y < ny; ++y) {
        if (w(x, y) > 0.0 && q[std::size_t(y)] > 0.0) {
          s += std::pow(w(x, y), rho) * std::pow(q[std::size_t(y)], 1.0 - rho);
        }
      }
      info += p[x] * std::log(s) / (rho - 1.0);
    }
    best = std::max(best, (1.0 - rho) / rho * (info - rate));
  }
  return best;
}

}  // namespace spb
