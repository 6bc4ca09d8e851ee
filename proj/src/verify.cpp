#include "spb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "spb/augustin.hpp"
#include "spb/error.hpp"
#include "spb/gaussian.hpp"
#include "spb/htbe.hpp"
#include "spb/refined_spb.hpp"
#include "spb/spe.hpp"
#include "spb/symmetric.hpp"

namespace spb {

namespace {

using Observed = std::vector<std::pair<std::string, double>>;

class Recorder {
 public:
  explicit Recorder(std::string suite) { report_.suite = std::move(suite); }
  void add(std::string property, std::string instance, Observed observed, bool pass) {
    report_.checks.push_back({std::move(property), std::move(instance), std::move(observed), pass});
  }
  VerifyReport take() { return std::move(report_); }

 private:
  VerifyReport report_;
};

std::string describe(const char* name, double v) {
  std::ostringstream os;
  os << name << "=" << v;
  return os.str();
}

std::vector<long> blocklengths(const VerifyOptions& o) {
  if (o.n > 0) return {o.n};
  return {64, 128, 256};
}

// Interior points of the applicability window, log-spaced.
std::vector<double> window_betas(const HtBoundReport& w, int count) {
  std::vector<double> betas;
  for (int i = 0; i < count; ++i) {
    const double t = (i + 0.5) / count;
    betas.push_back(std::exp(w.log_beta_min + t * (w.log_beta_max - w.log_beta_min)));
  }
  return betas;
}

const FiniteDist& bern_w() {
  static const FiniteDist d = FiniteDist::bernoulli(0.1);
  return d;
}
const FiniteDist& bern_q() {
  static const FiniteDist d = FiniteDist::bernoulli(0.5);
  return d;
}

VerifyReport suite_identities(const VerifyOptions& o) {
  Recorder rec("identities");
  Rng rng(o.seed);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Index m = 2 + Index(rng.uniform() * 5);
    const FiniteDist w = random_distribution(rng, m);
    const FiniteDist q = random_distribution(rng, m);
    const double rho = 0.01 + 0.98 * rng.uniform();
    worst = std::max(worst, identity_residuals(rho, w, q));
  }
  rec.add("variational and pointwise tilted identities", "200 random pairs",
          {{"max_residual", worst}}, worst <= 1e-9);
  return rec.take();
}

VerifyReport suite_augustin(const VerifyOptions& o) {
  Recorder rec("augustin");
  Rng rng(o.seed);
  double worst_step = 0.0;
  double worst_identity = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Index nx = 2 + Index(rng.uniform() * 4);
    const Index ny = 2 + Index(rng.uniform() * 4);
    const FiniteDist p = random_distribution(rng, nx);
    const DiscreteChannel w = random_channel(rng, nx, ny);
    const double rho = 0.02 + 0.97 * rng.uniform();
    const AugustinSolution s = augustin_fixed_point(rho, p, w);
    worst_step = std::max(worst_step, s.residual);
    worst_identity = std::max(worst_identity, s.identity_residual);
  }
  rec.add("fixed-point step size", "100 random (P, W, rho)", {{"max_residual", worst_step}},
          worst_step <= 1e-12);
  rec.add("tilted-channel form of the information", "100 random (P, W, rho)",
          {{"max_residual", worst_identity}}, worst_identity <= 1e-9);
  double worst_fd = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Index nx = 2 + Index(rng.uniform() * 3);
    const Index ny = 2 + Index(rng.uniform() * 3);
    const FiniteDist p = random_distribution(rng, nx);
    const DiscreteChannel w = random_channel(rng, nx, ny);
    const double rho = 0.1 + 0.8 * rng.uniform();
    const double fd = fd_derivative_check(
        [&](double r) { return augustin_fixed_point(r, p, w).information; }, rho, 1e-4);
    worst_fd = std::max(worst_fd, std::abs(fd - augustin_info_derivative(rho, p, w)));
  }
  rec.add("derivative formula against central difference", "20 random (P, W, rho)",
          {{"max_abs_error", worst_fd}}, worst_fd <= 1e-5);
  return rec.take();
}

VerifyReport suite_spe(const VerifyOptions& o) {
  Recorder rec("spe");
  const DiscreteChannel bsc = DiscreteChannel::bsc(0.1);
  const FiniteDist u = FiniteDist::uniform(2);
  const double rcrit = kl_divergence(FiniteDist::bernoulli(0.25), u);
  const SpePoint pt = spe_parametric(u, bsc, rcrit);
  rec.add("critical rate of BSC(0.1)", describe("rate", rcrit),
          {{"rho_star", pt.rho_star}, {"exponent", pt.exponent}, {"slope", pt.slope}},
          std::abs(pt.rho_star - 0.5) <= 1e-9 && std::abs(pt.exponent - 0.0923315) <= 1e-6 &&
              std::abs(pt.slope + 1.0) <= 1e-6);

  Rng rng(o.seed);
  double worst = 0.0;
  bool ordered = true;
  for (int k = 0; k < 5; ++k) {
    const Index nx = 2 + Index(rng.uniform() * 2);
    const Index ny = 2 + Index(rng.uniform() * 2);
    const FiniteDist p = random_distribution(rng, nx, 0.05);
    const DiscreteChannel w = random_channel(rng, nx, ny, 0.02);
    const RateRange rr = spe_rate_range(p, w);
    const double rate = rr.lower + (0.2 + 0.6 * rng.uniform()) * (rr.upper - rr.lower);
    const double param = spe_parametric(p, w, rate).exponent;
    const double brute = brute_spe(p, w, rate, 4096);
    worst = std::max(worst, std::abs(param - brute));
    ordered = ordered && param >= brute - 1e-12;
  }
  rec.add("parametric form against brute-force grid", "5 random (P, W, R), grid 4096",
          {{"max_abs_difference", worst}}, worst <= 1e-4 && ordered);

  double worst_slope = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double r = 0.05 + 0.05 * k;
    const double fd =
        fd_derivative_check([&](double x) { return spe_parametric(u, bsc, x).exponent; }, r, 1e-5);
    worst_slope = std::max(worst_slope, std::abs(fd - spe_parametric(u, bsc, r).slope));
  }
  rec.add("slope (rho*-1)/rho* against central difference", "BSC(0.1), 5 rates",
          {{"max_abs_error", worst_slope}}, worst_slope <= 1e-4);
  return rec.take();
}

VerifyReport suite_htbe(const VerifyOptions& o) {
  Recorder rec("htbe");
  const double rho = 0.5;
  const HtParams hp = ht_params(rho, {bern_w()}, {bern_q()});
  const TiltTotals per = tilt_totals(rho, {bern_w()}, {bern_q()});

  long first = 0;
  for (long n = 1; n < 100000 && first == 0; ++n) {
    const HtBoundReport w = htbe_converse(rho, n, 1.0, hp, 0.0, 0.0);
    if (w.log_beta_min <= w.log_beta_max) first = n;
  }
  rec.add("smallest blocklength with a non-empty window", "Bern(0.1) vs Bern(0.5), rho=0.5",
          {{"n", double(first)}}, first == 56);

  for (long n : blocklengths(o)) {
    const std::vector<FiniteDist> ws(std::size_t(n), bern_w());
    const std::vector<FiniteDist> qs(std::size_t(n), bern_q());
    const NpCurve curve = exact_np_tradeoff(ws, qs, 1u << 20);
    const double tq = double(n) * per.d1_tq;
    const double tw = double(n) * per.d1_tw;
    const HtBoundReport win = htbe_converse(rho, n, 1.0, hp, tq, tw);
    if (win.log_beta_min > win.log_beta_max) {
      rec.add("converse <= exact NP <= achievability", describe("n", double(n)),
              {{"log_beta_min", win.log_beta_min}, {"log_beta_max", win.log_beta_max}}, false);
      continue;
    }
    for (double beta : window_betas(win, 10)) {
      const HtBoundReport c = htbe_converse(rho, n, beta, hp, tq, tw);
      const HtBoundReport a = htbe_achievability(rho, n, beta, hp, tq, tw);
      const double exact = curve.log_type2_deterministic(c.q_budget_log);
      std::ostringstream inst;
      inst << "n=" << n << " beta=" << beta;
      rec.add("converse <= exact NP <= achievability", inst.str(),
              {{"converse_log", *c.converse_log},
               {"exact_log", exact},
               {"achievability_log", *a.achievability_w_log}},
              *c.converse_log <= exact && exact <= *a.achievability_w_log && c.applicable);
    }
  }

  const std::vector<FiniteDist> w10(10, bern_w());
  const std::vector<FiniteDist> q10(10, bern_q());
  const ThresholdTest t = threshold_test(0.0, w10, q10, rho);
  const double step = std::log(bern_w()[1] / bern_q()[1]) - std::log(bern_w()[0] / bern_q()[0]);
  const double base = 10.0 * std::log(bern_w()[0] / bern_q()[0]);
  auto accepts = [&](const std::vector<Index>& y) {
    double s = base;
    for (Index v : y) s += v == 1 ? step : 0.0;
    return t.accepts(s);
  };
  const McEstimate mq = mc_product_probability(q10, accepts, o.trials, o.seed);
  const McEstimate mw = mc_product_probability(
      w10, [&](const std::vector<Index>& y) { return !accepts(y); }, o.trials, o.seed + 1);
  rec.add("Monte Carlo type I of the threshold test", "n=10 gamma=0",
          {{"exact", *t.type1}, {"estimate", mq.mean}, {"half_width", mq.half_width_95}},
          std::abs(mq.mean - *t.type1) <= 3.0 * mq.half_width_95);
  rec.add("Monte Carlo type II of the threshold test", "n=10 gamma=0",
          {{"exact", *t.type2}, {"estimate", mw.mean}, {"half_width", mw.half_width_95}},
          std::abs(mw.mean - *t.type2) <= 3.0 * mw.half_width_95);
  return rec.take();
}

VerifyReport suite_threshold(const VerifyOptions& o) {
  Recorder rec("threshold");
  const double rho = 0.5;
  const HtParams hp = ht_params(rho, {bern_w()}, {bern_q()});
  const TiltTotals per = tilt_totals(rho, {bern_w()}, {bern_q()});
  for (long n : blocklengths(o)) {
    const std::vector<FiniteDist> ws(std::size_t(n), bern_w());
    const std::vector<FiniteDist> qs(std::size_t(n), bern_q());
    const HtBoundReport win = htbe_converse(rho, n, 1.0, hp, 0.0, 0.0);
    std::vector<double> betas = {0.5, 1.0, 2.0};
    if (win.log_beta_min <= win.log_beta_max) {
      for (double b : window_betas(win, 10)) betas.push_back(b);
    }
    for (double beta : betas) {
      const double gamma = proof_gamma(rho, n, beta, hp);
      const ThresholdTest t = threshold_test(gamma, ws, qs, rho);
      const double budget = std::log(beta) - double(n) * per.d1_tq;
      std::ostringstream inst;
      inst << "n=" << n << " beta=" << beta;
      rec.add("Q(accept) within the budget", inst.str(),
              {{"log_type1", *t.log_type1}, {"log_budget", budget}}, *t.log_type1 <= budget);
    }
  }
  return rec.take();
}

VerifyReport suite_symmetric(const VerifyOptions&) {
  Recorder rec("symmetric");
  const std::vector<std::pair<std::string, DiscreteChannel>> sym = {
      {"BSC(0.1)", DiscreteChannel::bsc(0.1)},
      {"BSC(0.2)", DiscreteChannel::bsc(0.2)},
      {"BEC(0.3)", DiscreteChannel::bec(0.3)}};
  for (const auto& [name, w] : sym) {
    const SymmetryReport r = check_renyi_symmetry(w);
    rec.add("Renyi symmetric", name,
            {{"max_divergence_spread", r.max_divergence_spread},
             {"max_profile_distance", r.max_profile_distance},
             {"max_center_mismatch", r.max_center_mismatch}},
            r.is_symmetric && r.max_center_mismatch <= 1e-8);
  }
  const SymmetryReport z = check_renyi_symmetry(DiscreteChannel::z_channel(0.5));
  rec.add("Renyi symmetry rejected", "Z-channel(0.5)",
          {{"max_divergence_spread", z.max_divergence_spread}}, !z.is_symmetric);

  const DiscreteChannel a = DiscreteChannel::bsc(0.1);
  const DiscreteChannel b = DiscreteChannel::bsc(0.2);
  const double ca = augustin_capacity(0.5, a, ConstraintSet::all()).capacity;
  const double cb = augustin_capacity(0.5, b, ConstraintSet::all()).capacity;
  const CapacityResult cp = augustin_capacity(0.5, product(a, b), ConstraintSet::all());
  const FiniteDist pc = product(augustin_capacity(0.5, a, ConstraintSet::all()).center,
                                augustin_capacity(0.5, b, ConstraintSet::all()).center);
  rec.add("capacity of a product is additive", "BSC(0.1) x BSC(0.2), rho=0.5",
          {{"product", cp.capacity}, {"sum", ca + cb}, {"center_tv", cp.center.total_variation(pc)}},
          std::abs(cp.capacity - (ca + cb)) <= 1e-9 && cp.center.total_variation(pc) <= 1e-9);
  return rec.take();
}

VerifyReport suite_gaussian(const VerifyOptions&) {
  Recorder rec("gaussian");
  const AwgnParams unit{1.0, 1.0};
  const AwgnPoint g = awgn_parametric(0.5, unit);
  const double rs = awgn_rho_star(g.rate, unit);
  const ConeQuantities cq = shannon_cone(g.rate, unit);
  rec.add("golden-ratio point", "sigma2=1 cost=1 rho=0.5",
          {{"theta", g.theta}, {"rate", g.rate}, {"esp", g.esp}, {"rho_star", rs}, {"sgex", cq.sgex}},
          std::abs(g.theta - 1.6180340) <= 1e-7 && std::abs(g.rate - 0.1346382) <= 1e-6 &&
              std::abs(g.esp - 0.0850153) <= 1e-5 && std::abs(rs - 0.5) <= 1e-9 &&
              std::abs(cq.sgex - g.esp) <= 1e-5);

  double worst_theta = 0.0;
  for (double s2 : {0.5, 1.0, 2.0}) {
    for (double c : {0.1, 1.0, 10.0}) {
      for (int i = 1; i <= 20; ++i) {
        const double rho = 0.05 * i;
        const AwgnParams p{s2, c};
        worst_theta = std::max(worst_theta, theta_identity_residual(rho, theta_of_rho(rho, p), p));
      }
    }
  }
  rec.add("center variance quadratic identity", "rho 0.05..1, 9 (sigma2, cost)",
          {{"max_relative_residual", worst_theta}}, worst_theta <= 1e-12);

  double worst_cone = 0.0;
  double worst_cr = 0.0;
  double worst_trip = 0.0;
  for (double s2 : {0.5, 1.0, 2.0}) {
    for (double c : {0.1, 1.0, 10.0}) {
      const AwgnParams p{s2, c};
      const double cap = awgn_capacity(1.0, p);
      for (int i = 1; i <= 50; ++i) {
        const double rate = cap * i / 51.0;
        const double rho = awgn_rho_star(rate, p);
        const AwgnPoint pt = awgn_parametric(rho, p);
        worst_cone = std::max(worst_cone, std::abs(shannon_cone(rate, p).sgex - pt.esp));
        worst_trip = std::max(worst_trip, std::abs(pt.rate - rate));
      }
      worst_cr = std::max(worst_cr,
                          std::abs(cone_critical_residual(shannon_cone(0.5 * cap, p).theta_cr, p)));
    }
  }
  rec.add("cone-angle exponent equals E_sp", "50 rates x 9 (sigma2, cost)",
          {{"max_abs_difference", worst_cone}}, worst_cone <= 1e-8);
  rec.add("critical angle equation", "9 (sigma2, cost)", {{"max_residual", worst_cr}},
          worst_cr <= 1e-10);
  rec.add("rho*(R) inverts the parametric rate", "50 rates x 9 (sigma2, cost)",
          {{"max_rate_error", worst_trip}}, worst_trip <= 1e-10);
  return rec.take();
}

VerifyReport suite_theorems(const VerifyOptions& o) {
  Recorder rec("theorems");
  const DiscreteChannel bsc = DiscreteChannel::bsc(0.1);
  const FiniteDist u = FiniteDist::uniform(2);
  const double rcrit = kl_divergence(FiniteDist::bernoulli(0.25), u);
  const long n = o.n > 0 ? o.n + (o.n % 2) : 600;
  const RspbReport t1 = rspb_constant_composition(bsc, u, n, double(n) * rcrit);
  const RspbReport t2 =
      rspb_symmetric(std::vector<DiscreteChannel>(std::size_t(n), bsc), double(n) * rcrit);
  rec.add("constant-composition and symmetric reports coincide", describe("n", double(n)),
          {{"rho_star_1", t1.rho_star},
           {"rho_star_2", t2.rho_star},
           {"exponent_1", t1.exponent_total},
           {"exponent_2", t2.exponent_total},
           {"log_prefactor_1", t1.log_prefactor},
           {"log_prefactor_2", t2.log_prefactor}},
          std::abs(t1.rho_star - t2.rho_star) <= 1e-9 &&
              std::abs(t1.exponent_total - t2.exponent_total) <= 1e-9 * std::max(1.0, t1.exponent_total) &&
              std::abs(t1.log_prefactor - t2.log_prefactor) <= 1e-9);

  long first = 0;
  for (long m = 1; m <= 100000 && first == 0; ++m) {
    const double lhs = std::sqrt(t1.params.a2 * double(m)) - std::log(4.0 * m) / (2.0 * t1.rho_star);
    if (lhs >= t1.params.log_delta_hat) first = m;
  }
  const long even = first + (first % 2);
  const bool below = !rspb_constant_composition(bsc, u, even - 2, double(even - 2) * rcrit).applicable;
  const bool at = rspb_constant_composition(bsc, u, even, double(even) * rcrit).applicable;
  rec.add("applicability threshold at the critical rate", "BSC(0.1), uniform composition",
          {{"first_n", double(first)}, {"first_even_n", double(even)}},
          first >= 520 && first <= 535 && below && at);
  return rec.take();
}

VerifyReport suite_moments(const VerifyOptions& o) {
  Recorder rec("moments");
  Rng rng(o.seed);
  int holds = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 1000; ++k) {
    VectorXd v[3];
    FiniteDist p[3] = {FiniteDist::uniform(1), FiniteDist::uniform(1), FiniteDist::uniform(1)};
    for (int j = 0; j < 3; ++j) {
      v[j].resize(4);
      for (Index i = 0; i < 4; ++i) v[j](i) = 4.0 * rng.normal();
      p[j] = random_distribution(rng, 4);
    }
    const MomentCheck m = third_moment_inequality_check(
        independent_triple(v[0], p[0], v[1], p[1], v[2], p[2]));
    holds += m.holds ? 1 : 0;
    worst_ratio = std::max(worst_ratio, m.lhs / m.rhs);
  }
  rec.add("E|X1+X2+X3|^3 <= 9 sum E|Xi|^3", "1000 independent 4-point triples",
          {{"holds", double(holds)}, {"max_lhs_over_rhs", worst_ratio}}, holds == 1000);

  JointTriple eq{VectorXd(2), Eigen::MatrixX3d(2, 3)};
  eq.prob << 0.5, 0.5;
  eq.values << 1, 1, 1, -1, -1, -1;
  const MomentCheck e = third_moment_inequality_check(eq);
  rec.add("equality case", "X1=X2=X3=+-1", {{"lhs", e.lhs}, {"rhs", e.rhs}},
          e.holds && std::abs(e.lhs - e.rhs) <= 1e-12);
  return rec.take();
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::vector<std::string> verify_suites() {
  return {"identities", "augustin", "spe",      "htbe",   "threshold",
          "symmetric",  "gaussian", "theorems", "moments"};
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts) {
  using Fn = VerifyReport (*)(const VerifyOptions&);
  static const std::map<std::string, Fn> table = {
      {"identities", suite_identities}, {"augustin", suite_augustin}, {"spe", suite_spe},
      {"htbe", suite_htbe},             {"threshold", suite_threshold},
      {"symmetric", suite_symmetric},   {"gaussian", suite_gaussian},
      {"theorems", suite_theorems},     {"moments", suite_moments}};
  const auto it = table.find(suite);
  if (it == table.end()) throw PreconditionError("unknown verification suite \"" + suite + "\"");
  if (opts.trials < 10000) throw PreconditionError("trials must be at least 1e4");
  return it->second(opts);
}

FiniteDist random_distribution(Rng& rng, Index size, double floor) {
  VectorXd v(size);
  for (Index i = 0; i < size; ++i) {
    const double u = rng.uniform();
    v(i) = floor + u * u * u + 1e-3;
  }
  return FiniteDist(v / v.sum(), 1e-9);
}

DiscreteChannel random_channel(Rng& rng, Index inputs, Index outputs, double floor) {
  MatrixXd m(inputs, outputs);
  for (Index x = 0; x < inputs; ++x) m.row(x) = random_distribution(rng, outputs, floor).masses().transpose();
  return DiscreteChannel(std::move(m), 1e-9);
}

}  // namespace spb
