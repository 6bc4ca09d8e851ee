#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spb/augustin.hpp"
#include "spb/error.hpp"
#include "spb/gaussian.hpp"
#include "spb/htbe.hpp"
#include "spb/io.hpp"
#include "spb/oracle.hpp"
#include "spb/refined_spb.hpp"
#include "spb/spe.hpp"
#include "spb/symmetric.hpp"
#include "spb/verify.hpp"

namespace spb::cli {

namespace {

using nlohmann::json;

struct Config {
  std::vector<std::string> channel_files;
  std::optional<double> bsc;
  std::optional<double> bec;
  std::optional<double> zchannel;
  std::string composition = "uniform";
  std::string constraint_file;

  std::string w_file;
  std::string q_file;
  std::optional<double> w_bernoulli;
  std::optional<double> q_bernoulli;

  std::optional<double> order;
  std::optional<double> rate;
  std::optional<double> log_m_over_l;
  std::optional<long> n;
  std::optional<double> sigma2;
  std::optional<double> cost;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::string theorem = "composition";
  std::string sweep;
  std::string output = "object";
  std::uint64_t seed = 1;
  long trials = 1000000;
  int grid = 0;
  double tol = 1e-9;
  std::string suite = "all";
};

/// Signals a result that was computed but is not certified (exit 3).
struct Uncertified {};

json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return io::round9(x);
}

json masses(const FiniteDist& p) {
  json a = json::array();
  for (Index i = 0; i < p.size(); ++i) a.push_back(num(p[i]));
  return a;
}

std::string fmt9(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw PreconditionError(std::string("missing required flag ") + flag);
  return *v;
}

DiscreteChannel load_channel_file(const std::string& path) {
  return io::parse_channel(io::read_file(path));
}

std::vector<DiscreteChannel> load_channels(const Config& c) {
  const int shorthand = int(c.bsc.has_value()) + int(c.bec.has_value()) + int(c.zchannel.has_value());
  if (shorthand + int(!c.channel_files.empty()) != 1) {
    throw PreconditionError("specify exactly one of --channel, --bsc, --bec, --zchannel");
  }
  if (c.bsc) return {DiscreteChannel::bsc(*c.bsc)};
  if (c.bec) return {DiscreteChannel::bec(*c.bec)};
  if (c.zchannel) return {DiscreteChannel::z_channel(*c.zchannel)};
  std::vector<DiscreteChannel> out;
  for (const auto& f : c.channel_files) out.push_back(load_channel_file(f));
  return out;
}

DiscreteChannel load_channel(const Config& c) {
  auto all = load_channels(c);
  if (all.size() != 1) throw PreconditionError("this command takes a single channel");
  return all.front();
}

FiniteDist load_composition(const Config& c, Index inputs) {
  if (c.composition == "uniform") return FiniteDist::uniform(inputs);
  FiniteDist p = io::parse_distribution(io::read_file(c.composition));
  if (p.size() != inputs) {
    throw PreconditionError("composition size does not match the channel input alphabet");
  }
  return p;
}

FiniteDist load_component(const std::string& file, const std::optional<double>& bern,
                          const char* name) {
  if (!file.empty() == bern.has_value()) {
    throw PreconditionError(std::string("specify exactly one of --") + name + " and --" + name +
                            "-bernoulli");
  }
  if (bern) return FiniteDist::bernoulli(*bern);
  return io::parse_distribution(io::read_file(file));
}

void check_order(double rho, bool allow_one) {
  if (!(rho > 0.0) || rho > 1.0 || (!allow_one && rho == 1.0)) {
    throw PreconditionError(allow_one ? "--order must lie in (0,1]" : "--order must lie in (0,1)");
  }
}

struct SweepGrid {
  double start;
  double stop;
  int count;
  double at(int i) const { return start + (stop - start) * i / (count - 1); }
};

SweepGrid parse_sweep(const std::string& spec) {
  SweepGrid g{0, 0, 0};
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.count, &tail) != 3) {
    throw PreconditionError("sweep must read start:stop:count");
  }
  if (g.count < 2) throw PreconditionError("sweep count must be at least 2");
  if (!(g.start < g.stop)) throw PreconditionError("sweep start must be below stop");
  return g;
}

struct SweepRow {
  double rate = kNaN;
  double rho_star = kNaN;
  double exponent = kNaN;
  double slope = kNaN;
  double log_prefactor = kNaN;
  double bound_log = kNaN;
  std::optional<bool> applicable;
  std::string status = "ok";
};

std::string status_of(const std::exception& e) {
  if (dynamic_cast<const RateOutOfRangeError*>(&e)) return "rate_out_of_range";
  if (dynamic_cast<const DegenerateError*>(&e)) return "degenerate";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "not_converged";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  return "error";
}

void run_sweep(const SweepGrid& g, const std::function<SweepRow(double)>& point, std::ostream& out) {
  out << "rate,rho_star,exponent,slope,log_prefactor,bound_log,applicable,status\n";
  for (int i = 0; i < g.count; ++i) {
    const double rate = g.at(i);
    SweepRow row;
    try {
      row = point(rate);
    } catch (const Error& e) {
      row = SweepRow{};
      row.status = status_of(e);
    }
    row.rate = rate;
    out << fmt9(row.rate) << ',' << fmt9(row.rho_star) << ',' << fmt9(row.exponent) << ','
        << fmt9(row.slope) << ',' << fmt9(row.log_prefactor) << ',' << fmt9(row.bound_log) << ','
        << (row.applicable ? (*row.applicable ? "true" : "false") : "nan") << ',' << row.status
        << '\n';
  }
}

SweepRow row_from(const RspbReport& r, double exponent_per_symbol) {
  SweepRow row;
  row.rho_star = r.rho_star;
  row.exponent = exponent_per_symbol;
  row.slope = (r.rho_star - 1.0) / r.rho_star;
  row.log_prefactor = r.log_prefactor;
  row.bound_log = r.bound_log;
  row.applicable = r.applicable;
  return row;
}

json report_json(const RspbReport& r) {
  json j = {{"rate", num(r.rate)},
            {"n", r.n},
            {"rho_star", num(r.rho_star)},
            {"exponent_total", num(r.exponent_total)},
            {"log_prefactor", num(r.log_prefactor)},
            {"bound_log", num(r.bound_log)},
            {"condition_lhs", num(r.condition_lhs)},
            {"condition_rhs", num(r.condition_rhs)},
            {"applicable", r.applicable},
            {"a2", num(r.params.a2)},
            {"a3", num(r.params.a3)},
            {"log_delta_hat", num(r.params.log_delta_hat)},
            {"slope_certified", r.slope_certified}};
  if (!std::isnan(r.printed_condition_lhs)) {
    j["printed_condition_lhs"] = num(r.printed_condition_lhs);
    j["printed_condition_rhs"] = num(r.printed_condition_rhs);
    j["printed_applicable"] = r.printed_applicable;
  }
  return j;
}

json cmd_divergence(const Config& c) {
  const FiniteDist w = load_component(c.w_file, c.w_bernoulli, "w");
  const FiniteDist q = load_component(c.q_file, c.q_bernoulli, "q");
  const double rho = need(c.order, "--order");
  json j = {{"command", "divergence"}, {"order", num(rho)},
            {"divergence", num(renyi_divergence(rho, w, q))}};
  if (rho < 1.0 && std::isfinite(renyi_divergence(rho, w, q))) {
    const FiniteDist t = tilted_measure(rho, w, q);
    const LogMoments m = tilted_log_moments(rho, w, q);
    j["tilted"] = masses(t);
    j["d1_tilted_to_w"] = num(kl_divergence(t, w));
    j["d1_tilted_to_q"] = num(kl_divergence(t, q));
    j["tilted_mean"] = num(m.mean);
    j["a2"] = num(m.a2);
    j["a3"] = num(m.a3);
    j["identity_residual"] = num(identity_residuals(rho, w, q));
  }
  return j;
}

json cmd_augustin(const Config& c) {
  const DiscreteChannel w = load_channel(c);
  const FiniteDist p = load_composition(c, w.inputs());
  const double rho = need(c.order, "--order");
  check_order(rho, true);
  const AugustinSolution s = augustin_fixed_point(rho, p, w);
  return {{"command", "augustin"},
          {"order", num(rho)},
          {"information", num(s.information)},
          {"mean", masses(s.mean)},
          {"iterations", s.iterations},
          {"residual", num(s.residual)},
          {"identity_residual", num(s.identity_residual)},
          {"derivative", num(augustin_info_derivative(rho, p, w))}};
}

ConstraintSet load_constraint(const Config& c) {
  if (c.constraint_file.empty()) return ConstraintSet::all();
  return io::parse_constraint(io::read_file(c.constraint_file));
}

json cmd_capacity(const Config& c, bool& uncertified) {
  const DiscreteChannel w = load_channel(c);
  const double rho = need(c.order, "--order");
  check_order(rho, true);
  const CapacityResult r = augustin_capacity(rho, w, load_constraint(c), c.tol);
  uncertified = !r.certified;
  return {{"command", "capacity"},
          {"order", num(rho)},
          {"capacity", num(r.capacity)},
          {"center", masses(r.center)},
          {"optimizer", masses(r.optimizer)},
          {"certificate_gap", num(r.certificate_gap)},
          {"certified", r.certified},
          {"iterations", r.iterations},
          {"multiplier", num(r.multiplier)}};
}

json cmd_spe(const Config& c, std::ostream& out, bool& uncertified) {
  const DiscreteChannel w = load_channel(c);
  if (!c.constraint_file.empty()) {
    const double rate = need(c.rate, "--rate");
    const SpeConstrained s = spe_constrained(w, load_constraint(c), rate);
    uncertified = !s.certified;
    return {{"command", "spe"}, {"rate", num(rate)},      {"exponent", num(s.value)},
            {"argmax", masses(s.argmax)}, {"rho", num(s.rho)}, {"certified", s.certified}};
  }
  const FiniteDist p = load_composition(c, w.inputs());
  if (!c.sweep.empty()) {
    run_sweep(parse_sweep(c.sweep),
              [&](double rate) {
                if (c.n) {
                  const RspbReport r =
                      rspb_constant_composition(w, p, *c.n, double(*c.n) * rate);
                  return row_from(r, r.exponent_total / double(*c.n));
                }
                const SpePoint s = spe_parametric(p, w, rate);
                SweepRow row;
                row.rho_star = s.rho_star;
                row.exponent = s.exponent;
                row.slope = s.slope;
                return row;
              },
              out);
    return nullptr;
  }
  const double rate = need(c.rate, "--rate");
  const SpePoint s = spe_parametric(p, w, rate);
  const RateRange rr = spe_rate_range(p, w);
  json j = {{"command", "spe"},
            {"rate", num(rate)},
            {"rho_star", num(s.rho_star)},
            {"exponent", num(s.exponent)},
            {"slope", num(s.slope)},
            {"rate_range", {num(rr.lower), num(rr.upper)}}};
  if (c.grid > 0) j["grid_sup"] = num(spe_grid_sup(p, w, rate, c.grid));
  return j;
}

json cmd_symmetric(const Config& c, std::ostream& out, bool& uncertified) {
  const DiscreteChannel w = load_channel(c);
  if (!c.sweep.empty()) {
    run_sweep(parse_sweep(c.sweep),
              [&](double rate) {
                if (c.n) {
                  const RspbReport r = rspb_symmetric(
                      std::vector<DiscreteChannel>(std::size_t(*c.n), w), double(*c.n) * rate);
                  return row_from(r, r.exponent_total / double(*c.n));
                }
                const SymmetricSpePoint s = parametric_symmetric(w, rate);
                SweepRow row;
                row.rho_star = s.point.rho_star;
                row.exponent = s.point.exponent;
                row.slope = s.point.slope;
                return row;
              },
              out);
    return nullptr;
  }
  const SymmetryReport rep = check_renyi_symmetry(w);
  json orders = json::array();
  for (double r : rep.checked_orders) orders.push_back(num(r));
  json j = {{"command", "symmetric"},
            {"is_symmetric", rep.is_symmetric},
            {"checked_orders", orders},
            {"max_divergence_spread", num(rep.max_divergence_spread)},
            {"max_profile_distance", num(rep.max_profile_distance)},
            {"max_center_mismatch", num(rep.max_center_mismatch)},
            {"failure", rep.failure}};
  if (c.order) {
    check_order(*c.order, true);
    const SymmetricCenter sc = symmetric_center(*c.order, w);
    j["order"] = num(*c.order);
    j["center"] = masses(sc.center);
    j["capacity"] = num(sc.capacity);
  }
  if (c.rate) {
    const SymmetricSpePoint s = parametric_symmetric(w, *c.rate);
    j["rate"] = num(*c.rate);
    j["rho_star"] = num(s.point.rho_star);
    j["exponent"] = num(s.point.exponent);
    j["slope"] = num(s.point.slope);
    j["slope_certified"] = s.slope_certified;
    j["certificate"] = s.certificate;
    uncertified = !s.slope_certified;
  }
  return j;
}

AwgnParams awgn_params(const Config& c) {
  AwgnParams p{need(c.sigma2, "--sigma2"), need(c.cost, "--cost")};
  p.validate();
  return p;
}

json cmd_awgn(const Config& c, std::ostream& out) {
  const AwgnParams p = awgn_params(c);
  if (!c.sweep.empty()) {
    run_sweep(parse_sweep(c.sweep),
              [&](double rate) {
                if (c.n) {
                  const RspbReport r = rspb_awgn_equality(*c.n, double(*c.n) * rate, p);
                  return row_from(r, r.exponent_total / double(*c.n));
                }
                const double rho = awgn_rho_star(rate, p);
                SweepRow row;
                row.rho_star = rho;
                row.exponent = awgn_parametric(rho, p).esp;
                row.slope = (rho - 1.0) / rho;
                return row;
              },
              out);
    return nullptr;
  }
  if (c.rate.has_value() == c.order.has_value()) {
    throw PreconditionError("specify exactly one of --rate and --order");
  }
  const double rho = c.rate ? awgn_rho_star(*c.rate, p) : *c.order;
  check_order(rho, false);
  const AwgnPoint pt = awgn_parametric(rho, p);
  json j = {{"command", "awgn"},
            {"sigma2", num(p.sigma2)},
            {"cost", num(p.cost)},
            {"rho_star", num(rho)},
            {"theta", num(pt.theta)},
            {"rate", num(pt.rate)},
            {"esp", num(pt.esp)},
            {"slope", num((rho - 1.0) / rho)},
            {"capacity_rho", num(awgn_capacity(rho, p))},
            {"capacity", num(awgn_capacity(1.0, p))},
            {"a2", num(pt.a2)},
            {"a3_bound", num(pt.a3_bound)},
            {"log_delta_hat", num(pt.log_delta_hat)}};
  const ConeQuantities cq = shannon_cone(pt.rate, p);
  j["sgex"] = num(cq.sgex);
  j["xi"] = num(cq.xi);
  j["G_of_xi"] = num(cq.G_of_xi);
  j["theta_c"] = num(cq.theta_c);
  j["theta_cr"] = num(cq.theta_cr);
  return j;
}

json cmd_rspb(const Config& c, std::ostream& out) {
  const long n = need(c.n, "--n");
  if (n < 1) throw PreconditionError("--n must be positive");
  std::function<RspbReport(double)> eval;
  const std::string& th = c.theorem;
  if (th == "composition") {
    const DiscreteChannel w = load_channel(c);
    const FiniteDist p = load_composition(c, w.inputs());
    eval = [w, p, n](double lml) { return rspb_constant_composition(w, p, n, lml); };
  } else if (th == "symmetric") {
    const std::vector<DiscreteChannel> cycle = load_channels(c);
    std::vector<DiscreteChannel> comps;
    for (long t = 0; t < n; ++t) comps.push_back(cycle[std::size_t(t) % cycle.size()]);
    eval = [comps](double lml) { return rspb_symmetric(comps, lml); };
  } else if (th == "awgn") {
    const AwgnParams p = awgn_params(c);
    eval = [p, n](double lml) { return rspb_awgn_equality(n, lml, p); };
  } else if (th == "awgn-shannon" || th == "awgn-vazquez") {
    const AwgnParams p = awgn_params(c);
    const AwgnExtension ext =
        th == "awgn-shannon" ? AwgnExtension::shannon : AwgnExtension::vazquez_vilar;
    eval = [p, n, ext](double lml) { return rspb_awgn_inequality(n, lml, p, ext); };
  } else {
    throw PreconditionError("unknown --theorem " + th);
  }
  if (!c.sweep.empty()) {
    run_sweep(parse_sweep(c.sweep),
              [&](double rate) {
                const RspbReport r = eval(double(n) * rate);
                return row_from(r, r.exponent_total / double(n));
              },
              out);
    return nullptr;
  }
  if (c.rate.has_value() == c.log_m_over_l.has_value()) {
    throw PreconditionError("specify exactly one of --rate and --log-m-over-l");
  }
  const double lml = c.log_m_over_l ? *c.log_m_over_l : double(n) * *c.rate;
  json j = report_json(eval(lml));
  j["command"] = "rspb";
  j["theorem"] = th;
  return j;
}

json cmd_htbe(const Config& c) {
  const FiniteDist w = load_component(c.w_file, c.w_bernoulli, "w");
  const FiniteDist q = load_component(c.q_file, c.q_bernoulli, "q");
  const double rho = need(c.order, "--order");
  check_order(rho, false);
  const long n = need(c.n, "--n");
  if (n < 1) throw PreconditionError("--n must be positive");
  const double beta = need(c.beta, "--beta");
  const std::vector<FiniteDist> ws(std::size_t(n), w);
  const std::vector<FiniteDist> qs(std::size_t(n), q);
  const HtParams hp = ht_params(rho, {w}, {q});
  const TiltTotals per = tilt_totals(rho, {w}, {q});
  const double tq = double(n) * per.d1_tq;
  const double tw = double(n) * per.d1_tw;
  const HtBoundReport cv = htbe_converse(rho, n, beta, hp, tq, tw);
  const HtBoundReport ac = htbe_achievability(rho, n, beta, hp, tq, tw);
  const double gamma = c.gamma ? *c.gamma : proof_gamma(rho, n, beta, hp);
  const ThresholdTest t = threshold_test(gamma, ws, qs, rho);
  json j = {{"command", "htbe"},
            {"order", num(rho)},
            {"n", n},
            {"beta", num(beta)},
            {"a2", num(hp.a2)},
            {"a3", num(hp.a3)},
            {"log_delta_hat", num(hp.log_delta_hat)},
            {"d1_tq_total", num(tq)},
            {"d1_tw_total", num(tw)},
            {"converse_log", num(*cv.converse_log)},
            {"achievability_w_log", num(*ac.achievability_w_log)},
            {"q_budget_log", num(cv.q_budget_log)},
            {"log_beta_min", num(cv.log_beta_min)},
            {"log_beta_max", num(cv.log_beta_max)},
            {"applicable", cv.applicable},
            {"be_gap", num(be_gap(hp.a2, hp.a3, n))},
            {"gamma", num(gamma)},
            {"threshold", num(t.threshold())}};
  if (t.log_type1) {
    j["test_log_type1"] = num(*t.log_type1);
    j["test_log_type2"] = num(*t.log_type2);
    const NpCurve curve = exact_np_tradeoff(ws, qs, 1u << 20);
    j["exact_np_log_type2"] = num(curve.log_type2_deterministic(cv.q_budget_log));
  }
  return j;
}

json check_json(const CheckRecord& r) {
  json obs = json::object();
  for (const auto& [k, v] : r.observed) obs[k] = num(v);
  return {{"property", r.property}, {"instance", r.instance}, {"observed", obs}, {"pass", r.pass}};
}

json cmd_verify(const Config& c, bool& failed) {
  VerifyOptions o;
  if (c.n) o.n = *c.n;
  o.seed = c.seed;
  o.trials = c.trials;
  std::vector<std::string> suites;
  if (c.suite == "all") {
    suites = verify_suites();
  } else {
    suites = {c.suite};
  }
  json arr = json::array();
  bool all = true;
  for (const auto& s : suites) {
    const VerifyReport r = run_verify(s, o);
    json checks = json::array();
    for (const auto& ck : r.checks) checks.push_back(check_json(ck));
    arr.push_back({{"suite", r.suite}, {"pass", r.all_pass()}, {"checks", checks}});
    all = all && r.all_pass();
  }
  failed = !all;
  return {{"command", "verify"}, {"pass", all}, {"seed", c.seed}, {"suites", arr}};
}

void add_channel_flags(CLI::App* sub, Config& c, bool many = false) {
  auto* opt = sub->add_option("--channel", c.channel_files, "channel file (JSON rows)");
  if (!many) opt->expected(1);
  sub->add_option("--bsc", c.bsc, "binary symmetric channel with this crossover probability");
  sub->add_option("--bec", c.bec, "binary erasure channel with this erasure probability");
  sub->add_option("--zchannel", c.zchannel, "Z-channel: W(0) = (1,0), W(1) = (1-p, p)");
}

void add_pair_flags(CLI::App* sub, Config& c) {
  sub->add_option("--w", c.w_file, "distribution file for W");
  sub->add_option("--q", c.q_file, "distribution file for Q");
  sub->add_option("--w-bernoulli", c.w_bernoulli, "W = (1-p, p)");
  sub->add_option("--q-bernoulli", c.q_bernoulli, "Q = (1-p, p)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Renyi information measures, sphere packing exponents and refined sphere packing "
               "bounds. All rates, exponents and divergences are in nats."};
  app.name("spb");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", c.output, "object (default) or csv; csv requires --sweep")
      ->check(CLI::IsMember({"object", "csv"}));
  app.add_option("--seed", c.seed, "seed for randomized checks");

  auto* div = app.add_subcommand("divergence", "Renyi divergence D_rho(W||Q) in nats and its tilted measure");
  add_pair_flags(div, c);
  div->add_option("--order", c.order, "order rho > 0");

  auto* aug = app.add_subcommand("augustin", "Augustin mean and information I_rho(P;W) in nats");
  add_channel_flags(aug, c);
  aug->add_option("--composition", c.composition, "'uniform' or a distribution file");
  aug->add_option("--order", c.order, "order rho in (0,1]");

  auto* cap = app.add_subcommand("capacity", "Augustin capacity C_rho in nats with certificate");
  add_channel_flags(cap, c);
  cap->add_option("--constraint", c.constraint_file, "constraint file (default: all inputs)");
  cap->add_option("--order", c.order, "order rho in (0,1]");
  cap->add_option("--tol", c.tol, "certificate tolerance in nats");

  auto* spe = app.add_subcommand("spe", "sphere packing exponent E_sp(R) in nats");
  add_channel_flags(spe, c);
  spe->add_option("--composition", c.composition, "'uniform' or a distribution file");
  spe->add_option("--constraint", c.constraint_file, "supremum over a constraint set");
  spe->add_option("--rate", c.rate, "rate R in nats");
  spe->add_option("--sweep", c.sweep, "rate grid start:stop:count in nats (csv output)");
  spe->add_option("--n", c.n, "blocklength for the sweep's bound columns");
  spe->add_option("--grid", c.grid, "also report the grid supremum on this many orders");

  auto* sym = app.add_subcommand("symmetric", "Renyi symmetry check, center and parametric solution; values in nats");
  add_channel_flags(sym, c);
  sym->add_option("--order", c.order, "report the center and capacity at this order");
  sym->add_option("--rate", c.rate, "parametric solution at this rate in nats");
  sym->add_option("--sweep", c.sweep, "rate grid start:stop:count in nats (csv output)");
  sym->add_option("--n", c.n, "blocklength for the sweep's bound columns");

  auto* awgn = app.add_subcommand("awgn", "AWGN closed forms; rates and exponents in nats");
  awgn->add_option("--sigma2", c.sigma2, "noise variance");
  awgn->add_option("--cost", c.cost, "average power budget per symbol");
  awgn->add_option("--rate", c.rate, "rate R in nats per symbol");
  awgn->add_option("--order", c.order, "order rho in (0,1)");
  awgn->add_option("--sweep", c.sweep, "rate grid start:stop:count in nats (csv output)");
  awgn->add_option("--n", c.n, "blocklength for the sweep's bound columns");

  auto* rspb = app.add_subcommand("rspb", "refined sphere packing bound, ln Pe lower bound in nats");
  add_channel_flags(rspb, c, true);
  rspb->add_option("--composition", c.composition, "'uniform' or a distribution file");
  rspb->add_option("--theorem", c.theorem,
                   "composition | symmetric | awgn | awgn-shannon | awgn-vazquez")
      ->check(CLI::IsMember({"composition", "symmetric", "awgn", "awgn-shannon", "awgn-vazquez"}));
  rspb->add_option("--n", c.n, "blocklength");
  rspb->add_option("--rate", c.rate, "rate R = ln(M/L)/n in nats");
  rspb->add_option("--log-m-over-l", c.log_m_over_l, "ln M - ln L in nats");
  rspb->add_option("--sigma2", c.sigma2, "AWGN noise variance");
  rspb->add_option("--cost", c.cost, "AWGN power budget");
  rspb->add_option("--sweep", c.sweep, "rate grid start:stop:count in nats (csv output)");

  auto* ht = app.add_subcommand("htbe", "hypothesis testing bounds for i.i.d. W^n vs Q^n, logs in nats");
  add_pair_flags(ht, c);
  ht->add_option("--order", c.order, "order rho in (0,1)");
  ht->add_option("--n", c.n, "number of components");
  ht->add_option("--beta", c.beta, "type I budget multiplier beta > 0");
  ht->add_option("--gamma", c.gamma, "threshold offset (default: the achievability choice)");

  auto* ver = app.add_subcommand("verify", "run verification suites; observed values in nats");
  ver->add_option("suite", c.suite, "suite name or 'all'");
  ver->add_option("--n", c.n, "blocklength override");
  ver->add_option("--trials", c.trials, "Monte Carlo trials (>= 1e4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream body;
  bool flagged = false;
  try {
    const bool csv = c.output == "csv";
    const bool sweeping = !c.sweep.empty();
    if (csv != sweeping) throw PreconditionError("--output csv goes together with --sweep");
    json j;
    if (*div) j = cmd_divergence(c);
    if (*aug) j = cmd_augustin(c);
    if (*cap) j = cmd_capacity(c, flagged);
    if (*spe) j = cmd_spe(c, body, flagged);
    if (*sym) j = cmd_symmetric(c, body, flagged);
    if (*awgn) j = cmd_awgn(c, body);
    if (*rspb) j = cmd_rspb(c, body);
    if (*ht) j = cmd_htbe(c);
    if (*ver) j = cmd_verify(c, flagged);
    if (!j.is_null()) body << j.dump(2) << '\n';
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  out << body.str();
  return flagged ? 3 : 0;
}

}  // namespace spb::cli
