#include "spb/refined_spb.hpp"

#include <cmath>
#include <sstream>

#include "spb/error.hpp"

namespace spb {

namespace {

bool same_matrix(const DiscreteChannel& a, const DiscreteChannel& b) {
  return a.matrix().rows() == b.matrix().rows() && a.matrix().cols() == b.matrix().cols() &&
         a.matrix() == b.matrix();
}

void require_blocklength(long n) {
  if (n < 1) throw PreconditionError("blocklength n must be positive");
}

RspbReport assemble(double rate, long n, double rho, double exponent_total,
                    const HtParams& params) {
  RspbReport r;
  r.rate = rate;
  r.n = n;
  r.rho_star = rho;
  r.exponent_total = exponent_total;
  r.params = params;
  const double log4n = std::log(4.0 * double(n));
  r.log_prefactor = (rho - 1.0) * params.log_delta_hat - log4n / (2.0 * rho);
  r.bound_log = r.log_prefactor - exponent_total;
  r.condition_lhs = std::sqrt(params.a2 * double(n)) - log4n / (2.0 * rho);
  r.condition_rhs = params.log_delta_hat;
  r.applicable = r.condition_lhs >= r.condition_rhs;
  return r;
}

void add_printed_reading(RspbReport& r, long n) {
  r.printed_condition_lhs =
      std::sqrt(r.params.a2 * double(n)) - std::log(double(n)) / (2.0 * r.rho_star);
  r.printed_condition_rhs = r.params.delta_hat();
  r.printed_applicable = r.printed_condition_lhs >= r.printed_condition_rhs;
}

}  // namespace

RspbReport rspb_constant_composition(const DiscreteChannel& channel, const FiniteDist& composition,
                                     long n, double log_M_over_L) {
  require_blocklength(n);
  if (composition.size() != channel.inputs()) {
    throw PreconditionError("composition does not match the channel input alphabet");
  }
  for (Index x = 0; x < composition.size(); ++x) {
    const double count = double(n) * composition[x];
    if (std::abs(count - std::round(count)) > 1e-9) {
      std::ostringstream os;
      os << "n * P(" << x << ") = " << count << " is not an integer";
      throw PreconditionError(os.str());
    }
  }
  const double rate = log_M_over_L / double(n);
  const SpePoint sp = spe_parametric(composition, channel, rate);
  const AugustinSolution sol = augustin_fixed_point(sp.rho_star, composition, channel);
  double a2 = 0.0;
  double a3 = 0.0;
  for (Index x = 0; x < composition.size(); ++x) {
    if (composition[x] <= 0.0) continue;
    const LogMoments m = tilted_log_moments(sp.rho_star, channel.row(x), sol.mean);
    a2 += composition[x] * m.a2;
    a3 += composition[x] * m.a3;
  }
  return assemble(rate, n, sp.rho_star, double(n) * sp.exponent,
                  ht_params_from_moments(a2, a3));
}

RspbReport rspb_symmetric(const std::vector<DiscreteChannel>& channels, double log_M_over_L) {
  if (channels.empty()) throw PreconditionError("need at least one component channel");
  // Components are grouped by matrix so repeated channels are analysed once.
  std::vector<const DiscreteChannel*> distinct;
  std::vector<long> count;
  for (const auto& w : channels) {
    std::size_t k = 0;
    while (k < distinct.size() && !same_matrix(*distinct[k], w)) ++k;
    if (k == distinct.size()) {
      distinct.push_back(&w);
      count.push_back(0);
    }
    ++count[k];
  }
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    const SymmetryReport rep = check_renyi_symmetry(*distinct[k]);
    if (!rep.is_symmetric) {
      std::size_t first = 0;
      while (!same_matrix(channels[first], *distinct[k])) ++first;
      std::ostringstream os;
      os << "component " << first << " is not Renyi symmetric (" << rep.failure << ")";
      throw PreconditionError(os.str());
    }
  }
  const long n = long(channels.size());
  auto summed = [&](double rho, auto member) {
    double s = 0.0;
    for (std::size_t k = 0; k < distinct.size(); ++k) s += double(count[k]) * member(rho, *distinct[k]);
    return s;
  };
  auto capacity = [](double rho, const DiscreteChannel& w) {
    return symmetric_center(rho, w).capacity;
  };
  const double lower = summed(kLowerLimitOrder, capacity);
  const double upper = summed(1.0, capacity);
  if (upper - lower < 1e-12) throw DegenerateError("capacities do not vary with the order");
  if (!(log_M_over_L > lower && log_M_over_L < upper)) {
    throw RateOutOfRangeError(log_M_over_L, lower, upper);
  }
  auto rate_of = [](double rho, const DiscreteChannel& w) { return symmetric_tilt(rho, w).rate; };
  const BisectionResult b = bisect_increasing([&](double rho) { return summed(rho, rate_of); },
                                              log_M_over_L, kRhoFloor, 1.0 - kRhoFloor,
                                              1e-14 * std::max(1.0, log_M_over_L), 1e-15);
  if (std::abs(b.value - log_M_over_L) > 1e-8 * std::max(1.0, log_M_over_L)) {
    throw ConvergenceError("no order reaches the requested ln(M/L)",
                           std::abs(b.value - log_M_over_L), b.iterations);
  }
  const double rho = b.x;
  double exponent = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  bool spread = false;
  bool constant_centers = true;
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    const SymmetricTilt t = symmetric_tilt(rho, *distinct[k]);
    const double c = double(count[k]);
    exponent += c * t.exponent;
    a2 += c * t.moments.a2;
    a3 += c * t.moments.a3;
    spread = spread || t.moments.a2 > 1e-12;
    const SymmetryReport rep = check_renyi_symmetry(*distinct[k]);
    for (const auto& q : rep.center_per_order) {
      constant_centers = constant_centers && q.total_variation(rep.center_per_order.front()) <= 1e-9;
    }
  }
  RspbReport r = assemble(log_M_over_L / double(n), n, rho, exponent,
                          ht_params_from_moments(a2 / double(n), a3 / double(n)));
  r.slope_certified = spread || constant_centers;
  return r;
}

RspbReport rspb_awgn_equality(long n, double log_M_over_L, const AwgnParams& params) {
  require_blocklength(n);
  params.validate();
  const double rate = log_M_over_L / double(n);
  const double rho = awgn_rho_star(rate, params);
  const AwgnPoint pt = awgn_parametric(rho, params);
  RspbReport r = assemble(rate, n, rho, double(n) * pt.esp,
                          ht_params_from_moments(pt.a2, pt.a3_bound));
  add_printed_reading(r, n);
  return r;
}

RspbReport rspb_awgn_inequality(long n, double log_M_over_L, const AwgnParams& params,
                                AwgnExtension extension) {
  require_blocklength(n);
  params.validate();
  AwgnParams used = params;
  if (extension == AwgnExtension::vazquez_vilar) used.cost = params.cost * double(n) / double(n + 1);
  const double rate = log_M_over_L / double(n);
  const double rate0 = log_M_over_L / double(n + 1);
  const double rho0 = awgn_rho_star(rate0, used);
  const AwgnPoint pt0 = awgn_parametric(rho0, used);
  const double esp = awgn_parametric(awgn_rho_star(rate, used), used).esp;
  const HtParams hp = ht_params_from_moments(pt0.a2, pt0.a3_bound);

  RspbReport r = assemble(rate, n + 1, rho0, double(n) * esp, hp);
  r.n = n;
  r.log_prefactor = (rho0 - 1.0) * hp.log_delta_hat - std::log(8.0 * double(n)) / (2.0 * rho0) -
                    (1.0 - rho0) / rho0 * awgn_capacity(rho0, used);
  r.bound_log = r.log_prefactor - r.exponent_total;
  add_printed_reading(r, n + 1);
  return r;
}

}  // namespace spb
