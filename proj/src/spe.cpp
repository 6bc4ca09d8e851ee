#include "spb/spe.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "spb/error.hpp"

namespace spb {

RateRange spe_rate_range(const FiniteDist& p, const DiscreteChannel& channel) {
  const double lower = augustin_fixed_point(kLowerLimitOrder, p, channel).information;
  const double upper = augustin_fixed_point(1.0, p, channel).information;
  return {lower, upper};
}

SpePoint spe_parametric(const FiniteDist& p, const DiscreteChannel& channel, double rate) {
  const RateRange range = spe_rate_range(p, channel);
  if (range.upper - range.lower < 1e-12) {
    throw DegenerateError("rate profile is flat: I_rho(P;W) does not vary with rho");
  }
  if (!(rate > range.lower && rate < range.upper)) {
    throw RateOutOfRangeError(rate, range.lower, range.upper);
  }
  auto f = [&](double rho) { return haroutunian_rate(rho, p, channel); };
  const BisectionResult b = bisect_increasing(f, rate, kRhoFloor, 1.0 - kRhoFloor, 1e-14, 1e-15);
  if (std::abs(b.value - rate) > 1e-8) {
    std::ostringstream os;
    os << "no order reaches rate " << rate << " (closest " << b.value << ")";
    throw ConvergenceError(os.str(), std::abs(b.value - rate), b.iterations);
  }
  const double rho = b.x;
  const TiltedPoint tp = tilted_point(rho, p, channel);
  const double check = (1.0 - rho) / rho * (tp.solution.information - tp.rate);
  if (std::abs(check - tp.exponent) > 1e-8) {
    std::ostringstream os;
    os << "parametric exponent mismatch " << std::abs(check - tp.exponent);
    throw ConvergenceError(os.str(), std::abs(check - tp.exponent), b.iterations);
  }
  return {rate, rho, tp.exponent, (rho - 1.0) / rho};
}

double spe_grid_sup(const FiniteDist& p, const DiscreteChannel& channel, double rate,
                    int grid_size) {
  if (grid_size < 64) throw PreconditionError("grid_size must be at least 64");
  std::vector<double> values(static_cast<std::size_t>(grid_size), 0.0);
  parallel_for(values.size(), [&](std::size_t i) {
    const double rho = double(i + 1) / grid_size;
    if (rho >= 1.0) return;
    const double info = augustin_fixed_point(rho, p, channel).information;
    values[i] = (1.0 - rho) / rho * (info - rate);
  });
  return std::max(0.0, *std::max_element(values.begin(), values.end()));
}

namespace {

struct RhoValue {
  double value;
  CapacityResult cap;
};

RhoValue constrained_objective(double rho, const DiscreteChannel& channel,
                               const ConstraintSet& constraint, double rate) {
  CapacityResult cap = augustin_capacity(rho, channel, constraint);
  const double value = (1.0 - rho) / rho * (cap.capacity - rate);
  return {value, std::move(cap)};
}

}  // namespace

SpeConstrained spe_constrained(const DiscreteChannel& channel, const ConstraintSet& constraint,
                               double rate) {
  constraint.validate(channel.inputs());
  if (const auto* single = std::get_if<ConstraintSet::Single>(&constraint.kind)) {
    const SpePoint pt = spe_parametric(single->p, channel, rate);
    return {pt.exponent, single->p, pt.rho_star, true};
  }

  std::optional<SpeConstrained> best;
  auto offer = [&](double value, const FiniteDist& p, double rho, bool certified) {
    if (!best || value > best->value) best = SpeConstrained{value, p, rho, certified};
  };
  auto pointwise = [&](const FiniteDist& p) {
    try {
      const SpePoint pt = spe_parametric(p, channel, rate);
      offer(pt.exponent, p, pt.rho_star, true);
    } catch (const PreconditionError&) {
      // rate outside this member's range: its exponent is 0 or infinite.
    }
  };

  if (const auto* list = std::get_if<ConstraintSet::ExplicitList>(&constraint.kind)) {
    for (const auto& p : list->members) {
      offer(0.0, p, 1.0, true);
      pointwise(p);
    }
    return *best;
  }

  // Coarse scan over rho, then golden-section refinement around the best
  // grid point.
  constexpr int kCoarse = 64;
  std::vector<double> grid(kCoarse);
  for (int i = 0; i < kCoarse; ++i) grid[i] = (i + 0.5) / kCoarse;
  std::vector<double> vals(kCoarse);
  bool certified = true;
  int arg = 0;
  for (int i = 0; i < kCoarse; ++i) {
    const RhoValue rv = constrained_objective(grid[i], channel, constraint, rate);
    vals[i] = rv.value;
    certified = certified && rv.cap.certified;
    if (vals[i] > vals[arg]) arg = i;
  }
  double lo = arg == 0 ? 1e-6 : grid[arg - 1];
  double hi = arg == kCoarse - 1 ? 1.0 - 1e-9 : grid[arg + 1];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - g * (hi - lo);
  double b = lo + g * (hi - lo);
  RhoValue fa = constrained_objective(a, channel, constraint, rate);
  RhoValue fb = constrained_objective(b, channel, constraint, rate);
  for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
    if (fa.value >= fb.value) {
      hi = b;
      b = a;
      fb = std::move(fa);
      a = hi - g * (hi - lo);
      fa = constrained_objective(a, channel, constraint, rate);
    } else {
      lo = a;
      a = b;
      fa = std::move(fb);
      b = lo + g * (hi - lo);
      fb = constrained_objective(b, channel, constraint, rate);
    }
  }
  const bool a_wins = fa.value >= fb.value;
  const RhoValue& top = a_wins ? fa : fb;
  certified = certified && top.cap.certified;
  offer(std::max(0.0, top.value), top.cap.optimizer, a_wins ? a : b, certified);
  pointwise(top.cap.optimizer);
  best->certified = certified;
  return *best;
}

}  // namespace spb
