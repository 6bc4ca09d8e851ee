#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "spb/error.hpp"
#include "spb/refined_spb.hpp"
#include "spb/spe.hpp"

using namespace spb;

namespace {

const double kCritical = 0.13081203594113696;

std::vector<DiscreteChannel> repeat(const DiscreteChannel& w, long n) {
  return std::vector<DiscreteChannel>(std::size_t(n), w);
}

}  // namespace

TEST_CASE("constant composition report at the BSC anchor") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const RspbReport r = rspb_constant_composition(w, FiniteDist::uniform(2), 600, 600 * kCritical);
  CHECK(std::abs(r.rho_star - 0.5) <= 1e-9);
  CHECK(r.exponent_total == doctest::Approx(600 * 0.0923315153730728).epsilon(1e-10));
  CHECK(r.log_prefactor == doctest::Approx(-14.8934013173).epsilon(1e-9));
  CHECK(r.bound_log == doctest::Approx(r.log_prefactor - r.exponent_total).epsilon(1e-15));
  CHECK(r.params.log_delta_hat == doctest::Approx(14.22035460184697).epsilon(1e-10));
  CHECK(r.condition_rhs == r.params.log_delta_hat);
  CHECK(r.applicable);
  CHECK(r.n == 600);
}

TEST_CASE("applicability threshold at the critical rate") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const FiniteDist u = FiniteDist::uniform(2);
  CHECK_FALSE(rspb_constant_composition(w, u, 528, 528 * kCritical).applicable);
  CHECK(rspb_constant_composition(w, u, 530, 530 * kCritical).applicable);
  CHECK_FALSE(rspb_symmetric(repeat(w, 528), 528 * kCritical).applicable);
  CHECK(rspb_symmetric(repeat(w, 529), 529 * kCritical).applicable);
}

TEST_CASE("composition must be realizable at the blocklength") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  CHECK_THROWS_AS(rspb_constant_composition(w, FiniteDist::uniform(2), 601, 601 * kCritical),
                  PreconditionError);
  CHECK_THROWS_AS(rspb_constant_composition(w, FiniteDist::uniform(2), 600, 600 * 0.5),
                  RateOutOfRangeError);
  CHECK_THROWS_AS(rspb_constant_composition(w, FiniteDist::uniform(3), 600, 60.0),
                  PreconditionError);
}

TEST_CASE("composition and symmetric reports coincide") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  for (double rate : {0.08, kCritical, 0.25}) {
    const RspbReport a = rspb_constant_composition(w, FiniteDist::uniform(2), 600, 600 * rate);
    const RspbReport b = rspb_symmetric(repeat(w, 600), 600 * rate);
    CHECK(std::abs(a.rho_star - b.rho_star) <= 1e-9);
    CHECK(std::abs(a.exponent_total - b.exponent_total) <= 1e-9 * a.exponent_total);
    CHECK(std::abs(a.log_prefactor - b.log_prefactor) <= 1e-9);
  }
}

TEST_CASE("non-stationary symmetric product") {
  std::vector<DiscreteChannel> comps;
  for (int t = 0; t < 100; ++t) {
    comps.push_back(t % 2 == 0 ? DiscreteChannel::bsc(0.1) : DiscreteChannel::bsc(0.2));
  }
  const RspbReport r = rspb_symmetric(comps, 100 * 0.1);
  CHECK(r.rho_star > 0.0);
  CHECK(r.rho_star < 1.0);
  CHECK(r.exponent_total > 0.0);
  // the mixed exponent lies between the two stationary ones
  const RspbReport a = rspb_symmetric(repeat(DiscreteChannel::bsc(0.1), 100), 100 * 0.1);
  const RspbReport b = rspb_symmetric(repeat(DiscreteChannel::bsc(0.2), 100), 100 * 0.1);
  CHECK(r.exponent_total < a.exponent_total);
  CHECK(r.exponent_total > b.exponent_total);
}

TEST_CASE("non-symmetric component is named") {
  std::vector<DiscreteChannel> comps = repeat(DiscreteChannel::bsc(0.1), 5);
  comps[3] = DiscreteChannel::z_channel(0.5);
  try {
    rspb_symmetric(comps, 0.5);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find('3') != std::string::npos);
  }
  CHECK_THROWS_AS(rspb_symmetric({}, 0.5), PreconditionError);
}

TEST_CASE("AWGN equality report") {
  const AwgnParams p{1.0, 1.0};
  const long n = 1000;
  const AwgnPoint g = awgn_parametric(0.5, p);
  const RspbReport r = rspb_awgn_equality(n, n * g.rate, p);
  CHECK(std::abs(r.rho_star - 0.5) <= 1e-9);
  CHECK(r.exponent_total == doctest::Approx(n * g.esp).epsilon(1e-9));
  CHECK(r.params.log_delta_hat == doctest::Approx(g.log_delta_hat).epsilon(1e-12));
  const double lhs = std::sqrt(g.a2 * n) - std::log(4.0 * n);
  CHECK(r.condition_lhs == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(r.printed_condition_lhs == doctest::Approx(std::sqrt(g.a2 * n) - std::log(double(n))));
  CHECK(r.printed_condition_rhs == doctest::Approx(g.delta_hat()).epsilon(1e-12));
  // the delta_hat constant is far above sqrt(a2 n) at this blocklength
  CHECK_FALSE(r.applicable);
  CHECK_FALSE(r.printed_applicable);
  const RspbReport big = rspb_awgn_equality(20000000, 20000000 * g.rate, p);
  CHECK(big.applicable);
}

TEST_CASE("AWGN inequality chain") {
  const AwgnParams p{1.0, 1.0};
  const long n = 1000;
  const double lml = n * 0.1346382;
  for (AwgnExtension ext : {AwgnExtension::shannon, AwgnExtension::vazquez_vilar}) {
    const AwgnParams used{1.0, ext == AwgnExtension::shannon ? 1.0 : n / (n + 1.0)};
    const RspbReport r = rspb_awgn_inequality(n, lml, p, ext);
    const double rho0 = awgn_rho_star(lml / (n + 1), used);
    const AwgnPoint pt = awgn_parametric(rho0, used);
    const double prefactor = (rho0 - 1.0) * pt.log_delta_hat - std::log(8.0 * n) / (2.0 * rho0) -
                             (1.0 - rho0) / rho0 * awgn_capacity(rho0, used);
    CHECK(r.n == n);
    CHECK(r.rho_star == doctest::Approx(rho0).epsilon(1e-12));
    CHECK(r.log_prefactor == doctest::Approx(prefactor).epsilon(1e-12));
    const double esp = awgn_parametric(awgn_rho_star(lml / n, used), used).esp;
    CHECK(r.exponent_total == doctest::Approx(n * esp).epsilon(1e-9));
    CHECK(r.bound_log == doctest::Approx(r.log_prefactor - r.exponent_total).epsilon(1e-14));
  }
}

TEST_CASE("doubling the blocklength") {
  const AwgnParams p{1.0, 1.0};
  const double rate = 0.1;
  const RspbReport a = rspb_awgn_equality(1000, 1000 * rate, p);
  const RspbReport b = rspb_awgn_equality(2000, 2000 * rate, p);
  const double esp = a.exponent_total / 1000.0;
  CHECK(b.bound_log - a.bound_log ==
        doctest::Approx(-1000.0 * esp - std::log(2.0) / (2.0 * a.rho_star)).epsilon(1e-9));
}

TEST_CASE("bound decreases in n at a fixed rate") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  double prev = kInf;
  for (long n = 100; n <= 1000; n += 100) {
    const double b = rspb_constant_composition(w, FiniteDist::uniform(2), n, n * 0.1).bound_log;
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("exponent total matches the grid supremum") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const RspbReport r = rspb_constant_composition(w, FiniteDist::uniform(2), 600, 600 * 0.1);
  CHECK(r.exponent_total / 600 ==
        doctest::Approx(spe_grid_sup(FiniteDist::uniform(2), w, 0.1, 4096)).epsilon(1e-6));
}

TEST_CASE("inequality and equality prefactors stay close") {
  const AwgnParams p{1.0, 1.0};
  for (long n : {1000L, 10000L, 100000L, 1000000L}) {
    const double lml = n * 0.1;
    const RspbReport e = rspb_awgn_equality(n, lml, p);
    const RspbReport i = rspb_awgn_inequality(n, lml, p, AwgnExtension::shannon);
    CHECK(std::abs(e.log_prefactor - i.log_prefactor) <= 10.0);
  }
}
