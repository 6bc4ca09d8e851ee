#include <doctest.h>

#include <cmath>
#include <vector>

#include "spb/error.hpp"
#include "spb/htbe.hpp"
#include "spb/oracle.hpp"

using namespace spb;

namespace {

const FiniteDist kW = FiniteDist::bernoulli(0.1);
const FiniteDist kQ = FiniteDist::bernoulli(0.5);

std::vector<FiniteDist> repeat(const FiniteDist& d, long n) {
  return std::vector<FiniteDist>(std::size_t(n), d);
}

}  // namespace

TEST_CASE("moment constants of Bern(0.1) vs Bern(0.5)") {
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  CHECK(hp.a2 == doctest::Approx(0.90521172060943648).epsilon(1e-13));
  CHECK(hp.a3 == doctest::Approx(1.24309590013491312).epsilon(1e-13));
  CHECK(hp.log_delta_hat == doctest::Approx(14.22035460184697).epsilon(1e-13));
  // averaging identical components changes nothing
  const HtParams h3 = ht_params(0.5, repeat(kW, 3), repeat(kQ, 3));
  CHECK(h3.a2 == doctest::Approx(hp.a2).epsilon(1e-14));
  CHECK(be_gap(hp.a2, hp.a3, 100) == doctest::Approx(0.08082903768654761).epsilon(1e-13));
}

TEST_CASE("parameter preconditions") {
  CHECK_THROWS_AS(ht_params(0.5, {kW}, {kQ, kQ}), PreconditionError);
  CHECK_THROWS_AS(ht_params(1.0, {kW}, {kQ}), PreconditionError);
  CHECK_THROWS_AS(ht_params(0.5, {}, {}), PreconditionError);
  CHECK_THROWS_AS(ht_params(0.5, {kW}, {kW}), DegenerateError);
  CHECK_THROWS_AS(ht_params_from_moments(0.0, 1.0), DegenerateError);
  CHECK_THROWS_AS(be_gap(1.0, 1.0, 0), PreconditionError);
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  CHECK_THROWS_AS(htbe_converse(0.5, 10, 0.0, hp, 0.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(htbe_converse(0.5, 0, 1.0, hp, 0.0, 0.0), PreconditionError);
}

TEST_CASE("window opens at n = 56") {
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  const HtBoundReport r55 = htbe_converse(0.5, 55, 1.0, hp, 0.0, 0.0);
  const HtBoundReport r56 = htbe_converse(0.5, 56, 1.0, hp, 0.0, 0.0);
  CHECK(r55.log_beta_min > r55.log_beta_max);
  CHECK(r56.log_beta_min <= r56.log_beta_max);
}

TEST_CASE("converse and achievability sandwich the exact trade-off") {
  const double rho = 0.5;
  const HtParams hp = ht_params(rho, {kW}, {kQ});
  const TiltTotals per = tilt_totals(rho, {kW}, {kQ});
  for (long n : {64L, 128L}) {
    const NpCurve curve = exact_np_tradeoff(repeat(kW, n), repeat(kQ, n), 1u << 20);
    const double tq = double(n) * per.d1_tq;
    const double tw = double(n) * per.d1_tw;
    const HtBoundReport win = htbe_converse(rho, n, 1.0, hp, tq, tw);
    for (double t : {0.1, 0.5, 0.9}) {
      const double beta =
          std::exp(win.log_beta_min + t * (win.log_beta_max - win.log_beta_min));
      const HtBoundReport c = htbe_converse(rho, n, beta, hp, tq, tw);
      const HtBoundReport a = htbe_achievability(rho, n, beta, hp, tq, tw);
      REQUIRE(c.applicable);
      CHECK(c.q_budget_log == doctest::Approx(std::log(beta) - tq));
      const double exact = curve.log_type2_deterministic(c.q_budget_log);
      CHECK(*c.converse_log <= exact);
      CHECK(exact <= *a.achievability_w_log);
    }
  }
}

TEST_CASE("bounds are monotone in beta") {
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  double prev_c = kInf;
  double prev_a = kInf;
  for (double beta : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double c = *htbe_converse(0.5, 100, beta, hp, 10.0, 5.0).converse_log;
    const double a = *htbe_achievability(0.5, 100, beta, hp, 10.0, 5.0).achievability_w_log;
    CHECK(c < prev_c);
    CHECK(a < prev_a);
    prev_c = c;
    prev_a = a;
  }
}

TEST_CASE("threshold test at gamma = 0, n = 10") {
  const ThresholdTest t = threshold_test(0.0, repeat(kW, 10), repeat(kQ, 10), 0.5);
  REQUIRE(t.type1.has_value());
  // accept iff at most two ones
  CHECK(*t.type1 == doctest::Approx(0.0546875).epsilon(1e-13));
  CHECK(*t.type2 == doctest::Approx(0.0701908264).epsilon(1e-9));
  CHECK(t.accepts(kInf));
  CHECK_FALSE(t.accepts(-kInf));
}

TEST_CASE("threshold test without enumeration") {
  const ThresholdTest t = threshold_test(0.0, repeat(kW, 10), repeat(kQ, 10), 0.5, 4);
  CHECK_FALSE(t.type1.has_value());
  CHECK(t.center == doctest::Approx(10.0 * tilted_log_moments(0.5, kW, kQ).mean));
}

TEST_CASE("proof threshold keeps Q(accept) within the budget") {
  const double rho = 0.5;
  const HtParams hp = ht_params(rho, {kW}, {kQ});
  const TiltTotals per = tilt_totals(rho, {kW}, {kQ});
  for (long n : {16L, 64L, 200L}) {
    for (double beta : {0.01, 0.3, 1.0, 3.0}) {
      const ThresholdTest t =
          threshold_test(proof_gamma(rho, n, beta, hp), repeat(kW, n), repeat(kQ, n), rho);
      CHECK(*t.log_type1 <= std::log(beta) - double(n) * per.d1_tq);
    }
  }
}

TEST_CASE("window endpoints at n = 10") {
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  const HtBoundReport r = htbe_converse(0.5, 10, 0.01, hp, 0.0, 0.0);
  CHECK(std::exp(r.log_beta_min) == doctest::Approx(0.0703).epsilon(1e-3));
  CHECK(std::exp(r.log_beta_max) == doctest::Approx(0.00116).epsilon(1e-2));
  CHECK_FALSE(r.applicable);
}

TEST_CASE("bound gap does not depend on n or the divergences") {
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  const auto gap = [&](long n, double d1q, double d1w) {
    const HtBoundReport c = htbe_converse(0.5, n, 1.0, hp, d1q, d1w);
    const HtBoundReport a = htbe_achievability(0.5, n, 1.0, hp, d1q, d1w);
    REQUIRE(c.converse_log.has_value());
    REQUIRE(a.achievability_w_log.has_value());
    return *a.achievability_w_log - *c.converse_log;
  };
  const double g = gap(1000, 10.0, 20.0);
  CHECK(gap(4000, 10.0, 20.0) == doctest::Approx(g).epsilon(1e-12));
  CHECK(gap(1000, 3.0, 7.0) == doctest::Approx(g).epsilon(1e-12));
}

TEST_CASE("alternating components average their moments") {
  const FiniteDist w2 = FiniteDist::bernoulli(0.2);
  const HtParams mixed = ht_params(0.5, {kW, w2}, {kQ, kQ});
  const double a2 = 0.5 * (tilted_log_moments(0.5, kW, kQ).a2 + tilted_log_moments(0.5, w2, kQ).a2);
  CHECK(mixed.a2 == doctest::Approx(a2).epsilon(1e-14));
}

TEST_CASE("infinite thresholds") {
  const ThresholdTest hi = threshold_test(kInf, repeat(kW, 5), repeat(kQ, 5), 0.5);
  CHECK(*hi.type1 == 0.0);
  CHECK(*hi.type2 == doctest::Approx(1.0).epsilon(1e-15));
  const ThresholdTest lo = threshold_test(-kInf, repeat(kW, 5), repeat(kQ, 5), 0.5);
  CHECK(*lo.type1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*lo.type2 == 0.0);
}

TEST_CASE("Berry-Esseen gap scaling") {
  CHECK(be_gap(0.5, 0.0, 100) == 0.0);
  CHECK(be_gap(0.9, 1.2, 100) / be_gap(0.9, 1.2, 200) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("large blocklength stays finite") {
  const HtParams hp = ht_params(0.5, {kW}, {kQ});
  const HtBoundReport c = htbe_converse(0.5, 1000000, 1.0, hp, 1e5, 2e5);
  REQUIRE(c.converse_log.has_value());
  CHECK(std::isfinite(*c.converse_log));
  CHECK(std::isfinite(c.log_beta_max));
}
