#include <doctest.h>

#include <cmath>

#include "spb/augustin.hpp"
#include "spb/error.hpp"
#include "spb/oracle.hpp"
#include "spb/verify.hpp"

using namespace spb;

TEST_CASE("BSC mean is uniform under the uniform input") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const AugustinSolution s = augustin_fixed_point(0.5, FiniteDist::uniform(2), w);
  CHECK(s.mean[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.information == doctest::Approx(0.22314355131420976).epsilon(1e-13));
  CHECK(s.residual <= 1e-12);
  CHECK(s.identity_residual <= 1e-12);
}

TEST_CASE("order one is the mutual information") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const AugustinSolution s = augustin_fixed_point(1.0, FiniteDist::bernoulli(0.3), w);
  CHECK(s.information == doctest::Approx(0.31595250448970746).epsilon(1e-13));
  CHECK(s.mean[1] == doctest::Approx(0.34).epsilon(1e-14));
}

TEST_CASE("random instances meet the residual targets") {
  Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    const Index nx = 2 + Index(rng.uniform() * 4);
    const Index ny = 2 + Index(rng.uniform() * 4);
    const FiniteDist p = random_distribution(rng, nx);
    const DiscreteChannel w = random_channel(rng, nx, ny);
    const double rho = 0.02 + 0.97 * rng.uniform();
    const AugustinSolution s = augustin_fixed_point(rho, p, w);
    CHECK(s.residual <= 1e-12);
    CHECK(s.identity_residual <= 1e-9);
    // I_rho(P;W) is the minimum of the conditional divergence over q
    CHECK(s.information <= conditional_renyi_divergence(rho, w, w.mix(p), p) + 1e-12);
  }
}

TEST_CASE("information is non-decreasing in the order") {
  Rng rng(8);
  const FiniteDist p = random_distribution(rng, 3);
  const DiscreteChannel w = random_channel(rng, 3, 4);
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = augustin_fixed_point(0.05 * i, p, w).information;
    CHECK(v >= prev - 1e-13);
    prev = v;
  }
}

TEST_CASE("derivative against central difference") {
  Rng rng(13);
  for (int k = 0; k < 10; ++k) {
    const FiniteDist p = random_distribution(rng, 3);
    const DiscreteChannel w = random_channel(rng, 3, 3);
    const double rho = 0.1 + 0.8 * rng.uniform();
    const double fd = fd_derivative_check(
        [&](double r) { return augustin_fixed_point(r, p, w).information; }, rho, 1e-4);
    CHECK(std::abs(fd - augustin_info_derivative(rho, p, w)) <= 1e-5);
  }
}

TEST_CASE("fixed point preconditions and budget") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const FiniteDist u = FiniteDist::uniform(2);
  CHECK_THROWS_AS(augustin_fixed_point(0.0, u, w), PreconditionError);
  CHECK_THROWS_AS(augustin_fixed_point(1.5, u, w), PreconditionError);
  CHECK_THROWS_AS(augustin_fixed_point(0.5, FiniteDist::uniform(3), w), PreconditionError);
  Rng rng(2);
  const FiniteDist p = random_distribution(rng, 4);
  const DiscreteChannel hard = random_channel(rng, 4, 5);
  AugustinOptions tight;
  tight.max_iter = 1;
  CHECK_THROWS_AS(augustin_fixed_point(0.01, p, hard, tight), ConvergenceError);
}

TEST_CASE("mean restricted to the reachable outputs") {
  const DiscreteChannel bec = DiscreteChannel::bec(0.3);
  const AugustinSolution s = augustin_fixed_point(0.5, FiniteDist::point_mass(2, 0), bec);
  CHECK(s.mean[2] == 0.0);
  CHECK(s.information == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("Haroutunian rate is monotone") {
  const DiscreteChannel w = DiscreteChannel::z_channel(0.4);
  const FiniteDist p = FiniteDist::bernoulli(0.4);
  double prev = 0.0;
  for (int i = 1; i < 20; ++i) {
    const double r = haroutunian_rate(0.05 * i, p, w);
    CHECK(r >= prev - 1e-13);
    prev = r;
  }
  const TiltedPoint t = tilted_point(0.5, FiniteDist::uniform(2), DiscreteChannel::bsc(0.1));
  CHECK(t.rate == doctest::Approx(0.13081203594113696).epsilon(1e-12));
  CHECK(t.exponent == doctest::Approx(0.0923315153730728).epsilon(1e-12));
}

TEST_CASE("unconstrained capacities") {
  const CapacityResult a = augustin_capacity(0.5, DiscreteChannel::bsc(0.1), ConstraintSet::all());
  CHECK(a.capacity == doctest::Approx(0.22314355131420985).epsilon(1e-10));
  CHECK(a.certified);
  CHECK(a.certificate_gap <= 1e-9);
  const CapacityResult b = augustin_capacity(0.5, DiscreteChannel::bsc(0.2), ConstraintSet::all());
  CHECK(b.capacity == doctest::Approx(0.10536051565782630).epsilon(1e-10));
  const CapacityResult z =
      augustin_capacity(0.5, DiscreteChannel::z_channel(0.5), ConstraintSet::all());
  CHECK(z.capacity == doctest::Approx(0.1583471838).epsilon(1e-9));
  CHECK(z.certified);
}

TEST_CASE("capacity of a product is additive") {
  const DiscreteChannel a = DiscreteChannel::bsc(0.1);
  const DiscreteChannel b = DiscreteChannel::bsc(0.2);
  const double c = augustin_capacity(0.5, product(a, b), ConstraintSet::all()).capacity;
  CHECK(std::abs(c - (0.22314355131420985 + 0.10536051565782630)) <= 1e-9);
}

TEST_CASE("cost constrained capacity sits on the budget") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  VectorXd costs(2);
  costs << 0.0, 1.0;
  const ConstraintSet set = ConstraintSet::cost(costs, 0.3);
  const CapacityResult r1 = augustin_capacity(1.0, w, set);
  CHECK(r1.capacity == doctest::Approx(0.31595250448970746).epsilon(1e-8));
  CHECK(r1.optimizer[1] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r1.certified);
  CHECK(r1.multiplier > 0.0);
  const CapacityResult r = augustin_capacity(0.5, w, set);
  const double at_budget = augustin_fixed_point(0.5, FiniteDist::bernoulli(0.3), w).information;
  CHECK(std::abs(r.capacity - at_budget) <= 1e-9);
  CHECK(r.certified);
  CHECK_THROWS_AS(augustin_capacity(0.5, w, ConstraintSet::cost(costs + VectorXd::Ones(2), 0.3)),
                  PreconditionError);
}

TEST_CASE("single and explicit-list sets") {
  const DiscreteChannel w = DiscreteChannel::bsc(0.1);
  const FiniteDist p = FiniteDist::bernoulli(0.2);
  const CapacityResult s = augustin_capacity(0.5, w, ConstraintSet::single(p));
  CHECK(s.capacity == doctest::Approx(augustin_fixed_point(0.5, p, w).information).epsilon(1e-14));
  const CapacityResult l = augustin_capacity(
      0.5, w, ConstraintSet::explicit_list({p, FiniteDist::uniform(2), FiniteDist::bernoulli(0.9)}));
  CHECK(l.capacity == doctest::Approx(0.22314355131420985).epsilon(1e-12));
  CHECK(l.optimizer[0] == doctest::Approx(0.5));
  CHECK(l.certificate_gap == 0.0);
  CHECK_THROWS_AS(augustin_capacity(0.5, w, ConstraintSet::explicit_list({})), PreconditionError);
  CHECK_THROWS_AS(augustin_capacity(0.5, w, ConstraintSet::single(FiniteDist::uniform(3))),
                  PreconditionError);
}

TEST_CASE("constraint membership") {
  VectorXd costs(2);
  costs << 0.0, 1.0;
  const ConstraintSet set = ConstraintSet::cost(costs, 0.3);
  CHECK(set.contains(FiniteDist::bernoulli(0.3)));
  CHECK_FALSE(set.contains(FiniteDist::bernoulli(0.31)));
  CHECK(ConstraintSet::all().contains(FiniteDist::uniform(5)));
}

TEST_CASE("capacity is deterministic") {
  Rng rng(21);
  const DiscreteChannel w = random_channel(rng, 4, 4);
  const CapacityResult a = augustin_capacity(0.3, w, ConstraintSet::all());
  const CapacityResult b = augustin_capacity(0.3, w, ConstraintSet::all());
  CHECK(a.capacity == b.capacity);
  CHECK(a.center.masses() == b.center.masses());
}

TEST_CASE("point-mass input") {
  const DiscreteChannel w = DiscreteChannel::bec(0.3);
  const AugustinSolution s = augustin_fixed_point(0.4, FiniteDist::point_mass(2, 1), w);
  CHECK(s.mean.total_variation(w.row(1)) <= 1e-15);
  CHECK(s.information == 0.0);
  CHECK(augustin_info_derivative(0.4, FiniteDist::point_mass(2, 1), w) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(haroutunian_rate(0.4, FiniteDist::point_mass(2, 1), w) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("derivative at order one") {
  const double d = augustin_info_derivative(1.0, FiniteDist::uniform(2), DiscreteChannel::bsc(0.1));
  CHECK(d == doctest::Approx(0.5 * 0.09 * std::pow(std::log(9.0), 2)).epsilon(1e-13));
  const double fd = fd_derivative_check(
      [](double r) {
        return augustin_fixed_point(std::min(r, 1.0), FiniteDist::uniform(2),
                                    DiscreteChannel::bsc(0.1))
            .information;
      },
      1.0 - 1e-4, 1e-4);
  CHECK(fd == doctest::Approx(d).epsilon(1e-3));
}

TEST_CASE("Haroutunian rate approaches the mutual information") {
  const double r = haroutunian_rate(1.0 - 1e-7, FiniteDist::uniform(2), DiscreteChannel::bsc(0.1));
  CHECK(r == doctest::Approx(0.36806420716849707).epsilon(1e-6));
}

TEST_CASE("excess conditional divergence dominates the divergence of the mean") {
  Rng rng(23);
  for (int k = 0; k < 5; ++k) {
    const FiniteDist p = random_distribution(rng, 3);
    const DiscreteChannel w = random_channel(rng, 3, 4);
    const double rho = 0.1 + 0.85 * rng.uniform();
    const AugustinSolution s = augustin_fixed_point(rho, p, w);
    CHECK(conditional_renyi_divergence(rho, w, s.mean, p) ==
          doctest::Approx(s.information).epsilon(1e-10));
    for (int j = 0; j < 50; ++j) {
      const FiniteDist q = random_distribution(rng, 4);
      const double excess = conditional_renyi_divergence(rho, w, q, p) - s.information;
      CHECK(excess >= renyi_divergence(rho, s.mean, q) - 1e-12);
    }
  }
}

TEST_CASE("capacity edge cases") {
  MatrixXd one(1, 3);
  one << 0.2, 0.3, 0.5;
  const CapacityResult r = augustin_capacity(0.5, DiscreteChannel(one), ConstraintSet::all());
  CHECK(r.capacity == doctest::Approx(0.0).epsilon(1e-15));
  const CapacityResult m = augustin_capacity(1.0, DiscreteChannel::bsc(0.1), ConstraintSet::all());
  CHECK(m.capacity == doctest::Approx(0.36806420716849707).epsilon(1e-10));
  CHECK(m.optimizer[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("symmetric channels certify tightly") {
  for (const DiscreteChannel& w :
       {DiscreteChannel::bsc(0.1), DiscreteChannel::bsc(0.2), DiscreteChannel::bec(0.3)}) {
    for (double rho : {0.2, 0.5, 0.8, 1.0}) {
      const CapacityResult r = augustin_capacity(rho, w, ConstraintSet::all());
      CHECK(r.certified);
      CHECK(r.certificate_gap <= 1e-8);
    }
  }
}
