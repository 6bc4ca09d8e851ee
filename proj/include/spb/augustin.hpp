#pragma once

// Augustin means, information and capacity for discrete channels, orders in
// (0, 1].

#include <variant>
#include <vector>

#include "spb/measures.hpp"

namespace spb {

struct AugustinOptions {
  double tol = 1e-12;  // total-variation size of the last fixed-point step
  int max_iter = 20000;
};

struct AugustinSolution {
  FiniteDist mean;          // q_{rho,P}
  double information;       // I_rho(P; W)
  int iterations;
  double residual;          // TV distance of the last fixed-point step
  double identity_residual; // tilted-channel form of I_rho, 0 at rho = 1
};

/// Augustin mean of order rho in (0,1] for input distribution p.
///
/// Starts from q0 = sum_x p(x) W(x) and iterates q <- sum_x p(x) W_rho^q(x).
/// Newton steps on the log-domain fixed-point equation are taken whenever they
/// shrink the residual; the stopping rule is always the plain fixed-point step
/// size. Throws ConvergenceError when max_iter is exhausted and
/// PreconditionError for rho outside (0,1].
AugustinSolution augustin_fixed_point(double rho, const FiniteDist& p,
                                      const DiscreteChannel& channel,
                                      const AugustinOptions& opts = {});

/// d/d rho of I_rho(P; W).
double augustin_info_derivative(double rho, const FiniteDist& p,
                                const DiscreteChannel& channel,
                                const AugustinOptions& opts = {});

/// Quantities of the tilted channel W_rho^q at the Augustin mean q = q_{rho,P}.
struct TiltedPoint {
  AugustinSolution solution;
  double rate;      // D_1(W_rho^q || q | P)
  double exponent;  // D_1(W_rho^q || W | P)
};

TiltedPoint tilted_point(double rho, const FiniteDist& p, const DiscreteChannel& channel,
                         const AugustinOptions& opts = {});

/// D_1(W_rho^{q} || q | P) at the Augustin mean q = q_{rho,P}; non-decreasing
/// in rho.
double haroutunian_rate(double rho, const FiniteDist& p, const DiscreteChannel& channel,
                        const AugustinOptions& opts = {});

/// Constraint set Gamma on input distributions.
struct ConstraintSet {
  struct All {};
  struct Single {
    FiniteDist p;
  };
  struct Cost {
    VectorXd costs;
    double budget;
  };
  struct ExplicitList {
    std::vector<FiniteDist> members;
  };
  std::variant<All, Single, Cost, ExplicitList> kind = All{};

  static ConstraintSet all() { return {}; }
  static ConstraintSet single(FiniteDist p) { return {Single{std::move(p)}}; }
  static ConstraintSet cost(VectorXd costs, double budget) {
    return {Cost{std::move(costs), budget}};
  }
  static ConstraintSet explicit_list(std::vector<FiniteDist> members) {
    return {ExplicitList{std::move(members)}};
  }

  /// Throws PreconditionError when the set is empty for the given input size.
  void validate(Index inputs) const;
  bool contains(const FiniteDist& p, double tol = 1e-12) const;
};

struct CapacityResult {
  double capacity;
  FiniteDist center;
  FiniteDist optimizer;
  /// max_x D_rho(W(x)||center) - capacity; for cost sets the Lagrangian gap
  /// max_x [D_rho(W(x)||center) - lambda (c(x) - budget)] - capacity.
  double certificate_gap;
  bool certified;
  int iterations;
  double multiplier = 0.0;  // lambda for cost sets
};

/// sup over the constraint set of I_rho(P; W).
///
/// General sets use exponentiated-gradient ascent on the simplex (the
/// gradient of I_rho(.;W) at P is x -> D_rho(W(x) || q_{rho,P})) with a
/// backtracking step, and a bisection on the Lagrange multiplier for cost
/// sets. The result carries the saddle-point certificate.
CapacityResult augustin_capacity(double rho, const DiscreteChannel& channel,
                                 const ConstraintSet& constraint, double tol = 1e-9,
                                 const AugustinOptions& opts = {});

}  // namespace spb
