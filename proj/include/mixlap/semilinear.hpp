#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mixlap/kernel.hpp"

namespace mixlap {

struct NonlinearityParams {
  double a = 0.0;
  double b = 0.0;
  double rate = 1.0;
};

// Scalar reaction term f with derivative and admissibility metadata.
// gibbons_admissible is sampled numerically: sup of f' over |r| in [1,10]
// (step 1e-3) must be negative.
struct Nonlinearity {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  double lip_interval_lo = -10.0;
  double lip_interval_hi = 10.0;
  double lipschitz_constant = 0.0;  // sampled max |f'| on the interval above
  bool gibbons_admissible = false;

  // Sampled max |f'| over [lo, hi].
  double lipschitz_on(double lo, double hi) const;
};

Nonlinearity make_constant_one();
Nonlinearity make_affine(double a, double b);
Nonlinearity make_allen_cahn();
Nonlinearity make_logistic(double rate);
Nonlinearity make_nonlinearity(const std::string& name, const NonlinearityParams& p = {});
std::vector<std::string> nonlinearity_names();

struct NewtonParams {
  double tol = 1e-10;
  int max_iter = 60;
  int max_halvings = 30;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // sup norms of accepted iterates
  double final_residual_sup = std::numeric_limits<double>::infinity();
  int damping_events = 0;
  bool positive_interior = false;  // checked, never enforced
  std::string message;
};

// r_i = (L u)(x_i) - f(u_i) at interior nodes, zero elsewhere.
Field residual(const MixedOperator& op, const Nonlinearity& nl, const Field& u);

// Damped Newton on the exterior-zero problem L u = f(u). The step is halved
// while the residual sup norm fails to decrease.
std::pair<Field, SolveReport> solve_dirichlet(const MixedOperator& op,
                                              const Nonlinearity& nl, const Field& u0,
                                              const NewtonParams& params = {});

struct GibbonsResult {
  Field u;
  SolveReport report;
  // sup difference against a re-solve on a domain extended to 1.5x the
  // truncation half-length, over the shared nodes.
  double truncation_sensitivity = 0.0;
};

// Far-field problem with exterior constants -1/+1 along the far axis on a
// truncated line or strip (half-length >= 10). Always re-solves at 1.5x the
// truncation to measure the closure error.
GibbonsResult solve_gibbons(const MixedOperator& op, const Nonlinearity& nl,
                            const Field& u0, const NewtonParams& params = {});

}  // namespace mixlap
