#pragma once

#include <cstdint>
#include <vector>

#include "mixlap/kernel.hpp"
#include "mixlap/semilinear.hpp"

namespace mixlap {

// State of the sliding-plane comparison at one plane position.
struct MovingPlaneSnapshot {
  double lambda = 0.0;
  double sup_violation = 0.0;  // sup over interior ∩ {x_axis < lambda} of (u - u_reflected)+
  Field w_lambda;              // truncated comparison field, antisymmetric under the reflection
  Field c_field;               // difference quotient of f between u and its reflection
};

// Snapshots at every half-step-aligned plane position from the domain's left
// edge up to 0. Requires a zero-rule field on a mask symmetric about
// {x_axis = 0}.
std::vector<MovingPlaneSnapshot> moving_plane_scan(const MixedOperator& op,
                                                   const Field& u, int axis,
                                                   const Nonlinearity& nl);

// Sup over mirror pairs of |u(x) - u(reflected x)| at lambda = 0.
double plane_symmetry_metric(const Field& u, int axis);

// Largest negative forward difference of u along the axis inside
// {x_axis < 0} ∩ interior; 0 when monotone increasing there.
double monotonicity_check(const Field& u, int axis);

// Max over far-axis slices of (max - min) across the other coordinate.
double onedim_variation(const Field& u, int t_axis);

struct MpCheckResult {
  bool nonneg = false;             // v >= -1e-10 throughout the halfspace
  double min_over_halfspace = 0.0;
  bool hypothesis_ok = false;      // ||c+||_inf(U) < lambda1(U)
  double c_plus_sup = 0.0;
  double lambda1_U = 0.0;
  double supersolution_slack = 0.0;  // min over U of (Lv - c v); >= -1e-10 by contract
  bool nontrivial = false;
  double interior_min = 0.0;       // min of v over U eroded by one layer
};

// Maximum-principle verdict for an antisymmetric supersolution of
// L v = c v on U inside the halfspace {x_axis < lambda}. Preconditions
// (antisymmetry, sign outside U, discrete supersolution inequality against
// the nodal hat basis) are checked and violations throw.
MpCheckResult antisymmetric_mp_check(const MixedOperator& op,
                                     const std::vector<std::uint8_t>& U_mask, int axis,
                                     double lambda, const Field& c, const Field& v);

// Sup over doubly-interior nodes of |L(D phi) - D(L phi)| with the same
// central difference D on both sides. Zero up to roundoff for fields
// supported away from the truncation boundary.
double commutation_check(const MixedOperator& op, const Field& phi, int axis);

struct SymmetryReport {
  std::vector<double> plane_asymmetry;   // per axis
  double monotonicity_violation = 0.0;   // max over axes
  double max_sup_violation = 0.0;        // max over moving-plane scans
  double radial_orbit_asymmetry = 0.0;   // spread over lattice symmetry orbits (disc)
  double radial_profile_spread = 0.0;    // spread over equal-radius classes (disc);
                                         // discretization-limited, reported only
  double onedim_var = 0.0;
  bool positive_interior = false;

  double tol_plane = 1e-8;
  double tol_monotonicity = 1e-12;
  double tol_moving_plane = 1e-8;
  bool verdict_plane = false;
  bool verdict_monotone = false;
  bool verdict_moving_plane = false;
  bool verdict() const { return verdict_plane && verdict_monotone && verdict_moving_plane; }
};

// Full symmetry diagnostics of a solved field on a reflection-symmetric
// domain: plane metrics and moving-plane scans along every axis.
SymmetryReport theorem_one_report(const MixedOperator& op, const Field& u,
                                  const Nonlinearity& nl);

}  // namespace mixlap
