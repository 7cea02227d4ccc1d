#pragma once

#include <Eigen/Dense>
#include <functional>

#include "mixlap/grid.hpp"

namespace mixlap {

// How a field continues outside the grid (and on exterior grid nodes).
//  zero          : u == 0 everywhere outside the domain
//  far_constants : u == minus/plus beyond the grid on each side of `axis`
struct ExteriorRule {
  enum class Kind { zero, far_constants };
  Kind kind = Kind::zero;
  double minus = 0.0;
  double plus = 0.0;
  int axis = 0;

  static ExteriorRule far(double minus_value, double plus_value, int axis) {
    return ExteriorRule{Kind::far_constants, minus_value, plus_value, axis};
  }
};

// Nodal values on a grid plus the exterior continuation rule.
// The grid must outlive the field.
struct Field {
  const Grid* grid = nullptr;
  Eigen::VectorXd values;
  ExteriorRule rule;

  double operator[](int node) const { return values[node]; }
};

// Zero-initialized field; exterior grid nodes carry the rule's values.
Field make_field(const Grid& grid, ExteriorRule rule = {});

// Interior values from fn(x) (fn(x, y) in 2D); exterior nodes per rule.
Field field_from_function(const Grid& grid, ExteriorRule rule,
                          const std::function<double(double, double)>& fn);

// Every grid node from fn, rule fixed to zero extension. For operator
// diagnostics on functions that do not vanish outside the domain.
Field raw_field_from_function(const Grid& grid,
                              const std::function<double(double, double)>& fn);

Field positive_part(const Field& u);
Field negative_part(const Field& u);

// Value of the exterior continuation on one side of the rule's axis.
double exterior_value(const ExteriorRule& rule, double coord_on_axis);

// True iff the rule is zero and all exterior node values vanish.
bool is_zero_rule(const Field& u);

}  // namespace mixlap
