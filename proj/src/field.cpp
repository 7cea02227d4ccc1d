#include "mixlap/field.hpp"

#include <stdexcept>

namespace mixlap {

double exterior_value(const ExteriorRule& rule, double coord_on_axis) {
  if (rule.kind == ExteriorRule::Kind::zero) return 0.0;
  return coord_on_axis < 0.0 ? rule.minus : rule.plus;
}

namespace {

void fill_exterior(Field& f) {
  const Grid& g = *f.grid;
  for (int node = 0; node < g.node_count(); ++node) {
    if (g.is_interior(node)) continue;
    f.values[node] = exterior_value(f.rule, g.coord(node, f.rule.axis));
  }
}

}  // namespace

Field make_field(const Grid& grid, ExteriorRule rule) {
  Field f;
  f.grid = &grid;
  f.rule = rule;
  f.values = Eigen::VectorXd::Zero(grid.node_count());
  fill_exterior(f);
  return f;
}

Field field_from_function(const Grid& grid, ExteriorRule rule,
                          const std::function<double(double, double)>& fn) {
  Field f = make_field(grid, rule);
  for (int node : grid.interior_nodes)
    f.values[node] = fn(grid.coord(node, 0), grid.dim == 2 ? grid.coord(node, 1) : 0.0);
  return f;
}

Field raw_field_from_function(const Grid& grid,
                              const std::function<double(double, double)>& fn) {
  Field f;
  f.grid = &grid;
  f.rule = ExteriorRule{};
  f.values.resize(grid.node_count());
  for (int node = 0; node < grid.node_count(); ++node)
    f.values[node] = fn(grid.coord(node, 0), grid.dim == 2 ? grid.coord(node, 1) : 0.0);
  return f;
}

Field positive_part(const Field& u) {
  Field f = u;
  f.values = u.values.cwiseMax(0.0);
  f.rule.minus = std::max(u.rule.minus, 0.0);
  f.rule.plus = std::max(u.rule.plus, 0.0);
  return f;
}

Field negative_part(const Field& u) {
  Field f = u;
  f.values = (-u.values).cwiseMax(0.0);
  f.rule.minus = std::max(-u.rule.minus, 0.0);
  f.rule.plus = std::max(-u.rule.plus, 0.0);
  return f;
}

bool is_zero_rule(const Field& u) {
  if (u.rule.kind != ExteriorRule::Kind::zero) return false;
  const Grid& g = *u.grid;
  for (int node = 0; node < g.node_count(); ++node)
    if (!g.is_interior(node) && u.values[node] != 0.0) return false;
  return true;
}

}  // namespace mixlap
