#include "mixlap/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mixlap {

std::string DomainDescriptor::name() const {
  switch (kind) {
    case DomainKind::interval: return "interval";
    case DomainKind::box: return "box";
    case DomainKind::disc: return "disc";
    case DomainKind::strip: return "strip";
  }
  return "unknown";
}

namespace {

void finalize_interior(Grid& g) {
  g.interior_nodes.clear();
  for (int i = 0; i < g.node_count(); ++i)
    if (g.interior_mask[i]) g.interior_nodes.push_back(i);
}

}  // namespace

Grid build_interval(double a, double b, int n) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("build_interval: bounds must be finite");
  if (!(a < b)) throw std::invalid_argument("build_interval: bounds out of order");
  if (n < 3) throw std::invalid_argument("build_interval: n must be >= 3");

  Grid g;
  g.dim = 1;
  g.h = (b - a) / (n - 1);
  g.shape = {n + 2 * kGridPad, 1};
  g.center_coord = {0.5 * (a + b), 0.0};
  g.center_index = {0.5 * (g.shape[0] - 1), 0.0};
  g.desc.kind = DomainKind::interval;
  g.desc.a = a;
  g.desc.b = b;

  // Core nodes are indices [pad, pad+n-1]; endpoints belong to the exterior.
  g.interior_mask.assign(g.node_count(), 0);
  for (int k = kGridPad + 1; k <= kGridPad + n - 2; ++k) g.interior_mask[k] = 1;
  finalize_interior(g);
  return g;
}

Grid build_disc(double radius, int n_per_diameter) {
  if (!(radius > 0.0)) throw std::invalid_argument("build_disc: radius must be positive");
  if (n_per_diameter < 5)
    throw std::invalid_argument("build_disc: n_per_diameter must be >= 5");

  Grid g;
  g.dim = 2;
  g.h = 2.0 * radius / (n_per_diameter - 1);
  int n = n_per_diameter + 2 * kGridPad;
  g.shape = {n, n};
  g.center_coord = {0.0, 0.0};
  g.center_index = {0.5 * (n - 1), 0.5 * (n - 1)};
  g.desc.kind = DomainKind::disc;
  g.desc.radius = radius;

  // Strict membership with a relative guard so nodes landing exactly on the
  // circle in floating point resolve as exterior.
  g.interior_mask.assign(g.node_count(), 0);
  const double r2 = radius * radius * (1.0 - 1e-12);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      double dx = (ix - g.center_index[0]) * g.h;
      double dy = (iy - g.center_index[1]) * g.h;
      if (dx * dx + dy * dy < r2) g.interior_mask[g.index(ix, iy)] = 1;
    }
  }
  finalize_interior(g);
  return g;
}

Grid build_strip(double half_width, double half_length, int n_across) {
  if (!(half_width > 0.0) || !(half_length > 0.0))
    throw std::invalid_argument("build_strip: dimensions must be positive");
  if (n_across < 4) throw std::invalid_argument("build_strip: n_across must be >= 4");

  Grid g;
  g.dim = 2;
  g.h = 2.0 * half_width / n_across;
  int nt_core = static_cast<int>(std::lround(2.0 * half_length / g.h)) + 1;
  if (nt_core < 3) throw std::invalid_argument("build_strip: strip too short for spacing");
  double eff_half_length = 0.5 * (nt_core - 1) * g.h;

  g.shape = {n_across, nt_core + 2 * kGridPad};
  g.center_coord = {0.0, 0.0};
  // Periodic axis: nodes at (k - n/2)*h cover [-W, W).
  g.center_index = {0.5 * n_across, 0.5 * (g.shape[1] - 1)};
  g.periodic = {true, false};
  g.desc.kind = DomainKind::strip;
  g.desc.half_width = half_width;
  g.desc.half_length = eff_half_length;

  g.interior_mask.assign(g.node_count(), 0);
  for (int it = kGridPad + 1; it <= kGridPad + nt_core - 2; ++it)
    for (int iy = 0; iy < n_across; ++iy) g.interior_mask[g.index(iy, it)] = 1;
  finalize_interior(g);
  return g;
}

Grid line_of_strip(const Grid& strip) {
  if (strip.desc.kind != DomainKind::strip)
    throw std::invalid_argument("line_of_strip: strip grid expected");
  Grid g;
  g.dim = 1;
  g.h = strip.h;
  g.shape = {strip.shape[1], 1};
  g.center_coord = {strip.center_coord[1], 0.0};
  g.center_index = {strip.center_index[1], 0.0};
  g.desc.kind = DomainKind::interval;
  g.desc.a = -strip.desc.half_length;
  g.desc.b = strip.desc.half_length;
  g.interior_mask.assign(g.node_count(), 0);
  for (int it = 0; it < g.shape[0]; ++it)
    g.interior_mask[it] = strip.interior_mask[strip.index(0, it)];
  finalize_interior(g);
  return g;
}

ReflectionMap reflect(const Grid& grid, int axis, double lambda) {
  if (axis < 0 || axis >= grid.dim) throw std::invalid_argument("reflect: axis out of range");
  // 2*lambda in index units must be an integer for mirrored nodes to land on
  // nodes.
  double lam_idx = (lambda - grid.center_coord[axis]) / grid.h + grid.center_index[axis];
  double two_lam = 2.0 * lam_idx;
  double rounded = std::round(two_lam);
  if (std::abs(two_lam - rounded) > 1e-6)
    throw std::invalid_argument("reflect: lambda not aligned with the node lattice");
  int two_lam_i = static_cast<int>(rounded);

  ReflectionMap map;
  map.axis = axis;
  map.lambda = lambda;
  map.pair.assign(grid.node_count(), ReflectionMap::off_grid);
  for (int node = 0; node < grid.node_count(); ++node) {
    int idx[2] = {grid.coord_index(node, 0), grid.coord_index(node, 1)};
    int mirrored = two_lam_i - idx[axis];
    if (grid.periodic[axis]) {
      idx[axis] = grid.wrap(mirrored, axis);
    } else {
      if (mirrored < 0 || mirrored >= grid.shape[axis]) continue;
      idx[axis] = mirrored;
    }
    map.pair[node] = grid.index(idx[0], idx[1]);
  }
  return map;
}

bool mask_symmetric(const Grid& grid, int axis, double lambda) {
  ReflectionMap map = reflect(grid, axis, lambda);
  for (int node = 0; node < grid.node_count(); ++node) {
    int p = map.pair[node];
    bool inside = grid.is_interior(node);
    bool mirror_inside = (p != ReflectionMap::off_grid) && grid.is_interior(p);
    if (inside != mirror_inside) return false;
  }
  return true;
}

}  // namespace mixlap
