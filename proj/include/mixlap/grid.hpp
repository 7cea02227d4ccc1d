#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mixlap {

enum class DomainKind { interval, box, disc, strip };

// Tagged description of the continuous domain a grid was built for.
struct DomainDescriptor {
  DomainKind kind = DomainKind::interval;
  double a = 0.0, b = 0.0;                  // interval bounds
  double ax = 0, bx = 0, ay = 0, by = 0;    // box bounds
  double radius = 0.0;                      // disc
  double half_width = 0.0;                  // strip, periodic axis
  double half_length = 0.0;                 // strip, far-field axis
  std::string name() const;
};

// Number of exterior node layers padding the domain inside the bounding box.
inline constexpr int kGridPad = 3;

// Uniform isotropic lattice covering a padded bounding box around the domain.
// Coordinates are centered: coord = center_coord + (index - center_index)*h,
// so mirrored indices give exactly negated offsets in floating point.
// Immutable after construction.
struct Grid {
  int dim = 1;
  std::array<int, 2> shape{0, 1};
  double h = 0.0;
  std::array<double, 2> center_coord{0.0, 0.0};
  std::array<double, 2> center_index{0.0, 0.0};
  std::array<bool, 2> periodic{false, false};
  DomainDescriptor desc;
  std::vector<std::uint8_t> interior_mask;
  std::vector<int> interior_nodes;

  int node_count() const { return shape[0] * shape[1]; }
  int interior_count() const { return static_cast<int>(interior_nodes.size()); }
  int index(int i0, int i1 = 0) const { return i0 + shape[0] * i1; }
  int coord_index(int node, int axis) const {
    return axis == 0 ? node % shape[0] : node / shape[0];
  }
  double coord(int node, int axis) const {
    return center_coord[axis] + (coord_index(node, axis) - center_index[axis]) * h;
  }
  bool on_grid(int i0, int i1 = 0) const {
    return i0 >= 0 && i0 < shape[0] && i1 >= 0 && i1 < shape[1];
  }
  bool is_interior(int node) const { return interior_mask[node] != 0; }
  int wrap(int i, int axis) const {
    int n = shape[axis];
    int r = i % n;
    return r < 0 ? r + n : r;
  }
};

Grid build_interval(double a, double b, int n);
Grid build_disc(double radius, int n_per_diameter);
// Strip periodic in axis 0 (width 2*half_width, n_across nodes), truncated in
// axis 1 at +-half_length with exterior padding.
Grid build_strip(double half_width, double half_length, int n_across);
// 1D grid sharing the far-field axis of a strip (same nodes, same mask).
Grid line_of_strip(const Grid& strip);

// Node pairing under reflection x_axis -> 2*lambda - x_axis.
// pair[i] == off_grid when the mirror image leaves the bounding box.
struct ReflectionMap {
  int axis = 0;
  double lambda = 0.0;
  std::vector<int> pair;
  static constexpr int off_grid = -1;
};

// lambda must sit on a node coordinate or a midpoint between adjacent nodes.
ReflectionMap reflect(const Grid& grid, int axis, double lambda);

// True when the interior mask is invariant under reflection about
// {x_axis = lambda}.
bool mask_symmetric(const Grid& grid, int axis, double lambda);

}  // namespace mixlap
