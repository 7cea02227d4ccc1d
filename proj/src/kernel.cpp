#include "mixlap/kernel.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace mixlap {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

template <class F>
double integrate(const GaussRule& gl, double a, double b, F&& f) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) acc += gl.w[i] * f(mid + half * gl.x[i]);
  return acc * half;
}

// Kernel integral over the unit-lattice cell at offset (1,0): radial part
// exact, angular by quadrature. Rays enter through x=1/2 and exit through
// x=3/2 or y=+-1/2.
double unit_edge_cell(double s) {
  GaussRule gl(96);
  double a1 = std::atan(1.0 / 3.0);
  auto radial = [s](double rin, double rout) {
    return (std::pow(rin, -2.0 * s) - std::pow(rout, -2.0 * s)) / (2.0 * s);
  };
  double part1 = integrate(gl, 0.0, a1, [&](double t) {
    return radial(0.5 / std::cos(t), 1.5 / std::cos(t));
  });
  double part2 = integrate(gl, a1, kPi / 4.0, [&](double t) {
    return radial(0.5 / std::cos(t), 0.5 / std::sin(t));
  });
  return 2.0 * (part1 + part2);
}

// Kernel integral over the unit-lattice cell at offset (1,1).
double unit_corner_cell(double s) {
  GaussRule gl(96);
  double a1 = std::atan(1.0 / 3.0);
  auto radial = [s](double rin, double rout) {
    return (std::pow(rin, -2.0 * s) - std::pow(rout, -2.0 * s)) / (2.0 * s);
  };
  return 2.0 * integrate(gl, a1, kPi / 4.0, [&](double t) {
    return radial(0.5 / std::sin(t), 1.5 / std::cos(t));
  });
}

// Integral of |z|^{-2s} over the unit cell centered at the origin.
double unit_self_integral(double s) {
  GaussRule gl(96);
  return 8.0 * integrate(gl, 0.0, kPi / 4.0, [&](double t) {
    return std::pow(0.5 / std::cos(t), 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  });
}

double cell_integral_1d(double dist, double h, double s) {
  return (std::pow(dist - 0.5 * h, -2.0 * s) - std::pow(dist + 0.5 * h, -2.0 * s)) /
         (2.0 * s);
}

// Second-difference moment of the singular self cell:
// (1/(2N)) * integral over the cell of |z|^{2-N-2s}.
double self_moment(int dim, double h, double s) {
  if (dim == 1) return std::pow(0.5 * h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  return 0.25 * std::pow(h, 2.0 - 2.0 * s) * unit_self_integral(s);
}

struct NearCells {
  double edge, corner;  // unit-lattice values, scale by h^{-2s}
};

// Periodized pair weight for a strip: cell integrals summed over the periodic
// images of the lattice offset (dy, dt), plus an integral estimate of the
// image-sum remainder (~1e-12 relative).
double strip_pair_weight(int dy, int dt, int ny, double s, const NearCells& nc) {
  auto image = [&](long zoff) -> double {
    if (zoff == 0 && dt == 0) return 0.0;
    long az = std::labs(zoff), at = std::labs(static_cast<long>(dt));
    long cheb = std::max(az, at);
    if (cheb == 1) return (az + at == 1) ? nc.edge : nc.corner;
    double r2 = static_cast<double>(zoff) * zoff + static_cast<double>(dt) * dt;
    return std::pow(r2, -(1.0 + s));
  };
  double acc = image(dy);
  const int M = 128;
  for (int m = 1; m <= M; ++m)
    acc += image(dy + static_cast<long>(m) * ny) + image(dy - static_cast<long>(m) * ny);
  auto tail = [&](double xi0) {
    double t2 = static_cast<double>(dt) * dt;
    return (std::pow(xi0, -1.0 - 2.0 * s) / (1.0 + 2.0 * s) -
            (1.0 + s) * t2 * std::pow(xi0, -3.0 - 2.0 * s) / (3.0 + 2.0 * s)) /
           ny;
  };
  acc += tail(dy + (M + 0.5) * static_cast<double>(ny)) +
         tail(-dy + (M + 0.5) * static_cast<double>(ny));
  return acc;
}

}  // namespace

double fractional_constant(int dim, double s) {
  return std::pow(4.0, s) * std::tgamma(0.5 * dim + s) /
         (std::pow(kPi, 0.5 * dim) * std::abs(std::tgamma(-s)));
}

double slab_marginal_constant(double s) {
  return std::sqrt(kPi) * std::tgamma(s + 0.5) / std::tgamma(s + 1.0);
}

double MixedOperator::offset_weight(int d0, int d1) const {
  if (is_strip) {
    if (std::abs(d1) > max_offset) return 0.0;
    int dy = grid->wrap(d0, 0);
    if (dy == 0 && d1 == 0) return 0.0;
    return wstrip(dy, std::abs(d1));
  }
  if (grid->dim == 1) {
    int d = std::abs(d0);
    if (d1 != 0 || d < 1 || d > max_offset) return 0.0;
    return w1[d];
  }
  int K = max_offset;
  if ((d0 == 0 && d1 == 0) || std::abs(d0) > K || std::abs(d1) > K) return 0.0;
  return w2(d0 + K, d1 + K);
}

MixedOperator assemble(const Grid& grid, double s, NormalizationMode mode) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("assemble: s must lie in (0,1)");
  MixedOperator op;
  op.grid = &grid;
  op.s = s;
  op.mode = mode;
  op.inv_h2 = 1.0 / (grid.h * grid.h);
  op.is_strip = grid.desc.kind == DomainKind::strip;
  const double h = grid.h;
  const double c =
      mode == NormalizationMode::standard ? fractional_constant(grid.dim, s) : 1.0;
  op.normalization_constant = c;

  if (grid.dim == 1) {
    int K = (grid.shape[0] - 1) / 2;
    if (K < 1)
      throw std::invalid_argument("assemble: grid too small for the singular-cell correction");
    op.max_offset = K;
    op.ball_radius = (K + 0.5) * h;
    op.w1.assign(K + 1, 0.0);
    for (int d = 1; d <= K; ++d) op.w1[d] = c * cell_integral_1d(d * h, h, s);
    op.w1[1] += c * self_moment(1, h, s) * op.inv_h2;
    double side = c * std::pow(op.ball_radius, -2.0 * s) / (2.0 * s);
    op.tail_minus = op.tail_plus = side;
    op.tail_total = 2.0 * side;
    op.tail_splittable = true;
    op.far_axis = 0;
    return op;
  }

  NearCells nc{unit_edge_cell(s), unit_corner_cell(s)};
  const double scale = std::pow(h, -2.0 * s);

  if (op.is_strip) {
    int ny = grid.shape[0];
    int K = (grid.shape[1] - 1) / 2;
    if (K < 1)
      throw std::invalid_argument("assemble: grid too small for the singular-cell correction");
    op.max_offset = K;
    op.ball_radius = (K + 0.5) * h;
    op.wstrip = Eigen::MatrixXd::Zero(ny, K + 1);
    for (int dy = 0; dy < ny; ++dy)
      for (int dt = 0; dt <= K; ++dt) {
        if (dy == 0 && dt == 0) continue;
        op.wstrip(dy, dt) = c * scale * strip_pair_weight(dy, dt, ny, s, nc);
      }
    double fold = c * self_moment(2, h, s) * op.inv_h2;
    op.wstrip(1, 0) += fold;
    op.wstrip(ny - 1, 0) += fold;
    op.wstrip(0, 1) += fold;
    double side =
        c * slab_marginal_constant(s) * std::pow(op.ball_radius, -2.0 * s) / (2.0 * s);
    op.tail_minus = op.tail_plus = side;
    op.tail_total = 2.0 * side;
    op.tail_splittable = true;
    op.far_axis = 1;
    return op;
  }

  int K = std::min((grid.shape[0] - 1) / 2, (grid.shape[1] - 1) / 2);
  if (K < 1)
    throw std::invalid_argument("assemble: grid too small for the singular-cell correction");
  op.max_offset = K;
  op.ball_radius = (K + 0.5) * h;
  double r2max = (K + 0.5) * (K + 0.5);
  op.w2 = Eigen::MatrixXd::Zero(2 * K + 1, 2 * K + 1);
  for (int dy = -K; dy <= K; ++dy)
    for (int dx = -K; dx <= K; ++dx) {
      if (dx == 0 && dy == 0) continue;
      double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      if (r2 > r2max) continue;
      int cheb = std::max(std::abs(dx), std::abs(dy));
      double val;
      if (cheb == 1)
        val = (std::abs(dx) + std::abs(dy) == 1) ? nc.edge : nc.corner;
      else
        val = std::pow(r2, -(1.0 + s));
      op.w2(dx + K, dy + K) = c * scale * val;
    }
  double fold = c * self_moment(2, h, s) * op.inv_h2;
  op.w2(K + 1, K) += fold;
  op.w2(K - 1, K) += fold;
  op.w2(K, K + 1) += fold;
  op.w2(K, K - 1) += fold;
  op.tail_total = c * kPi * std::pow(op.ball_radius, -2.0 * s) / s;
  op.tail_splittable = false;
  return op;
}

namespace {

inline double read_ext(const Grid& g, const Eigen::VectorXd& v, const ExteriorRule& rule,
                       int i0, int i1) {
  if (g.periodic[0]) i0 = g.wrap(i0, 0);
  if (g.dim == 2 && g.periodic[1]) i1 = g.wrap(i1, 1);
  if (g.on_grid(i0, i1)) return v[g.index(i0, i1)];
  if (rule.kind == ExteriorRule::Kind::zero) return 0.0;
  int idx = rule.axis == 0 ? i0 : i1;
  return idx < 0 ? rule.minus : rule.plus;
}

void validate_rule(const MixedOperator& op, const ExteriorRule& rule) {
  if (rule.kind != ExteriorRule::Kind::far_constants) return;
  if (rule.minus == rule.plus) return;  // constant far field splits trivially
  if (!op.tail_splittable || rule.axis != op.far_axis)
    throw std::invalid_argument(
        "far-constant exterior rule requires a grid with a splittable far axis");
}

// Visits every coupling of row (i0,i1) in a fixed canonical order:
// term(j0, j1, coeff, is_local_stencil) for lattice terms, then
// tail(coeff, side_is_plus) for the far-field closure.
template <class Term, class Tail>
void for_row_terms(const MixedOperator& op, int i0, int i1, Term&& term, Tail&& tail) {
  const Grid& g = *op.grid;
  term(i0 - 1, i1, op.inv_h2, true);
  term(i0 + 1, i1, op.inv_h2, true);
  if (g.dim == 2) {
    term(i0, i1 - 1, op.inv_h2, true);
    term(i0, i1 + 1, op.inv_h2, true);
  }
  if (g.dim == 1) {
    for (int d = 1; d <= op.max_offset; ++d) {
      double w = op.w1[d];
      term(i0 - d, i1, w, false);
      term(i0 + d, i1, w, false);
    }
  } else if (op.is_strip) {
    int ny = g.shape[0];
    for (int dy = 0; dy < ny; ++dy)
      for (int dt = -op.max_offset; dt <= op.max_offset; ++dt) {
        if (dy == 0 && dt == 0) continue;
        double w = op.wstrip(dy, std::abs(dt));
        if (w != 0.0) term(i0 + dy, i1 + dt, w, false);
      }
  } else {
    int K = op.max_offset;
    for (int dy = -K; dy <= K; ++dy)
      for (int dx = -K; dx <= K; ++dx) {
        if (dx == 0 && dy == 0) continue;
        double w = op.w2(dx + K, dy + K);
        if (w != 0.0) term(i0 + dx, i1 + dy, w, false);
      }
  }
  if (op.tail_splittable) {
    tail(op.tail_minus, false);
    tail(op.tail_plus, true);
  } else {
    tail(op.tail_total, false);
  }
}

}  // namespace

Eigen::VectorXd apply_raw(const MixedOperator& op, const Eigen::VectorXd& values,
                          const ExteriorRule& rule, bool all_nodes) {
  const Grid& g = *op.grid;
  if (values.size() != g.node_count())
    throw std::invalid_argument("apply: field does not match the operator grid");
  validate_rule(op, rule);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.node_count());
  const double far_minus = rule.kind == ExteriorRule::Kind::zero ? 0.0 : rule.minus;
  const double far_plus = rule.kind == ExteriorRule::Kind::zero ? 0.0 : rule.plus;

  auto eval_node = [&](int node) {
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    double ui = values[node];
    double acc = 0.0;
    for_row_terms(
        op, i0, i1,
        [&](int j0, int j1, double c, bool) {
          acc += c * (ui - read_ext(g, values, rule, j0, j1));
        },
        [&](double c, bool plus) { acc += c * (ui - (plus ? far_plus : far_minus)); });
    out[node] = acc;
  };

  if (all_nodes) {
    for (int node = 0; node < g.node_count(); ++node) eval_node(node);
  } else {
    for (int node : g.interior_nodes) eval_node(node);
  }
  return out;
}

Field apply(const MixedOperator& op, const Field& u) {
  Field out;
  out.grid = op.grid;
  out.rule = ExteriorRule{};
  out.values = apply_raw(op, u.values, u.rule, false);
  return out;
}

double bilinear_form(const MixedOperator& op, const Field& u, const Field& v) {
  const Grid& g = *op.grid;
  if (u.grid != &g || v.grid != &g)
    throw std::invalid_argument("bilinear_form: fields must live on the operator grid");
  if (!is_zero_rule(u) || !is_zero_rule(v))
    throw std::invalid_argument("bilinear_form: zero-rule fields required");

  // Gradient pairing over forward edges; fields vanish on the pad layers so
  // edges leaving the grid contribute nothing.
  double grad = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    for (int node = 0; node < g.node_count(); ++node) {
      int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
      int j0 = i0 + (axis == 0 ? 1 : 0), j1 = i1 + (axis == 1 ? 1 : 0);
      if (g.periodic[axis]) {
        j0 = axis == 0 ? g.wrap(j0, 0) : j0;
        j1 = axis == 1 ? g.wrap(j1, 1) : j1;
      } else if (!g.on_grid(j0, j1)) {
        continue;
      }
      int j = g.index(j0, j1);
      grad += (u.values[j] - u.values[node]) * (v.values[j] - v.values[node]);
    }
  }

  // Kernel pairing: on-grid pairs at half weight (each unordered pair visited
  // twice), exterior partners within the ball once at full weight.
  double pair = 0.0, tail = 0.0;
  for (int node = 0; node < g.node_count(); ++node) {
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    double ui = u.values[node], vi = v.values[node];
    for_row_terms(
        op, i0, i1,
        [&](int j0, int j1, double c, bool local) {
          if (local) return;
          int k0 = g.periodic[0] ? g.wrap(j0, 0) : j0;
          int k1 = (g.dim == 2 && g.periodic[1]) ? g.wrap(j1, 1) : j1;
          if (g.on_grid(k0, k1)) {
            int j = g.index(k0, k1);
            pair += 0.5 * c * (ui - u.values[j]) * (vi - v.values[j]);
          } else {
            pair += c * ui * vi;
          }
        },
        [&](double c, bool) { tail += c * ui * vi; });
  }
  double hN = std::pow(g.h, g.dim);
  return hN * (grad * op.inv_h2 + pair + tail);
}

EnergyBreakdown rho_energy(const MixedOperator& op, const Field& u,
                           const std::vector<std::uint8_t>& mask) {
  const Grid& g = *op.grid;
  if (static_cast<int>(mask.size()) != g.node_count())
    throw std::invalid_argument("rho_energy: mask size mismatch");
  bool any = false;
  for (auto m : mask) any = any || (m != 0);
  if (!any) throw std::invalid_argument("rho_energy: empty subdomain");

  double hN = std::pow(g.h, g.dim);
  EnergyBreakdown out;

  double grad = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    for (int node = 0; node < g.node_count(); ++node) {
      if (!mask[node]) continue;
      int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
      int j0 = i0 + (axis == 0 ? 1 : 0), j1 = i1 + (axis == 1 ? 1 : 0);
      if (g.periodic[axis]) {
        j0 = axis == 0 ? g.wrap(j0, 0) : j0;
        j1 = axis == 1 ? g.wrap(j1, 1) : j1;
      } else if (!g.on_grid(j0, j1)) {
        continue;
      }
      int j = g.index(j0, j1);
      if (!mask[j]) continue;
      double du = u.values[j] - u.values[node];
      grad += du * du;
    }
  }
  out.gradient_part = hN * grad * op.inv_h2;

  double semi = 0.0;
  for (int node = 0; node < g.node_count(); ++node) {
    if (!mask[node]) continue;
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    double ui = u.values[node];
    for_row_terms(
        op, i0, i1,
        [&](int j0, int j1, double c, bool local) {
          if (local) return;
          int k0 = g.periodic[0] ? g.wrap(j0, 0) : j0;
          int k1 = (g.dim == 2 && g.periodic[1]) ? g.wrap(j1, 1) : j1;
          if (!g.on_grid(k0, k1)) return;
          int j = g.index(k0, k1);
          if (!mask[j]) return;
          double du = ui - u.values[j];
          semi += c * du * du;
        },
        [&](double, bool) {});
  }
  out.seminorm_part = hN * semi;
  out.total = out.gradient_part + out.seminorm_part;
  return out;
}

namespace {

DenseSystem assemble_dense_impl(const MixedOperator& op, const ExteriorRule& rule,
                                const std::vector<std::uint8_t>* mask, bool local_only) {
  const Grid& g = *op.grid;
  validate_rule(op, rule);
  DenseSystem sys;
  sys.row_of_node.assign(g.node_count(), -1);
  for (int node : g.interior_nodes) {
    if (mask && !(*mask)[node]) continue;
    sys.row_of_node[node] = static_cast<int>(sys.nodes.size());
    sys.nodes.push_back(node);
  }
  int n = static_cast<int>(sys.nodes.size());
  if (n == 0) throw std::invalid_argument("assemble_dense: empty interior");
  sys.A = Eigen::MatrixXd::Zero(n, n);
  sys.g = Eigen::VectorXd::Zero(n);
  const double far_minus = rule.kind == ExteriorRule::Kind::zero ? 0.0 : rule.minus;
  const double far_plus = rule.kind == ExteriorRule::Kind::zero ? 0.0 : rule.plus;

  for (int r = 0; r < n; ++r) {
    int node = sys.nodes[r];
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    double diag = 0.0, gval = 0.0;
    for_row_terms(
        op, i0, i1,
        [&](int j0, int j1, double c, bool local) {
          if (local_only && !local) return;
          diag += c;
          int k0 = g.periodic[0] ? g.wrap(j0, 0) : j0;
          int k1 = (g.dim == 2 && g.periodic[1]) ? g.wrap(j1, 1) : j1;
          if (g.on_grid(k0, k1)) {
            int j = g.index(k0, k1);
            int col = sys.row_of_node[j];
            if (col >= 0)
              sys.A(r, col) -= c;
            else
              gval += c * exterior_value(rule, g.coord(j, rule.axis));
          } else if (rule.kind == ExteriorRule::Kind::far_constants) {
            int idx = rule.axis == 0 ? j0 : j1;
            gval += c * (idx < 0 ? rule.minus : rule.plus);
          }
        },
        [&](double c, bool plus) {
          if (local_only) return;
          diag += c;
          gval += c * (plus ? far_plus : far_minus);
        });
    sys.A(r, r) += diag;
    sys.g[r] = gval;
  }
  return sys;
}

}  // namespace

DenseSystem assemble_dense(const MixedOperator& op, const ExteriorRule& rule,
                           bool local_only) {
  return assemble_dense_impl(op, rule, nullptr, local_only);
}

DenseSystem assemble_dense_masked(const MixedOperator& op,
                                  const std::vector<std::uint8_t>& mask,
                                  bool local_only) {
  return assemble_dense_impl(op, ExteriorRule{}, &mask, local_only);
}

MixedOperator collapse_strip(const MixedOperator& op, const Grid& line_grid) {
  if (!op.is_strip) throw std::invalid_argument("collapse_strip: strip operator expected");
  if (line_grid.shape[0] != op.grid->shape[1] || line_grid.h != op.grid->h)
    throw std::invalid_argument("collapse_strip: line grid does not match the strip");
  MixedOperator out;
  out.grid = &line_grid;
  out.s = op.s;
  out.mode = op.mode;
  out.inv_h2 = op.inv_h2;
  out.max_offset = op.max_offset;
  out.ball_radius = op.ball_radius;
  out.is_strip = false;
  out.normalization_constant = op.normalization_constant;
  out.w1.assign(op.max_offset + 1, 0.0);
  int ny = op.grid->shape[0];
  for (int dt = 1; dt <= op.max_offset; ++dt) {
    double acc = 0.0;
    for (int dy = 0; dy < ny; ++dy) acc += op.wstrip(dy, dt);
    out.w1[dt] = acc;
  }
  out.tail_minus = op.tail_minus;
  out.tail_plus = op.tail_plus;
  out.tail_total = op.tail_total;
  out.tail_splittable = true;
  out.far_axis = 0;
  return out;
}

void dump_operator(const MixedOperator& op, const std::string& prefix) {
  const Grid& g = *op.grid;
  long long pair_budget = 0;

  std::ofstream csv(prefix + "_weights.csv");
  if (!csv) throw std::runtime_error("dump_operator: cannot open output file");
  csv.precision(17);
  csv << "row,col,weight\n";
  for (int node = 0; node < g.node_count(); ++node) {
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    for_row_terms(
        op, i0, i1,
        [&](int j0, int j1, double c, bool local) {
          if (local) return;
          int k0 = g.periodic[0] ? g.wrap(j0, 0) : j0;
          int k1 = (g.dim == 2 && g.periodic[1]) ? g.wrap(j1, 1) : j1;
          if (!g.on_grid(k0, k1)) return;
          int j = g.index(k0, k1);
          if (j <= node) return;
          if (++pair_budget > 20'000'000)
            throw std::runtime_error("dump_operator: weight table too large to dump");
          csv << node << ',' << j << ',' << c << '\n';
        },
        [&](double, bool) {});
  }

  std::ofstream hdr(prefix + "_header.json");
  hdr.precision(17);
  hdr << "{\n"
      << "  \"s\": " << op.s << ",\n"
      << "  \"mode\": \"" << (op.mode == NormalizationMode::paper ? "paper" : "standard")
      << "\",\n"
      << "  \"normalization_constant\": " << op.normalization_constant << ",\n"
      << "  \"domain\": \"" << g.desc.name() << "\",\n"
      << "  \"h\": " << g.h << ",\n"
      << "  \"shape\": [" << g.shape[0] << ", " << g.shape[1] << "],\n"
      << "  \"max_offset\": " << op.max_offset << ",\n"
      << "  \"ball_radius\": " << op.ball_radius << ",\n"
      << "  \"tail_minus\": " << op.tail_minus << ",\n"
      << "  \"tail_plus\": " << op.tail_plus << ",\n"
      << "  \"tail_total\": " << op.tail_total << "\n"
      << "}\n";
}

}  // namespace mixlap
