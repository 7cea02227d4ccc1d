#include "mixlap/oracle.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace mixlap {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussNodes {
  std::vector<double> x, w;
  explicit GaussNodes(int n) : x(n), w(n) {
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
double quad(const GaussNodes& gl, double a, double b, F&& f) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) acc += gl.w[i] * f(mid + half * gl.x[i]);
  return acc * half;
}

}  // namespace

QuadratureResult pointwise_fraclap(const std::function<double(double)>& u, double x,
                                   double s, NormalizationMode mode,
                                   const FracLapOptions& opts) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("pointwise_fraclap: s must lie in (0,1)");
  const double ux = u(x);
  GaussNodes fine(opts.gl_order);
  GaussNodes coarse(std::max(4, opts.gl_order / 2));
  // Symmetric pairing removes the principal value: each z > 0 carries both
  // kernel directions.
  auto integrand = [&](double z) {
    return (2.0 * ux - u(x + z) - u(x - z)) * std::pow(z, -1.0 - 2.0 * s);
  };

  QuadratureResult res;
  double value = 0.0, err = 0.0;
  int panels = 0;
  auto add_panel = [&](double a, double b) {
    int sub = opts.panels_per_octave;
    for (int k = 0; k < sub; ++k) {
      double pa = a + (b - a) * k / sub, pb = a + (b - a) * (k + 1) / sub;
      double vf = quad(fine, pa, pb, integrand);
      double vc = quad(coarse, pa, pb, integrand);
      value += vf;
      err += std::abs(vf - vc);
      ++panels;
    }
  };

  // Below z ~ 1e-7 the second difference drops under the floating-point
  // quantization of u and the kernel amplifies the noise; stop there and close
  // with the Taylor term -u''(x) eps^{2-2s}/(2-2s).
  const int inner_octaves = 23;
  for (int j = 0; j < inner_octaves; ++j)
    add_panel(std::pow(2.0, -j - 1), std::pow(2.0, -j));
  {
    double eps = std::pow(2.0, -inner_octaves);
    double delta = 1e-4;
    double upp = (u(x + delta) + u(x - delta) - 2.0 * ux) / (delta * delta);
    double closure = -upp * std::pow(eps, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    value += closure;
    err += std::abs(closure) * 1e-6 + 1e-7 * std::abs(upp) * std::pow(eps, 2.0 - 2.0 * s);
    // quantization floor of the dyadic panels above the cut
    err += 2e-16 * (std::abs(ux) + opts.sup_bound) * std::pow(eps, -2.0 * s) / (2.0 * s);
  }

  double tail_bound = 0.0;
  for (int j = 0; j < 1000; ++j) {
    double a = std::pow(2.0, j), b = std::pow(2.0, j + 1);
    add_panel(a, b);
    tail_bound = (2.0 * std::abs(ux) + 2.0 * opts.sup_bound) *
                 std::pow(b, -2.0 * s) / (2.0 * s);
    if (tail_bound < opts.tail_tol) break;
  }
  err += tail_bound;

  double c = mode == NormalizationMode::standard ? fractional_constant(1, s) : 1.0;
  res.value = c * value;
  res.error_estimate = c * err;
  res.subdivisions = panels;
  if (!std::isfinite(res.value))
    throw std::runtime_error("pointwise_fraclap: quadrature did not converge");
  return res;
}

namespace {

// Independent weight computations for the dense reference.

double ref_cell_1d(double dist, double h, double s) {
  return (std::pow(dist - 0.5 * h, -2.0 * s) - std::pow(dist + 0.5 * h, -2.0 * s)) /
         (2.0 * s);
}

// Kernel integral over a non-singular unit-lattice cell by tensor quadrature.
double ref_cell_2d(int dx, int dy, double s, const GaussNodes& gl) {
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    double zx = dx + 0.5 * gl.x[i];
    double row = 0.0;
    for (std::size_t j = 0; j < gl.x.size(); ++j) {
      double zy = dy + 0.5 * gl.x[j];
      row += gl.w[j] * std::pow(zx * zx + zy * zy, -(1.0 + s));
    }
    acc += gl.w[i] * row;
  }
  return acc * 0.25;  // both half-lengths are 1/2
}

// Integral of |z|^{-2s} over the unit cell via the divergence identity
// |z|^{-2s} = div(z |z|^{-2s}) / (2-2s); reduces to a boundary integral.
double ref_self_integral_2d(double s, const GaussNodes& gl) {
  double edge = quad(gl, -0.5, 0.5,
                     [&](double t) { return 0.5 * std::pow(0.25 + t * t, -s); });
  return 4.0 * edge / (2.0 - 2.0 * s);
}

}  // namespace

DenseReference dense_reference(const Grid& grid, double s, NormalizationMode mode,
                               bool with_spectrum) {
  if (grid.desc.kind == DomainKind::strip)
    throw std::invalid_argument("dense_reference: interval and box/disc grids only");
  if (grid.shape[0] > 70 || grid.shape[1] > 70)
    throw std::invalid_argument("dense_reference: grid too large (cap 64 nodes per axis)");
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("dense_reference: s must lie in (0,1)");

  const double h = grid.h;
  const double inv_h2 = 1.0 / (h * h);
  const double c = mode == NormalizationMode::standard
                       ? fractional_constant(grid.dim, s)
                       : 1.0;

  DenseReference ref;
  std::vector<int> row_of_node(grid.node_count(), -1);
  for (int node : grid.interior_nodes) {
    row_of_node[node] = static_cast<int>(ref.nodes.size());
    ref.nodes.push_back(node);
  }
  int n = static_cast<int>(ref.nodes.size());
  ref.matrix = Eigen::MatrixXd::Zero(n, n);

  if (grid.dim == 1) {
    int K = (grid.shape[0] - 1) / 2;
    double R = (K + 0.5) * h;
    std::vector<double> w(K + 1, 0.0);
    for (int d = 1; d <= K; ++d) w[d] = c * ref_cell_1d(d * h, h, s);
    w[1] += c * (std::pow(0.5 * h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s)) * inv_h2;
    double tail_side = c * std::pow(R, -2.0 * s) / (2.0 * s);

    for (int r = 0; r < n; ++r) {
      int i = grid.coord_index(ref.nodes[r], 0);
      double diag = 0.0;
      auto couple = [&](int j, double cw) {
        diag += cw;
        if (j >= 0 && j < grid.shape[0]) {
          int col = row_of_node[grid.index(j)];
          if (col >= 0) ref.matrix(r, col) -= cw;
        }
      };
      couple(i - 1, inv_h2);
      couple(i + 1, inv_h2);
      for (int d = 1; d <= K; ++d) {
        couple(i - d, w[d]);
        couple(i + d, w[d]);
      }
      diag += tail_side;
      diag += tail_side;
      ref.matrix(r, r) += diag;
    }
  } else {
    GaussNodes cell_gl(160), edge_gl(96);
    int K = std::min((grid.shape[0] - 1) / 2, (grid.shape[1] - 1) / 2);
    double R = (K + 0.5) * h;
    double r2max = (K + 0.5) * (K + 0.5);
    double scale = std::pow(h, -2.0 * s);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * K + 1, 2 * K + 1);
    for (int dy = -K; dy <= K; ++dy)
      for (int dx = -K; dx <= K; ++dx) {
        if (dx == 0 && dy == 0) continue;
        double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
        if (r2 > r2max) continue;
        double val;
        if (std::max(std::abs(dx), std::abs(dy)) == 1)
          val = ref_cell_2d(dx, dy, s, cell_gl);
        else
          val = std::pow(r2, -(1.0 + s));
        w(dx + K, dy + K) = c * scale * val;
      }
    double fold = c * 0.25 * std::pow(h, 2.0 - 2.0 * s) *
                  ref_self_integral_2d(s, edge_gl) * inv_h2;
    w(K + 1, K) += fold;
    w(K - 1, K) += fold;
    w(K, K + 1) += fold;
    w(K, K - 1) += fold;
    double tail = c * kPi * std::pow(R, -2.0 * s) / s;

    for (int r = 0; r < n; ++r) {
      int i0 = grid.coord_index(ref.nodes[r], 0);
      int i1 = grid.coord_index(ref.nodes[r], 1);
      double diag = 0.0;
      auto couple = [&](int j0, int j1, double cw) {
        diag += cw;
        if (grid.on_grid(j0, j1)) {
          int col = row_of_node[grid.index(j0, j1)];
          if (col >= 0) ref.matrix(r, col) -= cw;
        }
      };
      couple(i0 - 1, i1, inv_h2);
      couple(i0 + 1, i1, inv_h2);
      couple(i0, i1 - 1, inv_h2);
      couple(i0, i1 + 1, inv_h2);
      for (int dy = -K; dy <= K; ++dy)
        for (int dx = -K; dx <= K; ++dx) {
          if (dx == 0 && dy == 0) continue;
          double cw = w(dx + K, dy + K);
          if (cw != 0.0) couple(i0 + dx, i1 + dy, cw);
        }
      diag += tail;
      ref.matrix(r, r) += diag;
    }
  }

  if (with_spectrum) {
    if (n > 2500)
      throw std::invalid_argument("dense_reference: spectrum capped at 2500 unknowns");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ref.matrix);
    ref.spectrum = es.eigenvalues();
  }
  return ref;
}

QuadCache::QuadCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (...) {
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.value().is_number()) entries_.emplace_back(it.key(), it.value().get<double>());
}

bool QuadCache::lookup(const std::string& key, double* value) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) {
      *value = v;
      return true;
    }
  }
  return false;
}

void QuadCache::store(const std::string& key, double value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void QuadCache::save() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : entries_) j[k] = v;
  std::ofstream out(path_);
  out << j.dump(2) << '\n';
}

}  // namespace mixlap
