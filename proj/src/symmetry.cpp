#include "mixlap/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mixlap/spectral.hpp"

namespace mixlap {

namespace {

// u composed with the reflection; off-grid mirror images read the exterior.
Eigen::VectorXd reflected_values(const Field& u, const ReflectionMap& map) {
  const Grid& g = *u.grid;
  Eigen::VectorXd out(g.node_count());
  for (int node = 0; node < g.node_count(); ++node) {
    int p = map.pair[node];
    out[node] = p == ReflectionMap::off_grid
                    ? exterior_value(u.rule, g.coord(node, u.rule.axis))
                    : u.values[p];
  }
  return out;
}

}  // namespace

std::vector<MovingPlaneSnapshot> moving_plane_scan(const MixedOperator& op,
                                                   const Field& u, int axis,
                                                   const Nonlinearity& nl) {
  const Grid& g = *u.grid;
  if (u.grid != op.grid) throw std::invalid_argument("moving_plane_scan: grid mismatch");
  if (!is_zero_rule(u))
    throw std::invalid_argument("moving_plane_scan: zero-rule field required");
  if (!mask_symmetric(g, axis, 0.0))
    throw std::invalid_argument("moving_plane_scan: domain not reflection-symmetric");

  double left = 0.0;
  switch (g.desc.kind) {
    case DomainKind::interval: left = g.desc.a; break;
    case DomainKind::disc: left = -g.desc.radius; break;
    case DomainKind::box: left = axis == 0 ? g.desc.ax : g.desc.ay; break;
    case DomainKind::strip:
      throw std::invalid_argument("moving_plane_scan: bounded domains only");
  }

  std::vector<MovingPlaneSnapshot> snaps;
  const double tol = 1e-9 * g.h;
  int steps = static_cast<int>(std::lround(-2.0 * left / g.h));
  for (int k = 1; k <= steps; ++k) {
    double lambda = left + 0.5 * k * g.h;
    if (lambda > tol) break;
    ReflectionMap map = reflect(g, axis, lambda);
    Eigen::VectorXd urefl = reflected_values(u, map);

    MovingPlaneSnapshot snap;
    snap.lambda = lambda;
    snap.w_lambda.grid = &g;
    snap.w_lambda.values.resize(g.node_count());
    snap.c_field.grid = &g;
    snap.c_field.values.resize(g.node_count());

    double viol = 0.0;
    for (int node = 0; node < g.node_count(); ++node) {
      double diff = u.values[node] - urefl[node];
      bool in_sigma = g.coord(node, axis) < lambda - tol;
      snap.w_lambda.values[node] = in_sigma ? std::max(diff, 0.0) : std::min(diff, 0.0);
      double du = urefl[node] - u.values[node];
      snap.c_field.values[node] =
          du != 0.0 ? (nl.f(urefl[node]) - nl.f(u.values[node])) / du : 0.0;
      if (in_sigma && g.is_interior(node)) viol = std::max(viol, diff);
    }
    snap.sup_violation = std::max(viol, 0.0);
    snaps.push_back(std::move(snap));
  }
  return snaps;
}

double plane_symmetry_metric(const Field& u, int axis) {
  const Grid& g = *u.grid;
  ReflectionMap map = reflect(g, axis, 0.0);
  double sup = 0.0;
  for (int node = 0; node < g.node_count(); ++node) {
    int p = map.pair[node];
    if (p == ReflectionMap::off_grid) continue;
    sup = std::max(sup, std::abs(u.values[node] - u.values[p]));
  }
  return sup;
}

double monotonicity_check(const Field& u, int axis) {
  const Grid& g = *u.grid;
  const double tol = 1e-9 * g.h;
  double worst = 0.0;
  for (int node : g.interior_nodes) {
    if (!(g.coord(node, axis) < -tol)) continue;
    int i0 = g.coord_index(node, 0) + (axis == 0 ? 1 : 0);
    int i1 = g.coord_index(node, 1) + (axis == 1 ? 1 : 0);
    if (g.periodic[axis]) {
      i0 = axis == 0 ? g.wrap(i0, 0) : i0;
      i1 = axis == 1 ? g.wrap(i1, 1) : i1;
    } else if (!g.on_grid(i0, i1)) {
      continue;
    }
    int next = g.index(i0, i1);
    if (!g.is_interior(next)) continue;
    worst = std::max(worst, u.values[node] - u.values[next]);
  }
  return worst;
}

double onedim_variation(const Field& u, int t_axis) {
  const Grid& g = *u.grid;
  if (g.dim == 1) return 0.0;
  int other = 1 - t_axis;
  double sup = 0.0;
  for (int t = 0; t < g.shape[t_axis]; ++t) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int y = 0; y < g.shape[other]; ++y) {
      int node = t_axis == 1 ? g.index(y, t) : g.index(t, y);
      if (!g.is_interior(node)) continue;
      lo = std::min(lo, u.values[node]);
      hi = std::max(hi, u.values[node]);
    }
    if (hi >= lo) sup = std::max(sup, hi - lo);
  }
  return sup;
}

MpCheckResult antisymmetric_mp_check(const MixedOperator& op,
                                     const std::vector<std::uint8_t>& U_mask, int axis,
                                     double lambda, const Field& c, const Field& v) {
  const Grid& g = *op.grid;
  if (v.grid != &g || c.grid != &g)
    throw std::invalid_argument("antisymmetric_mp_check: grid mismatch");
  if (static_cast<int>(U_mask.size()) != g.node_count())
    throw std::invalid_argument("antisymmetric_mp_check: mask size mismatch");

  ReflectionMap map = reflect(g, axis, lambda);
  const double scale = std::max(1.0, v.values.lpNorm<Eigen::Infinity>());
  for (int node = 0; node < g.node_count(); ++node) {
    int p = map.pair[node];
    double mirror = p == ReflectionMap::off_grid ? 0.0 : v.values[p];
    if (std::abs(v.values[node] + mirror) > 1e-10 * scale)
      throw std::invalid_argument("antisymmetric_mp_check: v is not antisymmetric");
  }

  const double tol = 1e-9 * g.h;
  for (int node = 0; node < g.node_count(); ++node) {
    if (U_mask[node]) continue;
    if (g.coord(node, axis) < lambda - tol && v.values[node] < -1e-12 * scale)
      throw std::invalid_argument(
          "antisymmetric_mp_check: v must be nonnegative on the halfspace outside U");
  }

  // Discrete supersolution inequality against the nodal hat basis on U.
  Eigen::VectorXd Lv = apply_raw(op, v.values, v.rule, false);
  double slack = std::numeric_limits<double>::infinity();
  for (int node : g.interior_nodes) {
    if (!U_mask[node]) continue;
    slack = std::min(slack, Lv[node] - c.values[node] * v.values[node]);
  }
  if (!(slack >= -1e-10))
    throw std::invalid_argument(
        "antisymmetric_mp_check: field is not a discrete supersolution on U");

  MpCheckResult res;
  res.supersolution_slack = slack;

  double min_h = std::numeric_limits<double>::infinity();
  for (int node = 0; node < g.node_count(); ++node)
    if (g.coord(node, axis) < lambda - tol)
      min_h = std::min(min_h, v.values[node]);
  res.min_over_halfspace = min_h;
  res.nonneg = min_h >= -1e-10;

  double cplus = 0.0;
  for (int node : g.interior_nodes)
    if (U_mask[node]) cplus = std::max(cplus, c.values[node]);
  res.c_plus_sup = std::max(cplus, 0.0);
  res.lambda1_U = lambda1_masked(op, U_mask).lambda1;
  res.hypothesis_ok = res.c_plus_sup < res.lambda1_U;

  res.nontrivial = v.values.lpNorm<Eigen::Infinity>() > 0.0;

  // Strong-maximum-principle probe on U eroded by one lattice layer.
  std::vector<std::uint8_t> eroded(g.node_count(), 0);
  bool any_eroded = false;
  for (int node = 0; node < g.node_count(); ++node) {
    if (!U_mask[node]) continue;
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    bool inside = true;
    auto check = [&](int j0, int j1) {
      if (g.periodic[0]) j0 = g.wrap(j0, 0);
      if (g.dim == 2 && g.periodic[1]) j1 = g.wrap(j1, 1);
      if (!g.on_grid(j0, j1) || !U_mask[g.index(j0, j1)]) inside = false;
    };
    check(i0 - 1, i1);
    check(i0 + 1, i1);
    if (g.dim == 2) {
      check(i0, i1 - 1);
      check(i0, i1 + 1);
    }
    if (inside) {
      eroded[node] = 1;
      any_eroded = true;
    }
  }
  double imin = std::numeric_limits<double>::infinity();
  for (int node = 0; node < g.node_count(); ++node)
    if ((any_eroded ? eroded[node] : U_mask[node]) != 0)
      imin = std::min(imin, v.values[node]);
  res.interior_min = imin;
  return res;
}

double commutation_check(const MixedOperator& op, const Field& phi, int axis) {
  const Grid& g = *op.grid;
  if (phi.grid != &g) throw std::invalid_argument("commutation_check: grid mismatch");
  if (axis < 0 || axis >= g.dim)
    throw std::invalid_argument("commutation_check: axis out of range");

  auto read = [&](int j0, int j1) -> double {
    if (g.periodic[0]) j0 = g.wrap(j0, 0);
    if (g.dim == 2 && g.periodic[1]) j1 = g.wrap(j1, 1);
    if (g.on_grid(j0, j1)) return phi.values[g.index(j0, j1)];
    if (phi.rule.kind == ExteriorRule::Kind::zero) return 0.0;
    int idx = phi.rule.axis == 0 ? j0 : j1;
    return idx < 0 ? phi.rule.minus : phi.rule.plus;
  };

  const double inv2h = 0.5 / g.h;
  Eigen::VectorXd dphi(g.node_count());
  for (int node = 0; node < g.node_count(); ++node) {
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    double fwd = read(i0 + (axis == 0), i1 + (axis == 1));
    double bwd = read(i0 - (axis == 0), i1 - (axis == 1));
    dphi[node] = (fwd - bwd) * inv2h;
  }

  Eigen::VectorXd L_dphi = apply_raw(op, dphi, ExteriorRule{}, true);
  Eigen::VectorXd L_phi = apply_raw(op, phi.values, phi.rule, true);

  double sup = 0.0;
  for (int node = 0; node < g.node_count(); ++node) {
    int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
    bool doubly_interior = true;
    for (int a = 0; a < g.dim && doubly_interior; ++a) {
      if (g.periodic[a]) continue;
      int idx = a == 0 ? i0 : i1;
      if (idx < 1 || idx > g.shape[a] - 2) doubly_interior = false;
    }
    if (!doubly_interior) continue;
    int f0 = i0 + (axis == 0), f1 = i1 + (axis == 1);
    int b0 = i0 - (axis == 0), b1 = i1 - (axis == 1);
    if (g.periodic[axis]) {
      f0 = axis == 0 ? g.wrap(f0, 0) : f0;
      f1 = axis == 1 ? g.wrap(f1, 1) : f1;
      b0 = axis == 0 ? g.wrap(b0, 0) : b0;
      b1 = axis == 1 ? g.wrap(b1, 1) : b1;
    }
    double d_lphi = (L_phi[g.index(f0, f1)] - L_phi[g.index(b0, b1)]) * inv2h;
    sup = std::max(sup, std::abs(L_dphi[node] - d_lphi));
  }
  return sup;
}

SymmetryReport theorem_one_report(const MixedOperator& op, const Field& u,
                                  const Nonlinearity& nl) {
  const Grid& g = *u.grid;
  SymmetryReport rep;

  double min_int = std::numeric_limits<double>::infinity();
  for (int node : g.interior_nodes) min_int = std::min(min_int, u.values[node]);
  rep.positive_interior = min_int > 0.0;

  for (int axis = 0; axis < g.dim; ++axis) {
    rep.plane_asymmetry.push_back(plane_symmetry_metric(u, axis));
    rep.monotonicity_violation =
        std::max(rep.monotonicity_violation, monotonicity_check(u, axis));
    auto snaps = moving_plane_scan(op, u, axis, nl);
    for (const auto& s : snaps)
      rep.max_sup_violation = std::max(rep.max_sup_violation, s.sup_violation);
  }

  if (g.desc.kind == DomainKind::disc) {
    // Spread over orbits of the lattice symmetry group (exact symmetry class)
    // and over equal-radius classes (radial profile, limited by h).
    std::map<std::pair<long, long>, std::pair<double, double>> orbits;
    std::map<long long, std::pair<double, double>> radii;
    for (int node : g.interior_nodes) {
      long di = std::lround(2.0 * (g.coord_index(node, 0) - g.center_index[0]));
      long dj = std::lround(2.0 * (g.coord_index(node, 1) - g.center_index[1]));
      long ai = std::labs(di), aj = std::labs(dj);
      std::pair<long, long> okey{std::max(ai, aj), std::min(ai, aj)};
      long long rkey = static_cast<long long>(ai) * ai + static_cast<long long>(aj) * aj;
      double val = u.values[node];
      auto upd = [&](auto& m, auto key) {
        auto it = m.find(key);
        if (it == m.end())
          m.emplace(key, std::make_pair(val, val));
        else {
          it->second.first = std::min(it->second.first, val);
          it->second.second = std::max(it->second.second, val);
        }
      };
      upd(orbits, okey);
      upd(radii, rkey);
    }
    for (const auto& [k, mm] : orbits)
      rep.radial_orbit_asymmetry = std::max(rep.radial_orbit_asymmetry, mm.second - mm.first);
    for (const auto& [k, mm] : radii)
      rep.radial_profile_spread = std::max(rep.radial_profile_spread, mm.second - mm.first);
  } else if (g.dim == 1) {
    rep.radial_orbit_asymmetry = rep.plane_asymmetry[0];
  }

  rep.onedim_var = g.dim == 2 ? onedim_variation(u, 1) : 0.0;

  double plane_max = 0.0;
  for (double p : rep.plane_asymmetry) plane_max = std::max(plane_max, p);
  rep.verdict_plane = plane_max <= rep.tol_plane;
  rep.verdict_monotone = rep.monotonicity_violation <= rep.tol_monotonicity;
  rep.verdict_moving_plane = rep.max_sup_violation <= rep.tol_moving_plane;
  return rep;
}

}  // namespace mixlap
