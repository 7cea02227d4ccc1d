#include "mixlap/semilinear.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixlap {

namespace {

bool sampled_gibbons_admissible(const std::function<double(double)>& fprime) {
  double sup = -std::numeric_limits<double>::infinity();
  for (double r = 1.0; r <= 10.0 + 1e-12; r += 1e-3) {
    sup = std::max(sup, fprime(r));
    sup = std::max(sup, fprime(-r));
  }
  return sup < 0.0;
}

Nonlinearity finish(Nonlinearity nl) {
  nl.gibbons_admissible = sampled_gibbons_admissible(nl.fprime);
  nl.lipschitz_constant = nl.lipschitz_on(nl.lip_interval_lo, nl.lip_interval_hi);
  return nl;
}

}  // namespace

double Nonlinearity::lipschitz_on(double lo, double hi) const {
  if (!(hi >= lo)) std::swap(lo, hi);
  double span = std::max(hi - lo, 1e-8);
  int steps = 2000;
  double sup = 0.0;
  for (int i = 0; i <= steps; ++i)
    sup = std::max(sup, std::abs(fprime(lo + span * i / steps)));
  return sup;
}

Nonlinearity make_constant_one() {
  Nonlinearity nl;
  nl.name = "constant_one";
  nl.f = [](double) { return 1.0; };
  nl.fprime = [](double) { return 0.0; };
  return finish(std::move(nl));
}

Nonlinearity make_affine(double a, double b) {
  Nonlinearity nl;
  nl.name = "affine";
  nl.f = [a, b](double u) { return a + b * u; };
  nl.fprime = [b](double) { return b; };
  return finish(std::move(nl));
}

Nonlinearity make_allen_cahn() {
  Nonlinearity nl;
  nl.name = "allen_cahn";
  nl.f = [](double u) { return u - u * u * u; };
  nl.fprime = [](double u) { return 1.0 - 3.0 * u * u; };
  return finish(std::move(nl));
}

Nonlinearity make_logistic(double rate) {
  Nonlinearity nl;
  nl.name = "logistic";
  nl.f = [rate](double u) { return rate * u * (1.0 - u); };
  nl.fprime = [rate](double u) { return rate * (1.0 - 2.0 * u); };
  return finish(std::move(nl));
}

Nonlinearity make_nonlinearity(const std::string& name, const NonlinearityParams& p) {
  if (name == "constant_one") return make_constant_one();
  if (name == "affine") return make_affine(p.a, p.b);
  if (name == "allen_cahn") return make_allen_cahn();
  if (name == "logistic") return make_logistic(p.rate);
  throw std::invalid_argument("unknown nonlinearity preset: " + name);
}

std::vector<std::string> nonlinearity_names() {
  return {"constant_one", "affine", "allen_cahn", "logistic"};
}

Field residual(const MixedOperator& op, const Nonlinearity& nl, const Field& u) {
  Field r = apply(op, u);
  for (int node : op.grid->interior_nodes) r.values[node] -= nl.f(u.values[node]);
  return r;
}

namespace {

SolveReport newton_loop(const DenseSystem& sys, const Nonlinearity& nl, Field& u,
                        const NewtonParams& params) {
  const Grid& g = *u.grid;
  const int n = static_cast<int>(sys.A.rows());
  SolveReport rep;

  Eigen::VectorXd uin(n);
  for (int r = 0; r < n; ++r) uin[r] = u.values[sys.nodes[r]];

  auto residual_of = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r = sys.A * v - sys.g;
    for (int i = 0; i < n; ++i) r[i] -= nl.f(v[i]);
    return r;
  };

  Eigen::VectorXd r = residual_of(uin);
  double rsup = r.lpNorm<Eigen::Infinity>();
  rep.residual_history.push_back(rsup);

  for (int it = 1; it <= params.max_iter && rsup > params.tol; ++it) {
    Eigen::MatrixXd J = sys.A;
    for (int i = 0; i < n; ++i) J(i, i) -= nl.fprime(uin[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    Eigen::VectorXd d = lu.solve(-r);
    double lin_res = (J * d + r).lpNorm<Eigen::Infinity>();
    if (!d.allFinite() || lin_res > 1e-6 * (rsup + 1.0)) {
      rep.message = "singular Jacobian: linear solve failed at iteration " +
                    std::to_string(it);
      break;
    }

    double alpha = 1.0;
    int halvings = 0;
    bool accepted = false;
    Eigen::VectorXd trial, rt;
    double rtsup = 0.0;
    while (halvings <= params.max_halvings) {
      trial = uin + alpha * d;
      rt = residual_of(trial);
      rtsup = rt.lpNorm<Eigen::Infinity>();
      if (std::isfinite(rtsup) && rtsup < rsup) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
      ++halvings;
    }
    if (!accepted) {
      rep.message = "line search failed to reduce the residual at iteration " +
                    std::to_string(it);
      break;
    }
    if (halvings > 0) ++rep.damping_events;
    uin = trial;
    r = rt;
    rsup = rtsup;
    rep.residual_history.push_back(rsup);
    rep.iterations = it;
  }

  rep.final_residual_sup = rsup;
  rep.converged = rsup <= params.tol;
  if (rep.converged) rep.message = "converged";
  else if (rep.message.empty()) rep.message = "maximum iterations exceeded";

  for (int rI = 0; rI < n; ++rI) u.values[sys.nodes[rI]] = uin[rI];
  double min_int = std::numeric_limits<double>::infinity();
  for (int node : g.interior_nodes) min_int = std::min(min_int, u.values[node]);
  rep.positive_interior = min_int > 0.0;
  return rep;
}

double clamp1(double t) { return std::clamp(t, -1.0, 1.0); }

}  // namespace

std::pair<Field, SolveReport> solve_dirichlet(const MixedOperator& op,
                                              const Nonlinearity& nl, const Field& u0,
                                              const NewtonParams& params) {
  if (u0.grid != op.grid)
    throw std::invalid_argument("solve_dirichlet: field grid mismatch");
  if (!is_zero_rule(u0))
    throw std::invalid_argument("solve_dirichlet: zero-rule initial guess required");
  DenseSystem sys = assemble_dense(op, ExteriorRule{});
  Field u = u0;
  SolveReport rep = newton_loop(sys, nl, u, params);
  return {std::move(u), std::move(rep)};
}

namespace {

struct GibbonsSetup {
  double half_length = 0.0;
  double half_width = 0.0;  // strip only
  int n_across = 0;
};

GibbonsSetup gibbons_setup(const Grid& g) {
  GibbonsSetup s;
  if (g.desc.kind == DomainKind::interval) {
    if (std::abs(g.desc.a + g.desc.b) > 1e-12 * (g.desc.b - g.desc.a))
      throw std::invalid_argument("solve_gibbons: interval must be symmetric about 0");
    s.half_length = 0.5 * (g.desc.b - g.desc.a);
  } else if (g.desc.kind == DomainKind::strip) {
    s.half_length = g.desc.half_length;
    s.half_width = g.desc.half_width;
    s.n_across = g.shape[0];
  } else {
    throw std::invalid_argument("solve_gibbons: interval or strip grid required");
  }
  return s;
}

}  // namespace

GibbonsResult solve_gibbons(const MixedOperator& op, const Nonlinearity& nl,
                            const Field& u0, const NewtonParams& params) {
  const Grid& g = *op.grid;
  if (u0.grid != &g) throw std::invalid_argument("solve_gibbons: field grid mismatch");
  if (!nl.gibbons_admissible)
    throw std::invalid_argument(
        "solve_gibbons: nonlinearity inadmissible (sup f' over |r|>=1 must be negative)");
  if (u0.rule.kind != ExteriorRule::Kind::far_constants || u0.rule.minus != -1.0 ||
      u0.rule.plus != 1.0 || u0.rule.axis != op.far_axis)
    throw std::invalid_argument(
        "solve_gibbons: exterior rule far_constants(-1, +1) along the far axis required");
  GibbonsSetup setup = gibbons_setup(g);
  if (setup.half_length < 10.0 - 1e-9)
    throw std::invalid_argument("solve_gibbons: truncation half-length must be >= 10");

  GibbonsResult out;
  DenseSystem sys = assemble_dense(op, u0.rule);
  out.u = u0;
  out.report = newton_loop(sys, nl, out.u, params);

  // Mandatory truncation check: re-solve on a domain extended to 1.5x the
  // half-length at the same spacing and compare on the shared nodes.
  double T2 = 1.5 * setup.half_length;
  Grid big = g.desc.kind == DomainKind::interval
                 ? build_interval(-T2, T2,
                                  static_cast<int>(std::lround(2.0 * T2 / g.h)) + 1)
                 : build_strip(setup.half_width, T2, setup.n_across);
  MixedOperator op_big = assemble(big, op.s, op.mode);
  int far = op_big.far_axis;
  Field u0_big = field_from_function(big, u0.rule, [&](double x, double y) {
    return clamp1(far == 0 ? x : y);
  });
  DenseSystem sys_big = assemble_dense(op_big, u0_big.rule);
  Field u_big = u0_big;
  SolveReport rep_big = newton_loop(sys_big, nl, u_big, params);

  double sens = 0.0;
  if (rep_big.converged && out.report.converged) {
    int shift = (big.shape[far] - g.shape[far]) / 2;
    for (int node : g.interior_nodes) {
      int i0 = g.coord_index(node, 0), i1 = g.coord_index(node, 1);
      int j0 = i0 + (far == 0 ? shift : 0), j1 = i1 + (far == 1 ? shift : 0);
      if (!big.on_grid(j0, j1)) continue;
      int jnode = big.index(j0, j1);
      if (std::abs(big.coord(jnode, far) - g.coord(node, far)) > 1e-9 * g.h) continue;
      sens = std::max(sens, std::abs(u_big.values[jnode] - out.u.values[node]));
    }
  } else {
    sens = std::numeric_limits<double>::quiet_NaN();
    if (out.report.message == "converged")
      out.report.message = "converged (truncation re-solve failed)";
  }
  out.truncation_sensitivity = sens;
  return out;
}

}  // namespace mixlap
