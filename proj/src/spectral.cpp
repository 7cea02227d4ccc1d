#include "mixlap/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mixlap {

namespace {

EigenResult smallest_eigenpair(const MixedOperator& op, const DenseSystem& sys) {
  const Grid& g = *op.grid;
  const Eigen::MatrixXd& A = sys.A;
  const int n = static_cast<int>(A.rows());

  Eigen::LDLT<Eigen::MatrixXd> fact(A);
  if (fact.info() != Eigen::Success)
    throw std::runtime_error("lambda1: factorization of the interior matrix failed");

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  x.normalize();
  double rq_prev = std::numeric_limits<double>::infinity();
  double rq = 0.0, resid = std::numeric_limits<double>::infinity();
  int it = 0;
  const int max_it = 2000;
  for (it = 1; it <= max_it; ++it) {
    Eigen::VectorXd y = fact.solve(x);
    y.normalize();
    Eigen::VectorXd Ay = A * y;
    rq = y.dot(Ay);
    resid = (Ay - rq * y).norm();
    x = y;
    bool rq_settled = std::abs(rq - rq_prev) <= 1e-11 * std::abs(rq);
    if (rq_settled && resid <= 1e-9 * std::max(std::abs(rq), 1.0)) break;
    rq_prev = rq;
  }
  if (it > max_it) {
    std::ostringstream msg;
    msg << "lambda1: inverse iteration stagnated after " << max_it
        << " iterations (rayleigh=" << rq << ", residual=" << resid << ")";
    throw std::runtime_error(msg.str());
  }
  if (x.sum() < 0.0) x = -x;

  EigenResult res;
  res.lambda1 = rq;
  res.residual_norm = resid;
  res.iterations = it;
  res.eigenfield = make_field(g);
  double scale = std::pow(g.h, 0.5 * g.dim);
  for (int r = 0; r < n; ++r) res.eigenfield.values[sys.nodes[r]] = x[r] / scale;
  return res;
}

}  // namespace

EigenResult lambda1(const MixedOperator& op, bool local_only) {
  DenseSystem sys = assemble_dense(op, ExteriorRule{}, local_only);
  return smallest_eigenpair(op, sys);
}

EigenResult lambda1_masked(const MixedOperator& op, const std::vector<std::uint8_t>& mask,
                           bool local_only) {
  DenseSystem sys = assemble_dense_masked(op, mask, local_only);
  return smallest_eigenpair(op, sys);
}

std::vector<ScanRow> lambda1_volume_scan(DomainKind family,
                                         const std::vector<double>& radii,
                                         int nodes_per_domain, double s,
                                         NormalizationMode mode) {
  if (radii.empty()) throw std::invalid_argument("volume scan: no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("volume scan: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("volume scan: radii must be strictly decreasing");
  }
  if (nodes_per_domain < 10)
    throw std::invalid_argument(
        "volume scan: radius resolvable by fewer than 5 interior nodes");
  if (family != DomainKind::interval && family != DomainKind::disc)
    throw std::invalid_argument("volume scan: interval or disc families only");

  std::vector<ScanRow> rows;
  for (double r : radii) {
    Grid grid = family == DomainKind::interval ? build_interval(-r, r, nodes_per_domain)
                                               : build_disc(r, nodes_per_domain);
    MixedOperator op = assemble(grid, s, mode);
    EigenResult eig = lambda1(op);
    rows.push_back({r, eig.lambda1, eig.residual_norm, grid.interior_count()});
  }
  return rows;
}

}  // namespace mixlap
