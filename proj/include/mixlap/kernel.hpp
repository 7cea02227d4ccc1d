#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mixlap/field.hpp"
#include "mixlap/grid.hpp"

namespace mixlap {

// "paper" keeps the raw singular kernel |z|^{-N-2s}; "standard" multiplies the
// nonlocal part by C(N,s) = 4^s Gamma(N/2+s) / (pi^{N/2} |Gamma(-s)|) so values
// can be checked against Fourier-symbol references.
enum class NormalizationMode { paper, standard };

double fractional_constant(int dim, double s);
// Integral of (1+t^2)^{-1-s} over the real line: sqrt(pi)*Gamma(s+1/2)/Gamma(s+1).
// Relates a planar kernel to its marginal along one coordinate.
double slab_marginal_constant(double s);

// Discrete L = -Delta + (-Delta)^s on a grid.
//
// Nonlocal part: translation-invariant offset weights w(d) equal to the kernel
// integral over the h-cell at lattice offset d, truncated at the ball radius
// R = (K+1/2)h inscribed in the covered box at the grid center; the singular
// self cell is folded into nearest-neighbor weights via its second-difference
// moment. Everything beyond the ball is closed analytically by constant tail
// weights against the exterior far-field value.
struct MixedOperator {
  const Grid* grid = nullptr;
  double s = 0.5;
  NormalizationMode mode = NormalizationMode::paper;
  double inv_h2 = 0.0;
  int max_offset = 0;     // K
  double ball_radius = 0; // (K+1/2)h
  bool is_strip = false;

  std::vector<double> w1;  // 1D: w1[d], d in [1,K]
  Eigen::MatrixXd w2;      // 2D box: (2K+1)x(2K+1), entry (dx+K, dy+K)
  Eigen::MatrixXd wstrip;  // strip: ny x (K+1), directed y-residue x |dt|

  double tail_minus = 0.0, tail_plus = 0.0;  // per side along far_axis
  double tail_total = 0.0;
  bool tail_splittable = false;
  int far_axis = 0;
  double normalization_constant = 1.0;

  // Pair weight for lattice offset (d0,d1); 0 outside the truncation ball.
  double offset_weight(int d0, int d1) const;
};

MixedOperator assemble(const Grid& grid, double s,
                       NormalizationMode mode = NormalizationMode::paper);

// (L u) at interior nodes, zero elsewhere; result carries the zero rule.
Field apply(const MixedOperator& op, const Field& u);

// Row action on raw nodal values with the given exterior continuation.
Eigen::VectorXd apply_raw(const MixedOperator& op, const Eigen::VectorXd& values,
                          const ExteriorRule& rule, bool all_nodes = false);

// Energy pairing of the discrete operator on zero-rule fields. Satisfies
// B(u,v) = h^dim * <v, L u> identically (checked by test).
double bilinear_form(const MixedOperator& op, const Field& u, const Field& v);

struct EnergyBreakdown {
  double gradient_part = 0.0;
  double seminorm_part = 0.0;
  double total = 0.0;
};

// Localized energy over a node set U: one-sided gradient quadrature on edges
// inside U plus the UxU restriction of the nonlocal weights; no far term.
EnergyBreakdown rho_energy(const MixedOperator& op, const Field& u,
                           const std::vector<std::uint8_t>& subdomain_mask);

// Interior linear system: (L u)|interior = A u_int - g where g collects the
// exterior continuation. A is symmetric.
struct DenseSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd g;
  std::vector<int> nodes;        // interior node per row
  std::vector<int> row_of_node;  // node -> row, -1 outside
};

DenseSystem assemble_dense(const MixedOperator& op, const ExteriorRule& rule,
                           bool local_only = false);

// Zero-rule restriction to mask ∩ interior.
DenseSystem assemble_dense_masked(const MixedOperator& op,
                                  const std::vector<std::uint8_t>& mask,
                                  bool local_only = false);

// 1D operator governing width-independent fields of a strip operator: weights
// summed over the periodic cross direction, far tails carried over.
// line_grid must come from line_of_strip(*op.grid) and outlive the result.
MixedOperator collapse_strip(const MixedOperator& op, const Grid& line_grid);

// Writes <prefix>_header.json and <prefix>_weights.csv (row,col,weight
// triplets over on-grid pairs).
void dump_operator(const MixedOperator& op, const std::string& prefix);

}  // namespace mixlap
