#pragma once

#include <cstdint>
#include <vector>

#include "mixlap/kernel.hpp"

namespace mixlap {

struct EigenResult {
  double lambda1 = 0.0;
  Field eigenfield;           // zero rule, unit h-weighted L2 norm, nonnegative orientation
  double residual_norm = 0.0; // l2 norm of (A - lambda I)x on the unit eigenvector
  int iterations = 0;
};

// Smallest eigenvalue of the interior matrix by inverse power iteration with a
// direct factorization. Throws on stagnation with the last iterate's
// diagnostics in the message.
EigenResult lambda1(const MixedOperator& op, bool local_only = false);

// Same, restricted to mask ∩ interior with zero exterior.
EigenResult lambda1_masked(const MixedOperator& op,
                           const std::vector<std::uint8_t>& mask,
                           bool local_only = false);

struct ScanRow {
  double radius = 0.0;
  double lambda1 = 0.0;
  double residual = 0.0;
  int n_interior = 0;
};

// One eigenvalue per radius on grids scaled so the node count per domain stays
// constant. Radii must be strictly decreasing; nodes_per_domain >= 10.
std::vector<ScanRow> lambda1_volume_scan(DomainKind family,
                                         const std::vector<double>& radii,
                                         int nodes_per_domain, double s,
                                         NormalizationMode mode);

}  // namespace mixlap
