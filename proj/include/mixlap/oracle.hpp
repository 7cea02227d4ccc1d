#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "mixlap/grid.hpp"
#include "mixlap/kernel.hpp"

namespace mixlap {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

struct FracLapOptions {
  int panels_per_octave = 1;  // refinement knob; 2 doubles the panel count
  int gl_order = 24;
  double sup_bound = 1.0;     // sup|u|, used in the analytic truncation bound
  double tail_tol = 1e-13;
};

// Pointwise 1D fractional Laplacian of an analytic function by adaptive
// symmetric-pair quadrature: the inner region integrates the regularized
// second difference (u(x+z)+u(x-z)-2u(x)) / (2 |z|^{1+2s}) over dyadic panels
// with a Taylor closure at 0, the outer region runs dyadic panels until the
// analytic tail bound drops below tail_tol.
QuadratureResult pointwise_fraclap(const std::function<double(double)>& u, double x,
                                   double s, NormalizationMode mode,
                                   const FracLapOptions& opts = {});

// Brute-force dense interior matrix assembled with independently recomputed
// weights (divergence-theorem self moment, tensor quadrature near cells), plus
// the full symmetric spectrum. Refuses grids above 70 nodes per axis.
struct DenseReference {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd spectrum;  // ascending; empty when not requested
  std::vector<int> nodes;
};

DenseReference dense_reference(const Grid& grid, double s, NormalizationMode mode,
                               bool with_spectrum = true);

// Small JSON-backed memo for oracle values keyed by parameter strings.
class QuadCache {
 public:
  explicit QuadCache(std::string path);
  bool lookup(const std::string& key, double* value) const;
  void store(const std::string& key, double value);
  void save() const;

 private:
  std::string path_;
  std::string serialized_;  // loaded file content
  std::vector<std::pair<std::string, double>> entries_;
};

}  // namespace mixlap
