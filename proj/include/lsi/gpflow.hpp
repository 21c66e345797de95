#pragma once

#include "lsi/kernel.hpp"
#include "lsi/types.hpp"

namespace lsi {

/// Structure-free baseline: kernel ridge regression of the one-step flow map
/// (q, q̇)_j ↦ (q, q̇)_{j+1} on central-difference velocity reconstructions.
struct GpFlowModel {
  Mat X;      // samples x 2n training inputs
  Mat alpha;  // samples x 2n weights, one column per output coordinate
  KernelParams params;
  double jitter = 0.0;  // effective jitter actually used
  double h = 0.0;
  int n = 0;
  double log_marginal = 0.0;

  Vec predict(const Vec& x) const;
};

/// Fit with ε selected from a small grid by maximum log marginal likelihood.
/// The jitter argument is a floor; it is escalated (x1e3, x1e6) if the Gram
/// matrix cannot be factorised at the requested level.
GpFlowModel train_gpflow(const TrajectoryDataset& ds, double jitter = 1e-10,
                         const std::vector<double>& epsilon_grid = {1.0, 2.0, 5.0, 10.0, 20.0});

}  // namespace lsi
