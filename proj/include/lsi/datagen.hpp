#pragma once

#include <functional>

#include "lsi/domain.hpp"
#include "lsi/types.hpp"

namespace lsi {

/// Acceleration field q̈ = a(q) of a second order system.
using AccelFn = std::function<Vec(const Vec&)>;

struct SamplerSpec {
  Box bounds;      // hyperrectangle in R^{2n} over (q, qdot)
  int count = 0;   // number of initial states
  long long skip = 0;  // leading Halton indices to discard

  void validate() const {
    bounds.validate();
    if (count < 1) throw std::invalid_argument("SamplerSpec: count must be >= 1");
  }
};

struct GroundTruthSpec {
  double h = 0.0;          // output step size
  int steps_per_sample = 0;  // trajectory length N_l
  double h_fine = 0.0;     // internal integration step; must divide h exactly

  /// Subsampling factor m with h = m * h_fine.
  int substeps() const;

  void validate() const {
    if (h <= 0.0 || h_fine <= 0.0)
      throw std::invalid_argument("GroundTruthSpec: step sizes must be > 0");
    if (steps_per_sample < 3)
      throw std::invalid_argument("GroundTruthSpec: trajectory length must be >= 3");
    (void)substeps();
  }
};

/// Störmer–Verlet (leapfrog) integration of q̈ = a(q): half-kick, drift,
/// half-kick. Returns steps+1 states including the initial one.
std::vector<std::pair<Vec, Vec>> stormer_verlet(const AccelFn& accel, const Vec& q0,
                                                const Vec& qdot0, double h_fine, int steps);

std::vector<std::pair<Vec, Vec>> stormer_verlet(const BenchmarkSystem& sys, const Vec& q0,
                                                const Vec& qdot0, double h_fine, int steps);

/// Generate a position-only training dataset: Halton-sampled initial states,
/// fine Störmer–Verlet ground truth subsampled to step h.
TrajectoryDataset generate_dataset(const BenchmarkSystem& sys, const SamplerSpec& sampler,
                                   const GroundTruthSpec& gt);

/// Same, with an explicit acceleration field (test hook).
TrajectoryDataset generate_dataset(const AccelFn& accel, int n, const SamplerSpec& sampler,
                                   const GroundTruthSpec& gt);

/// Second order central differences at interior snapshots:
/// q̇_j = (q_{j+1} − q_{j−1})/(2h), q̈_j = (q_{j+1} − 2q_j + q_{j−1})/h².
/// Endpoints are omitted.
std::vector<State> central_differences(const Trajectory& traj);

/// Base-2 Halton points scaled into a 1-d interval (LGPExact velocity data).
std::vector<double> halton_velocities(int count, double lo, double hi);

}  // namespace lsi
