#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace lsi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Axis-aligned hyperrectangle, used for sampling domains and analysis grids.
struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }

  void validate() const {
    if (lo.size() != hi.size())
      throw std::invalid_argument("Box: lo/hi size mismatch");
    for (int i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i]))
        throw std::invalid_argument("Box: lower bound must be < upper bound");
  }
};

/// A point on (or near) the tangent space: position plus optional velocity
/// and acceleration. Vectors that are present share the same dimension.
struct State {
  Vec q;
  Vec qdot;   // may be empty
  Vec qddot;  // may be empty

  bool has_qdot() const { return qdot.size() > 0; }
  bool has_qddot() const { return qddot.size() > 0; }

  void validate() const {
    if (q.size() < 1) throw std::invalid_argument("State: q must be non-empty");
    if (has_qdot() && qdot.size() != q.size())
      throw std::invalid_argument("State: qdot dimension mismatch");
    if (has_qddot() && qddot.size() != q.size())
      throw std::invalid_argument("State: qddot dimension mismatch");
  }
};

/// Equal-step snapshot sequence of positions.
struct Trajectory {
  std::vector<Vec> positions;
  double h = 0.0;

  int length() const { return static_cast<int>(positions.size()); }
  int dim() const { return positions.empty() ? 0 : static_cast<int>(positions[0].size()); }

  void validate() const {
    if (positions.size() < 2)
      throw std::invalid_argument("Trajectory: needs at least 2 snapshots");
    if (h <= 0.0) throw std::invalid_argument("Trajectory: h must be > 0");
    for (const auto& p : positions)
      if (p.size() != positions[0].size())
        throw std::invalid_argument("Trajectory: inconsistent snapshot dimension");
  }
};

/// Collection of position-only trajectories sharing step size and dimension.
struct TrajectoryDataset {
  std::vector<Trajectory> trajectories;
  double h = 0.0;
  int n = 0;
  Box domain;  // sampling bounds on (q, qdot), dimension 2n

  /// Number of interior triples (q_{j-1}, q_j, q_{j+1}) available for training.
  int triple_count() const {
    int k = 0;
    for (const auto& t : trajectories) k += std::max(0, t.length() - 2);
    return k;
  }

  int pair_count() const {
    int k = 0;
    for (const auto& t : trajectories) k += std::max(0, t.length() - 1);
    return k;
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("TrajectoryDataset: n must be >= 1");
    if (h <= 0.0) throw std::invalid_argument("TrajectoryDataset: h must be > 0");
    for (const auto& t : trajectories) {
      t.validate();
      if (t.dim() != n || t.h != h)
        throw std::invalid_argument("TrajectoryDataset: trajectory metadata mismatch");
    }
  }
};

}  // namespace lsi
