#include "lsi/datagen.hpp"

#include <cmath>

#include "lsi/halton.hpp"
#include "lsi/parallel.hpp"

namespace lsi {

int GroundTruthSpec::substeps() const {
  const double ratio = h / h_fine;
  const long long m = std::llround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
    throw std::invalid_argument("GroundTruthSpec: h_fine must divide h exactly");
  return static_cast<int>(m);
}

std::vector<std::pair<Vec, Vec>> stormer_verlet(const AccelFn& accel, const Vec& q0,
                                                const Vec& qdot0, double h_fine, int steps) {
  if (h_fine <= 0.0) throw std::invalid_argument("stormer_verlet: h_fine must be > 0");
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(steps + 1);
  Vec q = q0, v = qdot0;
  out.emplace_back(q, v);
  Vec a = accel(q);
  for (int j = 0; j < steps; ++j) {
    Vec v_half = v + 0.5 * h_fine * a;
    q += h_fine * v_half;
    a = accel(q);
    v = v_half + 0.5 * h_fine * a;
    out.emplace_back(q, v);
  }
  return out;
}

std::vector<std::pair<Vec, Vec>> stormer_verlet(const BenchmarkSystem& sys, const Vec& q0,
                                                const Vec& qdot0, double h_fine, int steps) {
  return stormer_verlet([&sys](const Vec& q) { return reference_acceleration(sys, q); }, q0,
                        qdot0, h_fine, steps);
}

TrajectoryDataset generate_dataset(const AccelFn& accel, int n, const SamplerSpec& sampler,
                                   const GroundTruthSpec& gt) {
  sampler.validate();
  gt.validate();
  if (sampler.bounds.dim() != 2 * n)
    throw std::invalid_argument("generate_dataset: sampler bounds must have dimension 2n");

  const int m = gt.substeps();
  const int fine_steps = m * (gt.steps_per_sample - 1);

  TrajectoryDataset ds;
  ds.h = gt.h;
  ds.n = n;
  ds.domain = sampler.bounds;
  ds.trajectories.resize(sampler.count);

  // Output ordering follows Halton index order regardless of execution order.
  LSI_PRAGMA_OMP(parallel for schedule(dynamic))
  for (int i = 0; i < sampler.count; ++i) {
    const Vec init = scale_to_box(halton_point(sampler.skip + i + 1, 2 * n), sampler.bounds);
    const Vec q0 = init.head(n);
    const Vec v0 = init.tail(n);
    const auto fine = stormer_verlet(accel, q0, v0, gt.h_fine, fine_steps);
    Trajectory traj;
    traj.h = gt.h;
    traj.positions.reserve(gt.steps_per_sample);
    for (int j = 0; j < gt.steps_per_sample; ++j) traj.positions.push_back(fine[j * m].first);
    ds.trajectories[i] = std::move(traj);
  }
  return ds;
}

TrajectoryDataset generate_dataset(const BenchmarkSystem& sys, const SamplerSpec& sampler,
                                   const GroundTruthSpec& gt) {
  return generate_dataset([&sys](const Vec& q) { return reference_acceleration(sys, q); },
                          sys.dim(), sampler, gt);
}

std::vector<State> central_differences(const Trajectory& traj) {
  traj.validate();
  if (traj.length() < 3)
    throw std::invalid_argument("central_differences: trajectory too short (need >= 3)");
  const double h = traj.h;
  std::vector<State> out;
  out.reserve(traj.length() - 2);
  for (int j = 1; j + 1 < traj.length(); ++j) {
    State s;
    s.q = traj.positions[j];
    s.qdot = (traj.positions[j + 1] - traj.positions[j - 1]) / (2.0 * h);
    s.qddot = (traj.positions[j + 1] - 2.0 * traj.positions[j] + traj.positions[j - 1]) / (h * h);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> halton_velocities(int count, double lo, double hi) {
  if (count < 1) throw std::invalid_argument("halton_velocities: count must be >= 1");
  std::vector<double> out;
  out.reserve(count);
  for (int i = 1; i <= count; ++i)
    out.push_back(lo + radical_inverse(i, 2) * (hi - lo));
  return out;
}

}  // namespace lsi
