// Timing comparison of the OpenMP kernels against their serial reference
// implementations, with agreement checks on the results.

#include <chrono>
#include <cstdio>
#include <memory>

#include "lsi/analysis.hpp"
#include "lsi/datagen.hpp"
#include "lsi/halton.hpp"
#include "lsi/kernel.hpp"
#include "lsi/learn.hpp"
#include "lsi/parallel.hpp"

using namespace lsi;

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   max diff %.3e\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms, max_diff);
}

}  // namespace

int main() {
  configure_threads_from_env();
  std::printf("threads: %d\n", thread_count());

  // Gram matrix on 1500 quasi-random points in R^4.
  {
    Box box;
    box.lo = Vec::Constant(4, -1.0);
    box.hi = Vec::Constant(4, 1.0);
    const auto pts = halton_sequence(1500, 4);
    Mat Z(pts.size(), 4);
    for (size_t i = 0; i < pts.size(); ++i)
      Z.row(static_cast<int>(i)) = scale_to_box(pts[i], box);
    const KernelParams p{5.0, 1.0};
    Mat Gs, Gp;
    const double ts = time_ms([&] { Gs = gram_matrix_serial(Z, p); });
    const double tp = time_ms([&] { Gp = gram_matrix(Z, p); });
    report("gram_matrix", ts, tp, (Gs - Gp).cwiseAbs().maxCoeff());
  }

  // Training system assembly on a pendulum dataset (400 trajectories).
  SamplerSpec sampler;
  sampler.bounds.lo = Vec::Constant(2, -1.2);
  sampler.bounds.hi = Vec::Constant(2, 1.2);
  sampler.count = 400;
  GroundTruthSpec gt;
  gt.h = 0.5;
  gt.steps_per_sample = 6;
  gt.h_fine = 0.01;
  const TrajectoryDataset ds = generate_dataset(BenchmarkSystem::pendulum(), sampler, gt);
  TrainConfig cfg;
  cfg.kernel.epsilon = 5.0;
  {
    LinearSystem Ss, Sp;
    const double ts = time_ms([&] { Ss = assemble_lsi_system_serial(ds, cfg); });
    const double tp = time_ms([&] { Sp = assemble_lsi_system(ds, cfg); });
    report("assemble_lsi_system", ts, tp, (Ss.A - Sp.A).cwiseAbs().maxCoeff());
  }

  // Grid evaluation of the alignment metric with a synthetic kernel model.
  {
    const Mat Z = lsi_centers(ds, Scheme::Midpoint, ds.h);
    Vec B(Z.rows());
    for (int i = 0; i < B.size(); ++i) B[i] = std::sin(0.1 * i) / Z.rows();
    auto model = std::make_shared<const KernelModel>(Z, B, cfg.kernel, Scheme::Midpoint,
                                                     ds.h, 1, ModelKind::Lsi);
    const ScalarField Ha = hamiltonian_field(model);
    const ScalarField Hb = reference_energy_field(BenchmarkSystem::pendulum());
    GridSpec grid;
    grid.base = Vec::Zero(2);
    grid.axes = {0, 1};
    grid.lo = {-1.2, -0.6};
    grid.hi = {1.2, 0.6};
    grid.res = {40, 40};
    NuResult rs, rp;
    const double ts = time_ms([&] { rs = nu_metric_serial(Ha, Hb, grid); });
    const double tp = time_ms([&] { rp = nu_metric(Ha, Hb, grid); });
    report("nu_metric", ts, tp, std::abs(rs.nu - rp.nu));
  }
  return 0;
}
