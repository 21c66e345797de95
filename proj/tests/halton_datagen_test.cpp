#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "lsi/datagen.hpp"
#include "lsi/halton.hpp"
#include "test_util.hpp"

using namespace lsi;
using lsi::test::vec;

TEST_CASE("halton radical inverse basics") {
  CHECK(halton_point(1, 1)[0] == doctest::Approx(0.5));
  CHECK(halton_point(3, 1)[0] == doctest::Approx(0.75));
  const Vec p = halton_point(1, 2);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("halton sequence is deterministic and in the unit cube") {
  const auto a = halton_sequence(50, 4);
  const auto b = halton_sequence(50, 4);
  REQUIRE(a.size() == 50);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    for (int d = 0; d < 4; ++d) {
      CHECK(a[i][d] >= 0.0);
      CHECK(a[i][d] < 1.0);
    }
  }
}

TEST_CASE("stormer-verlet free motion is exact") {
  const AccelFn zero = [](const Vec&) { return Vec(Vec::Zero(2)); };
  const Vec q0 = vec({0.3, -0.2}), v0 = vec({0.5, 1.0});
  const auto states = stormer_verlet(zero, q0, v0, 0.05, 40);
  REQUIRE(states.size() == 41);
  for (int j = 0; j <= 40; ++j) {
    CHECK((states[j].first - (q0 + j * 0.05 * v0)).norm() <= 1e-14);
    CHECK((states[j].second - v0).norm() <= 1e-14);
  }
}

TEST_CASE("stormer-verlet small-angle pendulum period") {
  // in the small-angle limit the pendulum is harmonic with period 2π
  const BenchmarkSystem sys = BenchmarkSystem::pendulum();
  const double h = 1e-4;
  const auto states = stormer_verlet(sys, vec({1e-3}), vec({0.0}), h, 70000);
  double t_return = 0.0;
  for (size_t j = 1; j + 1 < states.size(); ++j) {
    if (states[j].first[0] > states[j - 1].first[0] &&
        states[j].first[0] >= states[j + 1].first[0]) {
      t_return = j * h;
      break;
    }
  }
  CHECK(t_return == doctest::Approx(2 * std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("stormer-verlet long-run energy oscillation stays bounded") {
  const BenchmarkSystem sys = BenchmarkSystem::pendulum();
  const auto states = stormer_verlet(sys, vec({0.3}), vec({0.0}), 1e-3, 100000);
  const double H0 = reference_energy(sys, states[0].first, states[0].second);
  double max_dev = 0.0;
  for (const auto& [q, v] : states)
    max_dev = std::max(max_dev, std::abs(reference_energy(sys, q, v) - H0));
  CHECK(max_dev < 1e-5);
}

TEST_CASE("generated dataset shapes match the experiment configurations") {
  SamplerSpec sampler;
  sampler.bounds.lo = vec({-std::numbers::pi, -1.2});
  sampler.bounds.hi = vec({std::numbers::pi, 1.2});
  sampler.count = 400;
  GroundTruthSpec gt;
  gt.h = 0.5;
  gt.steps_per_sample = 6;
  gt.h_fine = 0.5 / 500.0;
  const TrajectoryDataset ds = generate_dataset(BenchmarkSystem::pendulum(), sampler, gt);
  CHECK(ds.trajectories.size() == 400);
  CHECK(ds.n == 1);
  int positions = 0;
  for (const auto& t : ds.trajectories) {
    CHECK(t.length() == 6);
    positions += t.length();
  }
  CHECK(positions == 2400);

  SamplerSpec hh;
  hh.bounds.lo = Vec::Constant(4, -0.8);
  hh.bounds.hi = Vec::Constant(4, 0.8);
  hh.count = 200;
  GroundTruthSpec gt2;
  gt2.h = 0.1;
  gt2.steps_per_sample = 5;
  gt2.h_fine = 0.1 / 500.0;
  const TrajectoryDataset ds2 =
      generate_dataset(BenchmarkSystem::henon_heiles(0.8), hh, gt2);
  CHECK(ds2.trajectories.size() == 200);
  CHECK(ds2.n == 2);
  for (const auto& t : ds2.trajectories) CHECK(t.length() == 5);
}

TEST_CASE("minimal dataset yields exactly one interior triple") {
  const TrajectoryDataset ds = lsi::test::free_particle_dataset(1, 1, 3, 0.5);
  CHECK(ds.trajectories.size() == 1);
  CHECK(ds.triple_count() == 1);
}

TEST_CASE("subsampling with h_fine equal to h matches coarse integration") {
  SamplerSpec sampler;
  sampler.bounds.lo = vec({-1.0, -1.0});
  sampler.bounds.hi = vec({1.0, 1.0});
  sampler.count = 5;
  GroundTruthSpec gt;
  gt.h = 0.2;
  gt.steps_per_sample = 4;
  gt.h_fine = 0.2;
  const BenchmarkSystem sys = BenchmarkSystem::pendulum();
  const TrajectoryDataset ds = generate_dataset(sys, sampler, gt);
  const auto inits = halton_sequence(5, 2);
  for (int i = 0; i < 5; ++i) {
    const Vec x = scale_to_box(inits[i], sampler.bounds);
    const auto fine = stormer_verlet(sys, x.head(1), x.tail(1), 0.2, 3);
    for (int j = 0; j < 4; ++j)
      CHECK(ds.trajectories[i].positions[j] == fine[j].first);  // bit-for-bit
  }
}

TEST_CASE("generated trajectories conserve reference energy on the fine grid") {
  SamplerSpec sampler;
  sampler.bounds.lo = vec({-1.0, -1.0});
  sampler.bounds.hi = vec({1.0, 1.0});
  sampler.count = 8;
  GroundTruthSpec gt;
  gt.h = 0.5;
  gt.steps_per_sample = 6;
  gt.h_fine = 0.001;
  const BenchmarkSystem sys = BenchmarkSystem::pendulum();
  const auto inits = halton_sequence(sampler.count, 2);
  for (const auto& u : inits) {
    const Vec x = scale_to_box(u, sampler.bounds);
    const auto fine = stormer_verlet(sys, x.head(1), x.tail(1), gt.h_fine,
                                     (gt.steps_per_sample - 1) * gt.substeps());
    const double H0 = reference_energy(sys, fine[0].first, fine[0].second);
    for (const auto& [q, v] : fine)
      CHECK(std::abs(reference_energy(sys, q, v) - H0) < 100.0 * gt.h_fine * gt.h_fine);
  }
}

TEST_CASE("central differences are exact on low-degree samples") {
  Trajectory affine;
  affine.h = 0.5;
  for (int j = 0; j < 5; ++j) affine.positions.push_back(vec({1.0 + 0.3 * j}));
  const auto sa = central_differences(affine);
  REQUIRE(sa.size() == 3);
  for (const auto& s : sa) {
    CHECK(s.qdot[0] == doctest::Approx(0.3 / 0.5).epsilon(1e-14));
    CHECK(std::abs(s.qddot[0]) <= 1e-12);
  }

  Trajectory quad;
  quad.h = 0.25;
  for (int j = 0; j < 5; ++j) quad.positions.push_back(vec({j * j * 0.25 * 0.25}));
  const auto sq = central_differences(quad);
  for (const auto& s : sq) CHECK(s.qddot[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("central difference velocity error obeys the taylor bound") {
  Trajectory traj;
  const double h = 0.1;
  traj.h = h;
  for (int j = 0; j < 30; ++j) traj.positions.push_back(vec({std::sin(j * h)}));
  const auto states = central_differences(traj);
  for (size_t i = 0; i < states.size(); ++i) {
    const double t = (i + 1) * h;
    CHECK(std::abs(states[i].qdot[0] - std::cos(t)) <= h * h / 6.0 + 1e-12);
  }
}

TEST_CASE("central differences reject too-short trajectories") {
  Trajectory t;
  t.h = 0.1;
  t.positions = {vec({0.0}), vec({1.0})};
  CHECK_THROWS_AS(central_differences(t), std::invalid_argument);
}

TEST_CASE("halton velocity samples") {
  const auto one = halton_velocities(1, -1.2, 1.2);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(0.0));

  const auto three = halton_velocities(3, -1.2, 1.2);
  std::set<double> distinct(three.begin(), three.end());
  CHECK(distinct.size() == 3);
  for (double v : three) {
    CHECK(v > -1.2);
    CHECK(v < 1.2);
  }

  CHECK(halton_velocities(2400, -1.2, 1.2).size() == 2400);
}

TEST_CASE("ground truth spec validation") {
  GroundTruthSpec gt;
  gt.h = 0.5;
  gt.steps_per_sample = 5;
  gt.h_fine = 0.3;  // does not divide h
  CHECK_THROWS_AS(gt.validate(), std::invalid_argument);
  gt.h_fine = 0.1;
  CHECK_NOTHROW(gt.validate());
  gt.steps_per_sample = 2;
  CHECK_THROWS_AS(gt.validate(), std::invalid_argument);
}
