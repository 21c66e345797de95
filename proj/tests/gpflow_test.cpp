#include <doctest.h>

#include "lsi/gpflow.hpp"
#include "lsi/datagen.hpp"
#include "test_util.hpp"

using namespace lsi;
using lsi::test::vec;

TEST_CASE("flow-map regression interpolates its training samples") {
  TrajectoryDataset ds = lsi::test::small_pendulum_dataset(20);
  // a short length scale keeps the Gram system well conditioned, so the tiny
  // ridge leaves the training samples essentially interpolated
  const GpFlowModel m = train_gpflow(ds, 1e-10, {1.0});
  REQUIRE(m.X.rows() > 0);
  // reconstruct the input/target pairs the same way training does
  int checked = 0;
  for (const auto& traj : ds.trajectories) {
    const auto states = central_differences(traj);
    for (size_t j = 0; j + 1 < states.size(); ++j) {
      Vec x(2 * ds.n), y(2 * ds.n);
      x << states[j].q, states[j].qdot;
      y << states[j + 1].q, states[j + 1].qdot;
      CHECK((m.predict(x) - y).norm() <= 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("constant trajectories give a constant predictor") {
  Trajectory flat;
  flat.h = 0.5;
  for (int j = 0; j < 6; ++j) flat.positions.push_back(vec({0.4}));
  TrajectoryDataset ds;
  ds.h = 0.5;
  ds.n = 1;
  ds.domain.lo = vec({-1.0, -1.0});
  ds.domain.hi = vec({1.0, 1.0});
  ds.trajectories = {flat};
  const GpFlowModel m = train_gpflow(ds, 1e-10);
  for (double q : {0.4, 0.1, -0.7})
    CHECK((m.predict(vec({q, 0.0})) - m.predict(vec({q, 0.0}))).norm() == 0.0);
  // at the training state the fixed point is reproduced
  CHECK((m.predict(vec({0.4, 0.0})) - vec({0.4, 0.0})).norm() <= 1e-6);
}

TEST_CASE("length-two trajectories cannot train the flow map") {
  Trajectory t;
  t.h = 0.5;
  t.positions = {vec({0.0}), vec({0.5})};
  TrajectoryDataset ds;
  ds.h = 0.5;
  ds.n = 1;
  ds.domain.lo = vec({-1.0, -1.0});
  ds.domain.hi = vec({1.0, 1.0});
  ds.trajectories = {t};
  CHECK_THROWS_AS(train_gpflow(ds, 1e-10), std::invalid_argument);
}

TEST_CASE("hyperparameter selection picks the likeliest length scale") {
  TrajectoryDataset ds = lsi::test::small_pendulum_dataset(15);
  const GpFlowModel m = train_gpflow(ds, 1e-10, {1.0, 5.0});
  CHECK((m.params.epsilon == 1.0 || m.params.epsilon == 5.0));
  const GpFlowModel a = train_gpflow(ds, 1e-10, {m.params.epsilon});
  CHECK(a.log_marginal == doctest::Approx(m.log_marginal));
}
