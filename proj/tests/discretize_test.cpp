#include <doctest.h>

#include <cmath>
#include <random>

#include "lsi/discretize.hpp"
#include "lsi/datagen.hpp"
#include "lsi/field.hpp"
#include "test_util.hpp"

using namespace lsi;
using lsi::test::vec;

namespace {

/// ½ m ‖q̇‖² with analytic derivatives, for the closed-form examples.
class FreeField final : public LagrangianField {
 public:
  FreeField(int n, double m) : n_(n), m_(m) {}
  int dim() const override { return n_; }
  bool analytic_derivatives() const override { return true; }
  double value(const Vec&, const Vec& qdot) const override {
    return 0.5 * m_ * qdot.squaredNorm();
  }
  Vec grad_q(const Vec&, const Vec&) const override { return Vec::Zero(n_); }
  Vec grad_qdot(const Vec&, const Vec& qdot) const override { return m_ * qdot; }
  Mat hess_qq(const Vec&, const Vec&) const override { return Mat::Zero(n_, n_); }
  Mat hess_qdot_q(const Vec&, const Vec&) const override { return Mat::Zero(n_, n_); }
  Mat hess_qdot_qdot(const Vec&, const Vec&) const override {
    return m_ * Mat::Identity(n_, n_);
  }

 private:
  int n_;
  double m_;
};

/// ½q̇² − ½q² with analytic derivatives (harmonic oscillator).
class HarmonicField final : public LagrangianField {
 public:
  int dim() const override { return 1; }
  bool analytic_derivatives() const override { return true; }
  double value(const Vec& q, const Vec& qdot) const override {
    return 0.5 * qdot[0] * qdot[0] - 0.5 * q[0] * q[0];
  }
  Vec grad_q(const Vec& q, const Vec&) const override { return -q; }
  Vec grad_qdot(const Vec&, const Vec& qdot) const override { return qdot; }
  Mat hess_qq(const Vec&, const Vec&) const override { return -Mat::Identity(1, 1); }
  Mat hess_qdot_q(const Vec&, const Vec&) const override { return Mat::Zero(1, 1); }
  Mat hess_qdot_qdot(const Vec&, const Vec&) const override { return Mat::Identity(1, 1); }
};

}  // namespace

TEST_CASE("discrete lagrangian quadrature values") {
  const CallableField constant(1, [](const Vec&, const Vec&) { return 1.0; });
  const double h = 0.37;
  CHECK(discrete_lagrangian(constant, Scheme::Midpoint, vec({0.1}), vec({0.9}), h) ==
        doctest::Approx(h).epsilon(1e-14));
  CHECK(discrete_lagrangian(constant, Scheme::Trapezoidal, vec({0.1}), vec({0.9}), h) ==
        doctest::Approx(h).epsilon(1e-14));

  const FreeField free1(1, 1.0);
  const double q0 = 0.2, q1 = 1.4;
  CHECK(discrete_lagrangian(free1, Scheme::Midpoint, vec({q0}), vec({q1}), h) ==
        doctest::Approx((q1 - q0) * (q1 - q0) / (2 * h)).epsilon(1e-14));

  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  CHECK(discrete_lagrangian(pend, Scheme::Midpoint, vec({0.0}), vec({0.5}), 0.5) ==
        doctest::Approx(0.5 * (0.5 + std::cos(0.25))).epsilon(1e-14));
}

TEST_CASE("discrete lagrangian slot gradients") {
  const FreeField free1(1, 1.0);
  const double h = 0.5, q0 = 0.3, q1 = 1.1;
  CHECK(grad_discrete_lagrangian(free1, Scheme::Midpoint, vec({q0}), vec({q1}), h, 1)[0] ==
        doctest::Approx(-(q1 - q0) / h).epsilon(1e-14));
  CHECK(grad_discrete_lagrangian(free1, Scheme::Midpoint, vec({q0}), vec({q1}), h, 2)[0] ==
        doctest::Approx((q1 - q0) / h).epsilon(1e-14));

  // finite differences of the discrete lagrangian as oracle
  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Scheme scheme : {Scheme::Midpoint, Scheme::Trapezoidal}) {
    for (int i = 0; i < 25; ++i) {
      const Vec a = vec({u(rng)}), b = vec({u(rng)});
      const double s = 1e-6;
      const double fd1 = (discrete_lagrangian(pend, scheme, vec({a[0] + s}), b, h) -
                          discrete_lagrangian(pend, scheme, vec({a[0] - s}), b, h)) /
                         (2 * s);
      const double fd2 = (discrete_lagrangian(pend, scheme, a, vec({b[0] + s}), h) -
                          discrete_lagrangian(pend, scheme, a, vec({b[0] - s}), h)) /
                         (2 * s);
      CHECK(grad_discrete_lagrangian(pend, scheme, a, b, h, 1)[0] ==
            doctest::Approx(fd1).epsilon(1e-6));
      CHECK(grad_discrete_lagrangian(pend, scheme, a, b, h, 2)[0] ==
            doctest::Approx(fd2).epsilon(1e-6));
    }
  }

  // the two slots sum to h ∇_q L(q, 0) on a coincident pair (midpoint)
  const Vec q = vec({0.7});
  const Vec sum = grad_discrete_lagrangian(pend, Scheme::Midpoint, q, q, h, 1) +
                  grad_discrete_lagrangian(pend, Scheme::Midpoint, q, q, h, 2);
  CHECK(sum[0] == doctest::Approx(h * -std::sin(0.7)).epsilon(1e-12));
}

TEST_CASE("del residual special cases") {
  const FreeField free2(2, 1.0);
  const Vec qp = vec({0.1, -0.4}), q = vec({0.5, 0.2});
  const Vec qn = 2 * q - qp;
  CHECK(del_residual(free2, Scheme::Midpoint, qp, q, qn, 0.3).norm() <= 1e-14);

  const CallableField constant(2, [](const Vec&, const Vec&) { return 3.0; });
  CHECK(del_residual(constant, Scheme::Midpoint, qp, q, qn, 0.3).norm() <= 1e-9);
}

TEST_CASE("del residual on exact triples converges at third order") {
  const BenchmarkSystem sys = BenchmarkSystem::pendulum();
  const ReferenceLagrangian pend(sys);
  std::vector<double> hs{0.4, 0.2, 0.1, 0.05}, errs;
  for (double h : hs) {
    Vec q1 = vec({0.3}), v1 = vec({0.25});
    Vec q2 = q1, v2 = v1;
    lsi::test::rk4_flow(sys, q1, v1, h, 2000);
    lsi::test::rk4_flow(sys, q2, v2, 2 * h, 4000);
    errs.push_back(del_residual(pend, Scheme::Midpoint, vec({0.3}), q1, q2, h).norm());
  }
  CHECK(lsi::test::observed_order(hs, errs) >= 2.7);
}

TEST_CASE("newton step matches closed forms") {
  const FreeField free1(1, 1.0);
  const Vec qp = vec({0.2}), q = vec({0.9});
  CHECK(step(free1, Scheme::Midpoint, qp, q, 0.5)[0] ==
        doctest::Approx(1.6).epsilon(1e-13));

  // harmonic oscillator: the midpoint discrete equations are linear, solved
  // by hand as oracle
  const HarmonicField harm;
  const double h = 0.4, a = 0.15, b = 0.55;
  const double expected =
      ((2 * b - a) / h - (h / 4) * (a + 2 * b)) / (1.0 / h + h / 4.0);
  CHECK(step(harm, Scheme::Midpoint, vec({a}), vec({b}), h)[0] ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("momentum start and discrete momentum") {
  const FreeField free2(2, 1.0);
  const Vec q0 = vec({0.1, 0.6}), v0 = vec({-0.4, 0.2});
  const double h = 0.25;
  const auto [q1, p0] = initial_step(free2, free2, q0, v0, h, Scheme::Midpoint);
  CHECK((q1 - (q0 + h * v0)).norm() <= 1e-13);
  CHECK((p0 - v0).norm() == 0.0);
  CHECK((discrete_momentum(free2, Scheme::Midpoint, q0, q1, h) - v0).norm() <= 1e-13);

  // mechanical lagrangian at rest has zero conjugate momentum
  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  const auto [q1p, p0p] =
      initial_step(pend, pend, vec({0.3}), vec({0.0}), 0.5, Scheme::Midpoint);
  CHECK(std::abs(p0p[0]) == 0.0);
}

TEST_CASE("velocity recovery inverts the legendre transform") {
  const FreeField unit(1, 1.0);
  CHECK(recover_velocity(unit, vec({0.0}), vec({0.8}))[0] ==
        doctest::Approx(0.8).epsilon(1e-13));
  for (double m : {0.5, 2.0}) {
    const FreeField scaled(1, m);
    CHECK(recover_velocity(scaled, vec({0.0}), vec({0.8}))[0] ==
          doctest::Approx(0.8 / m).epsilon(1e-12));
  }

  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const Vec q = vec({u(rng)}), qdot = vec({u(rng)});
    const Vec p = pend.grad_qdot(q, qdot);
    CHECK(std::abs(recover_velocity(pend, q, p)[0] - qdot[0]) <= 1e-10);
  }
}

TEST_CASE("del residual stays at newton tolerance along stepped trajectories") {
  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  const double h = 0.5;
  auto [q1, p0] = initial_step(pend, pend, vec({0.3}), vec({0.0}), h, Scheme::Midpoint);
  std::vector<Vec> traj{vec({0.3}), q1};
  for (int j = 1; j < 200; ++j) {
    const Vec qn = step(pend, Scheme::Midpoint, traj[j - 1], traj[j], h);
    CHECK(del_residual(pend, Scheme::Midpoint, traj[j - 1], traj[j], qn, h).norm() <= 1e-12);
    // momentum consistency: left-pair momentum equals minus the right slot
    const Vec left = grad_discrete_lagrangian(pend, Scheme::Midpoint, traj[j - 1], traj[j], h, 2);
    const Vec right = grad_discrete_lagrangian(pend, Scheme::Midpoint, traj[j], qn, h, 1);
    CHECK((left + right).norm() <= 1e-12);
    traj.push_back(qn);
  }
}

TEST_CASE("midpoint scheme has global order two") {
  const BenchmarkSystem sys = BenchmarkSystem::pendulum();
  const ReferenceLagrangian pend(sys);
  const double T = 10.0;
  std::vector<double> hs{0.2, 0.1, 0.05, 0.025}, errs;
  for (double h : hs) {
    const int steps = static_cast<int>(std::llround(T / h));
    auto [q1, p0] = initial_step(pend, pend, vec({0.3}), vec({0.0}), h, Scheme::Midpoint);
    Vec qp = vec({0.3}), q = q1;
    for (int j = 1; j < steps; ++j) {
      const Vec qn = step(pend, Scheme::Midpoint, qp, q, h);
      qp = q;
      q = qn;
    }
    Vec qe = vec({0.3}), ve = vec({0.0});
    lsi::test::rk4_flow(sys, qe, ve, T, 20000);
    errs.push_back((q - qe).norm());
  }
  const double order = lsi::test::observed_order(hs, errs);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
}

TEST_CASE("midpoint map is time reversible") {
  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  const double h = 0.5;
  const Vec qp = vec({0.3}), q = vec({0.45});
  const Vec qn = step(pend, Scheme::Midpoint, qp, q, h);
  const Vec back = step(pend, Scheme::Midpoint, qn, q, h);
  CHECK((back - qp).norm() <= 1e-10);
}

TEST_CASE("newton failure surfaces as a typed error") {
  const ReferenceLagrangian pend(BenchmarkSystem::pendulum());
  NewtonOptions strict;
  strict.tol = 1e-16;
  strict.max_iter = 1;
  try {
    step(pend, Scheme::Midpoint, vec({0.3}), vec({1.2}), 0.5, strict);
    // a single iteration cannot reach 1e-16 from the extrapolated guess
    CHECK(false);
  } catch (const NonConvergence& e) {
    CHECK(e.iterations == 1);
    CHECK(e.residual_norm > 1e-16);
  }
  CHECK_THROWS_AS(
      grad_discrete_lagrangian(ReferenceLagrangian(BenchmarkSystem::pendulum()),
                               Scheme::Midpoint, vec({0.0}), vec({0.1}), 0.5, 3),
      std::invalid_argument);
}
