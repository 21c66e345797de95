#include <doctest.h>

#include <cmath>
#include <random>

#include "lsi/kernel.hpp"
#include "test_util.hpp"

using namespace lsi;
using lsi::test::vec;

namespace {

Vec random_point(std::mt19937& rng, int dim, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec x(dim);
  for (int i = 0; i < dim; ++i) x[i] = u(rng);
  return x;
}

}  // namespace

TEST_CASE("kernel value basics") {
  KernelParams p{2.0, 3.0};
  const Vec x = vec({0.4, -0.7});
  CHECK(kernel_value(x, x, p) == doctest::Approx(3.0));

  KernelParams unit{5.0, 1.0};
  const Vec a = vec({0.0, 0.0});
  const Vec b = vec({3.0, 4.0});  // distance 5 = epsilon
  CHECK(kernel_value(a, b, unit) == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
  CHECK(kernel_value(a, b, unit) == doctest::Approx(0.3678794).epsilon(1e-6));

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec u = random_point(rng, 3, 2.0), v = random_point(rng, 3, 2.0);
    CHECK(kernel_value(u, v, p) == kernel_value(v, u, p));
  }
}

TEST_CASE("kernel derivatives at coincident points") {
  KernelParams p{1.5, 2.0};
  const Vec x = vec({0.1, 0.2, -0.3});
  const Vec g = kernel_grad_x(x, x, p);
  CHECK(g.norm() == 0.0);
  const Mat H = kernel_hess_x(x, x, p);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b)
        CHECK(H(a, b) == doctest::Approx(-2.0 * p.c_k / (p.epsilon * p.epsilon)));
      else
        CHECK(H(a, b) == 0.0);
    }
}

TEST_CASE("kernel derivatives match finite differences over 1000 draws") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> eps_draw(0.5, 5.0);
  for (int i = 0; i < 1000; ++i) {
    KernelParams p{eps_draw(rng), 1.0};
    const int dim = 1 + static_cast<int>(rng() % 4);
    const Vec x = random_point(rng, dim, 2.0), y = random_point(rng, dim, 2.0);
    const double s = 1e-5 * p.epsilon;
    const Vec g = kernel_grad_x(x, y, p);
    const Mat H = kernel_hess_x(x, y, p);
    for (int a = 0; a < dim; ++a) {
      Vec xp = x, xm = x;
      xp[a] += s;
      xm[a] -= s;
      const double fd = (kernel_value(xp, y, p) - kernel_value(xm, y, p)) / (2 * s);
      CHECK(std::abs(g[a] - fd) <= 1e-6 * std::max(std::abs(fd), 1.0) + 1e-10);
      const Vec fdg = (kernel_grad_x(xp, y, p) - kernel_grad_x(xm, y, p)) / (2 * s);
      for (int b = 0; b < dim; ++b)
        CHECK(std::abs(H(b, a) - fdg[b]) <= 1e-6 * std::max(std::abs(fdg[b]), 1.0) + 1e-10);
    }
  }
}

TEST_CASE("second derivative block is symmetric to rounding") {
  std::mt19937 rng(29);
  KernelParams p{1.7, 0.9};
  for (int i = 0; i < 50; ++i) {
    const Vec x = random_point(rng, 4, 2.0), y = random_point(rng, 4, 2.0);
    const Mat H = kernel_hess_x(x, y, p);
    CHECK((H - H.transpose()).norm() <= 1e-15);
  }
}

TEST_CASE("gram matrices are numerically positive semidefinite") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 5 + static_cast<int>(rng() % 46);
    const int dim = 1 + static_cast<int>(rng() % 4);
    Mat Z(m, dim);
    for (int i = 0; i < m; ++i) Z.row(i) = random_point(rng, dim, 1.5).transpose();
    KernelParams p{1.0 + 0.1 * trial, 1.0};
    const Mat G = gram_matrix(Z, p);
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("parallel and serial gram assembly agree") {
  std::mt19937 rng(53);
  Mat Z(120, 4);
  for (int i = 0; i < Z.rows(); ++i) Z.row(i) = random_point(rng, 4, 2.0).transpose();
  KernelParams p{2.5, 1.3};
  CHECK((gram_matrix(Z, p) - gram_matrix_serial(Z, p)).norm() == 0.0);
}

TEST_CASE("kernel input validation") {
  KernelParams p{1.0, 1.0};
  CHECK_THROWS_AS(kernel_value(vec({0.0}), vec({0.0, 1.0}), p), std::invalid_argument);
  KernelParams bad{-1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
