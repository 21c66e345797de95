#include "lsi/kernel.hpp"

#include <cmath>

#include "lsi/parallel.hpp"

namespace lsi {

namespace {
void check_pair(const Vec& x, const Vec& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("kernel: dimension mismatch between x and y");
}
}  // namespace

double kernel_value(const Vec& x, const Vec& y, const KernelParams& p) {
  check_pair(x, y);
  return p.c_k * std::exp(-(x - y).squaredNorm() / (p.epsilon * p.epsilon));
}

Vec kernel_grad_x(const Vec& x, const Vec& y, const KernelParams& p) {
  const double k = kernel_value(x, y, p);
  const double e2 = p.epsilon * p.epsilon;
  return (-2.0 / e2) * k * (x - y);
}

Mat kernel_hess_x(const Vec& x, const Vec& y, const KernelParams& p) {
  const double k = kernel_value(x, y, p);
  const double e2 = p.epsilon * p.epsilon;
  const Vec d = x - y;
  Mat h = (4.0 / (e2 * e2)) * k * (d * d.transpose());
  h.diagonal().array() -= 2.0 * k / e2;
  return h;
}

Mat gram_matrix_serial(const Mat& Z, const KernelParams& p) {
  const int m = static_cast<int>(Z.rows());
  Mat g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = kernel_value(Z.row(i), Z.row(j), p);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

Mat gram_matrix(const Mat& Z, const KernelParams& p) {
  const int m = static_cast<int>(Z.rows());
  Mat g(m, m);
  LSI_PRAGMA_OMP(parallel for schedule(dynamic, 16))
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = kernel_value(Z.row(i), Z.row(j), p);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

}  // namespace lsi
