#include "lsi/domain.hpp"

#include <cmath>

namespace lsi {

namespace {
void check_dim(const BenchmarkSystem& sys, const Vec& v, const char* what) {
  if (v.size() != sys.dim())
    throw std::invalid_argument(std::string("BenchmarkSystem: ") + what + " dimension mismatch");
}
}  // namespace

BenchmarkSystem BenchmarkSystem::henon_heiles(double alpha) {
  if (alpha == 0.0)
    throw std::invalid_argument("BenchmarkSystem: Hénon–Heiles needs alpha != 0");
  return {SystemKind::HenonHeiles, alpha};
}

double reference_potential(const BenchmarkSystem& sys, const Vec& q) {
  check_dim(sys, q, "q");
  if (sys.kind == SystemKind::Pendulum) return -std::cos(q[0]);
  const double q1 = q[0], q2 = q[1];
  return 0.5 * q.squaredNorm() + sys.alpha * (q1 * q1 * q2 - q2 * q2 * q2 / 3.0);
}

double reference_lagrangian(const BenchmarkSystem& sys, const Vec& q, const Vec& qdot) {
  check_dim(sys, qdot, "qdot");
  return 0.5 * qdot.squaredNorm() - reference_potential(sys, q);
}

double reference_energy(const BenchmarkSystem& sys, const Vec& q, const Vec& qdot) {
  check_dim(sys, qdot, "qdot");
  return 0.5 * qdot.squaredNorm() + reference_potential(sys, q);
}

Vec reference_acceleration(const BenchmarkSystem& sys, const Vec& q) {
  check_dim(sys, q, "q");
  Vec a(sys.dim());
  if (sys.kind == SystemKind::Pendulum) {
    a[0] = -std::sin(q[0]);
  } else {
    const double q1 = q[0], q2 = q[1], al = sys.alpha;
    a[0] = -(q1 + 2.0 * al * q1 * q2);
    a[1] = -(q2 + al * (q1 * q1 - q2 * q2));
  }
  return a;
}

}  // namespace lsi
