#include "lsi/field.hpp"

#include <cmath>

namespace lsi {

double LagrangianField::fd_step(double coordinate) {
  return 1e-5 * std::max(1.0, std::abs(coordinate));
}

Vec LagrangianField::grad_q(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Vec g(n);
  Vec qp = q, qm = q;
  for (int a = 0; a < n; ++a) {
    const double s = fd_step(q[a]);
    qp[a] = q[a] + s;
    qm[a] = q[a] - s;
    g[a] = (value(qp, qdot) - value(qm, qdot)) / (2.0 * s);
    qp[a] = q[a];
    qm[a] = q[a];
  }
  return g;
}

Vec LagrangianField::grad_qdot(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Vec g(n);
  Vec vp = qdot, vm = qdot;
  for (int a = 0; a < n; ++a) {
    const double s = fd_step(qdot[a]);
    vp[a] = qdot[a] + s;
    vm[a] = qdot[a] - s;
    g[a] = (value(q, vp) - value(q, vm)) / (2.0 * s);
    vp[a] = qdot[a];
    vm[a] = qdot[a];
  }
  return g;
}

namespace {

// Four-point cross stencil for a mixed second derivative; the two bumped
// coordinates are addressed through mutable copies handed in by the caller.
double cross_stencil(const std::function<double(double, double)>& f, double sa, double sb) {
  return (f(sa, sb) - f(sa, -sb) - f(-sa, sb) + f(-sa, -sb)) / (4.0 * sa * sb);
}

}  // namespace

Mat LagrangianField::hess_qq(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Mat hout(n, n);
  const double f0 = value(q, qdot);
  for (int a = 0; a < n; ++a) {
    const double sa = fd_step(q[a]);
    {
      Vec qa = q;
      qa[a] = q[a] + sa;
      const double fp = value(qa, qdot);
      qa[a] = q[a] - sa;
      const double fm = value(qa, qdot);
      hout(a, a) = (fp - 2.0 * f0 + fm) / (sa * sa);
    }
    for (int b = a + 1; b < n; ++b) {
      const double sb = fd_step(q[b]);
      const double v = cross_stencil(
          [&](double da, double db) {
            Vec qq = q;
            qq[a] += da;
            qq[b] += db;
            return value(qq, qdot);
          },
          sa, sb);
      hout(a, b) = v;
      hout(b, a) = v;
    }
  }
  return hout;
}

Mat LagrangianField::hess_qdot_q(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Mat hout(n, n);
  for (int a = 0; a < n; ++a) {
    const double sa = fd_step(qdot[a]);
    for (int b = 0; b < n; ++b) {
      const double sb = fd_step(q[b]);
      hout(a, b) = cross_stencil(
          [&](double da, double db) {
            Vec qq = q, vv = qdot;
            vv[a] += da;
            qq[b] += db;
            return value(qq, vv);
          },
          sa, sb);
    }
  }
  return hout;
}

Mat LagrangianField::hess_qdot_qdot(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Mat hout(n, n);
  const double f0 = value(q, qdot);
  for (int a = 0; a < n; ++a) {
    const double sa = fd_step(qdot[a]);
    {
      Vec va = qdot;
      va[a] = qdot[a] + sa;
      const double fp = value(q, va);
      va[a] = qdot[a] - sa;
      const double fm = value(q, va);
      hout(a, a) = (fp - 2.0 * f0 + fm) / (sa * sa);
    }
    for (int b = a + 1; b < n; ++b) {
      const double sb = fd_step(qdot[b]);
      const double v = cross_stencil(
          [&](double da, double db) {
            Vec vv = qdot;
            vv[a] += da;
            vv[b] += db;
            return value(q, vv);
          },
          sa, sb);
      hout(a, b) = v;
      hout(b, a) = v;
    }
  }
  return hout;
}

double ReferenceLagrangian::value(const Vec& q, const Vec& qdot) const {
  return reference_lagrangian(sys_, q, qdot);
}

Vec ReferenceLagrangian::grad_q(const Vec& q, const Vec&) const {
  // ∂L/∂q = −∇V, which is exactly the acceleration field of both benchmarks.
  return reference_acceleration(sys_, q);
}

Vec ReferenceLagrangian::grad_qdot(const Vec&, const Vec& qdot) const { return qdot; }

Mat ReferenceLagrangian::hess_qq(const Vec& q, const Vec&) const {
  const int n = dim();
  Mat hout(n, n);
  if (sys_.kind == SystemKind::Pendulum) {
    hout(0, 0) = -std::cos(q[0]);
  } else {
    const double al = sys_.alpha;
    hout(0, 0) = -(1.0 + 2.0 * al * q[1]);
    hout(0, 1) = -2.0 * al * q[0];
    hout(1, 0) = hout(0, 1);
    hout(1, 1) = -(1.0 - 2.0 * al * q[1]);
  }
  return hout;
}

Mat ReferenceLagrangian::hess_qdot_q(const Vec&, const Vec&) const {
  return Mat::Zero(dim(), dim());
}

Mat ReferenceLagrangian::hess_qdot_qdot(const Vec&, const Vec&) const {
  return Mat::Identity(dim(), dim());
}

}  // namespace lsi
