#include "lsi/bea.hpp"

namespace lsi {

BeaCorrectedField::BeaCorrectedField(FieldPtr base, Scheme scheme, double h,
                                     BeaDirection direction)
    : base_(std::move(base)), scheme_(scheme), h_(h), direction_(direction) {
  if (!base_) throw std::invalid_argument("BeaCorrectedField: null base field");
  if (h_ <= 0.0) throw std::invalid_argument("BeaCorrectedField: h must be > 0");
}

double bea_correction_term(const LagrangianField& base, Scheme scheme, double h,
                           BeaDirection direction, const Vec& q, const Vec& qdot) {
  Vec gq, gv;
  base.gradients(q, qdot, gq, gv);
  Mat A, C, M;
  base.hessian_blocks(q, qdot, A, C, M);

  const Vec g = gq - C * qdot;
  Eigen::PartialPivLU<Mat> lu(M);
  const Vec Minv_g = lu.solve(g);
  if (!Minv_g.allFinite())
    throw std::runtime_error("bea_correct: singular velocity Hessian at evaluation point");

  const double quad_g = g.dot(Minv_g);
  const double quad_a = qdot.dot(A * qdot);
  const double corr = scheme == Scheme::Midpoint
                          ? (h * h / 24.0) * (quad_g - quad_a)
                          : (h * h / 24.0) * (quad_g + 2.0 * quad_a);
  return direction == BeaDirection::InvmodToExact ? corr : -corr;
}

double BeaCorrectedField::value(const Vec& q, const Vec& qdot) const {
  return base_->value(q, qdot) +
         bea_correction_term(*base_, scheme_, h_, direction_, q, qdot);
}

namespace {

double corr_fd_step(double coordinate) {
  return 1e-4 * std::max(1.0, std::abs(coordinate));
}

}  // namespace

// Derivatives below: analytic base derivative plus a central difference of
// the correction term on the perturbed slot. slot 0 perturbs q, slot 1 q̇.

Vec BeaCorrectedField::grad_q(const Vec& q, const Vec& qdot) const {
  Vec g = base_->grad_q(q, qdot);
  Vec qp = q, qm = q;
  for (int a = 0; a < q.size(); ++a) {
    const double s = corr_fd_step(q[a]);
    qp[a] = q[a] + s;
    qm[a] = q[a] - s;
    g[a] += (bea_correction_term(*base_, scheme_, h_, direction_, qp, qdot) -
             bea_correction_term(*base_, scheme_, h_, direction_, qm, qdot)) /
            (2.0 * s);
    qp[a] = q[a];
    qm[a] = q[a];
  }
  return g;
}

Vec BeaCorrectedField::grad_qdot(const Vec& q, const Vec& qdot) const {
  Vec g = base_->grad_qdot(q, qdot);
  Vec vp = qdot, vm = qdot;
  for (int a = 0; a < qdot.size(); ++a) {
    const double s = corr_fd_step(qdot[a]);
    vp[a] = qdot[a] + s;
    vm[a] = qdot[a] - s;
    g[a] += (bea_correction_term(*base_, scheme_, h_, direction_, q, vp) -
             bea_correction_term(*base_, scheme_, h_, direction_, q, vm)) /
            (2.0 * s);
    vp[a] = qdot[a];
    vm[a] = qdot[a];
  }
  return g;
}

Mat BeaCorrectedField::hess_qq(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Mat H = base_->hess_qq(q, qdot);
  const auto corr = [&](const Vec& qq) {
    return bea_correction_term(*base_, scheme_, h_, direction_, qq, qdot);
  };
  const double c0 = corr(q);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      const double sa = corr_fd_step(q[a]), sb = corr_fd_step(q[b]);
      Vec x = q;
      double d;
      if (a == b) {
        x[a] = q[a] + sa;
        const double cp = corr(x);
        x[a] = q[a] - sa;
        d = (cp - 2.0 * c0 + corr(x)) / (sa * sa);
      } else {
        x[a] = q[a] + sa;
        x[b] = q[b] + sb;
        const double cpp = corr(x);
        x[b] = q[b] - sb;
        const double cpm = corr(x);
        x[a] = q[a] - sa;
        const double cmm = corr(x);
        x[b] = q[b] + sb;
        const double cmp = corr(x);
        d = (cpp - cpm - cmp + cmm) / (4.0 * sa * sb);
      }
      H(a, b) += d;
      if (a != b) H(b, a) += d;
    }
  return H;
}

Mat BeaCorrectedField::hess_qdot_q(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Mat H = base_->hess_qdot_q(q, qdot);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double sa = corr_fd_step(qdot[a]), sb = corr_fd_step(q[b]);
      Vec qq = q, vv = qdot;
      vv[a] = qdot[a] + sa;
      qq[b] = q[b] + sb;
      const double cpp = bea_correction_term(*base_, scheme_, h_, direction_, qq, vv);
      qq[b] = q[b] - sb;
      const double cpm = bea_correction_term(*base_, scheme_, h_, direction_, qq, vv);
      vv[a] = qdot[a] - sa;
      const double cmm = bea_correction_term(*base_, scheme_, h_, direction_, qq, vv);
      qq[b] = q[b] + sb;
      const double cmp = bea_correction_term(*base_, scheme_, h_, direction_, qq, vv);
      H(a, b) += (cpp - cpm - cmp + cmm) / (4.0 * sa * sb);
    }
  return H;
}

Mat BeaCorrectedField::hess_qdot_qdot(const Vec& q, const Vec& qdot) const {
  const int n = dim();
  Mat H = base_->hess_qdot_qdot(q, qdot);
  const auto corr = [&](const Vec& vv) {
    return bea_correction_term(*base_, scheme_, h_, direction_, q, vv);
  };
  const double c0 = corr(qdot);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      const double sa = corr_fd_step(qdot[a]), sb = corr_fd_step(qdot[b]);
      Vec v = qdot;
      double d;
      if (a == b) {
        v[a] = qdot[a] + sa;
        const double cp = corr(v);
        v[a] = qdot[a] - sa;
        d = (cp - 2.0 * c0 + corr(v)) / (sa * sa);
      } else {
        v[a] = qdot[a] + sa;
        v[b] = qdot[b] + sb;
        const double cpp = corr(v);
        v[b] = qdot[b] - sb;
        const double cpm = corr(v);
        v[a] = qdot[a] - sa;
        const double cmm = corr(v);
        v[b] = qdot[b] + sb;
        const double cmp = corr(v);
        d = (cpp - cpm - cmp + cmm) / (4.0 * sa * sb);
      }
      H(a, b) += d;
      if (a != b) H(b, a) += d;
    }
  return H;
}

FieldPtr bea_correct(FieldPtr base, Scheme scheme, double h, int order,
                     BeaDirection direction) {
  if (order == 0) return base;
  if (order != 2) throw std::invalid_argument("bea_correct: order must be 0 or 2");
  return std::make_shared<BeaCorrectedField>(std::move(base), scheme, h, direction);
}

double modified_hamiltonian(const LagrangianField& field, const Vec& q, const Vec& qdot) {
  return qdot.dot(field.grad_qdot(q, qdot)) - field.value(q, qdot);
}

}  // namespace lsi
