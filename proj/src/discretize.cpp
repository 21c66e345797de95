#include "lsi/discretize.hpp"

#include <cmath>
#include <string>

namespace lsi {

NonConvergence::NonConvergence(int it, double res)
    : std::runtime_error("discretize: Newton did not converge after " + std::to_string(it) +
                         " iterations (residual " + std::to_string(res) + ")"),
      iterations(it),
      residual_norm(res) {}

namespace {

void check_step(const LagrangianField& L, const Vec& q0, const Vec& q1, double h) {
  if (h <= 0.0) throw std::invalid_argument("discretize: h must be > 0");
  if (q0.size() != L.dim() || q1.size() != L.dim())
    throw std::invalid_argument("discretize: position dimension mismatch");
}

/// Generic damped-free Newton on F with Jacobian J. Keeps the best iterate;
/// if the residual stagnates above tol the best iterate is accepted when it
/// clears accept_tol, otherwise the stall is an error.
Vec newton_solve(const std::function<Vec(const Vec&)>& F,
                 const std::function<Mat(const Vec&)>& J, Vec x, const NewtonOptions& opts) {
  Vec r = F(x);
  double rn = r.norm();
  Vec best_x = x;
  double best_rn = rn;
  int stalled = 0;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (rn <= opts.tol) return x;
    Eigen::PartialPivLU<Mat> lu(J(x));
    const Vec dx = lu.solve(-r);
    if (!dx.allFinite()) {
      if (best_rn <= opts.accept_tol) return best_x;
      throw SingularJacobian();
    }
    x += dx;
    r = F(x);
    rn = r.norm();
    if (!std::isfinite(rn)) break;
    if (rn < best_rn) {
      best_x = x;
      stalled = rn > 0.9 * best_rn ? stalled + 1 : 0;
      best_rn = rn;
    } else {
      ++stalled;
    }
    if (opts.accept_tol > 0.0 && stalled >= 5 && best_rn <= opts.accept_tol) return best_x;
  }
  if (rn <= opts.tol) return x;
  if (best_rn <= opts.accept_tol) return best_x;
  throw NonConvergence(it, best_rn);
}

}  // namespace

double discrete_lagrangian(const LagrangianField& L, Scheme scheme, const Vec& q0,
                           const Vec& q1, double h) {
  check_step(L, q0, q1, h);
  const Vec v = (q1 - q0) / h;
  if (scheme == Scheme::Midpoint) return h * L.value(0.5 * (q0 + q1), v);
  return 0.5 * h * (L.value(q0, v) + L.value(q1, v));
}

Vec grad_discrete_lagrangian(const LagrangianField& L, Scheme scheme, const Vec& q0,
                             const Vec& q1, double h, int slot) {
  check_step(L, q0, q1, h);
  if (slot != 1 && slot != 2)
    throw std::invalid_argument("grad_discrete_lagrangian: slot must be 1 or 2");
  const Vec v = (q1 - q0) / h;
  if (scheme == Scheme::Midpoint) {
    const Vec m = 0.5 * (q0 + q1);
    Vec gq, gv;
    L.gradients(m, v, gq, gv);
    return slot == 1 ? Vec(0.5 * h * gq - gv) : Vec(0.5 * h * gq + gv);
  }
  const Vec gv_sum = 0.5 * (L.grad_qdot(q0, v) + L.grad_qdot(q1, v));
  if (slot == 1) return 0.5 * h * L.grad_q(q0, v) - gv_sum;
  return 0.5 * h * L.grad_q(q1, v) + gv_sum;
}

Vec del_residual(const LagrangianField& L, Scheme scheme, const Vec& q_prev, const Vec& q,
                 const Vec& q_next, double h) {
  return grad_discrete_lagrangian(L, scheme, q_prev, q, h, 2) +
         grad_discrete_lagrangian(L, scheme, q, q_next, h, 1);
}

Mat del_jacobian(const LagrangianField& L, Scheme scheme, const Vec& q, const Vec& q_next,
                 double h) {
  check_step(L, q, q_next, h);
  const Vec v = (q_next - q) / h;
  if (scheme == Scheme::Midpoint) {
    const Vec m = 0.5 * (q + q_next);
    Mat A, C, M;  // C entry (a,b) = ∂²L/∂q̇a∂qb
    L.hessian_blocks(m, v, A, C, M);
    return 0.25 * h * A + 0.5 * C.transpose() - 0.5 * C - M / h;
  }
  const Mat C0t = L.hess_qdot_q(q, v).transpose();
  const Mat C1 = L.hess_qdot_q(q_next, v);
  const Mat Msum = L.hess_qdot_qdot(q, v) + L.hess_qdot_qdot(q_next, v);
  return 0.5 * C0t - 0.5 * C1 - Msum / (2.0 * h);
}

Vec step(const LagrangianField& L, Scheme scheme, const Vec& q_prev, const Vec& q, double h,
         const NewtonOptions& opts) {
  const Vec left = grad_discrete_lagrangian(L, scheme, q_prev, q, h, 2);
  return newton_solve(
      [&](const Vec& x) -> Vec { return left + grad_discrete_lagrangian(L, scheme, q, x, h, 1); },
      [&](const Vec& x) -> Mat { return del_jacobian(L, scheme, q, x, h); },
      Vec(2.0 * q - q_prev), opts);
}

std::pair<Vec, Vec> initial_step(const LagrangianField& L_disc, const LagrangianField& L_cont,
                                 const Vec& q0, const Vec& qdot0, double h, Scheme scheme,
                                 const NewtonOptions& opts) {
  const Vec p0 = L_cont.grad_qdot(q0, qdot0);
  const Vec q1 = newton_solve(
      [&](const Vec& x) -> Vec {
        return grad_discrete_lagrangian(L_disc, scheme, q0, x, h, 1) + p0;
      },
      [&](const Vec& x) -> Mat { return del_jacobian(L_disc, scheme, q0, x, h); },
      Vec(q0 + h * qdot0), opts);
  return {q1, p0};
}

Vec discrete_momentum(const LagrangianField& L, Scheme scheme, const Vec& q_prev, const Vec& q,
                      double h) {
  return grad_discrete_lagrangian(L, scheme, q_prev, q, h, 2);
}

Vec recover_velocity(const LagrangianField& L_cont, const Vec& q, const Vec& p,
                     const NewtonOptions& opts) {
  return recover_velocity(L_cont, q, p, p, opts);
}

Vec recover_velocity(const LagrangianField& L_cont, const Vec& q, const Vec& p,
                     const Vec& guess, const NewtonOptions& opts) {
  if (p.size() != L_cont.dim())
    throw std::invalid_argument("recover_velocity: momentum dimension mismatch");
  return newton_solve(
      [&](const Vec& v) -> Vec { return L_cont.grad_qdot(q, v) - p; },
      [&](const Vec& v) -> Mat { return L_cont.hess_qdot_qdot(q, v); }, guess, opts);
}

}  // namespace lsi
