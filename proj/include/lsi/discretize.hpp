#pragma once

#include "lsi/field.hpp"

namespace lsi {

enum class Scheme { Midpoint, Trapezoidal };

struct NewtonOptions {
  double tol = 1e-12;  // residual norm
  int max_iter = 50;
  /// Fallback acceptance level for residuals that stagnate above tol, as
  /// happens when the field's evaluation noise floor exceeds tol (learned
  /// models with large cancelling kernel sums). 0 disables the fallback and
  /// makes stagnation an error.
  double accept_tol = 0.0;
};

struct NonConvergence : std::runtime_error {
  NonConvergence(int iterations, double residual_norm);
  int iterations;
  double residual_norm;
};

struct SingularJacobian : std::runtime_error {
  SingularJacobian() : std::runtime_error("discretize: singular Newton Jacobian") {}
};

/// Discrete Lagrangian L_Δ(q0, q1) of the chosen quadrature rule.
double discrete_lagrangian(const LagrangianField& L, Scheme scheme, const Vec& q0,
                           const Vec& q1, double h);

/// ∇₁L_Δ (slot = 1) or ∇₂L_Δ (slot = 2), by chain rule on the field's
/// first partials.
Vec grad_discrete_lagrangian(const LagrangianField& L, Scheme scheme, const Vec& q0,
                             const Vec& q1, double h, int slot);

/// Discrete Euler–Lagrange residual ∇₂L_Δ(q_prev, q) + ∇₁L_Δ(q, q_next).
Vec del_residual(const LagrangianField& L, Scheme scheme, const Vec& q_prev, const Vec& q,
                 const Vec& q_next, double h);

/// Jacobian of the DEL residual with respect to q_next (chain rule on the
/// field's second partials).
Mat del_jacobian(const LagrangianField& L, Scheme scheme, const Vec& q, const Vec& q_next,
                 double h);

/// Advance one step: solve the DEL for q_next by Newton, initial guess
/// 2q − q_prev.
Vec step(const LagrangianField& L, Scheme scheme, const Vec& q_prev, const Vec& q, double h,
         const NewtonOptions& opts = {});

/// Momentum-based start: p0 = ∂L_cont/∂q̇(q0, q̇0); q1 solves
/// ∇₁L_Δ(q0, q1) + p0 = 0 with L_Δ the discretisation of L_disc.
/// Returns (q1, p0).
std::pair<Vec, Vec> initial_step(const LagrangianField& L_disc, const LagrangianField& L_cont,
                                 const Vec& q0, const Vec& qdot0, double h, Scheme scheme,
                                 const NewtonOptions& opts = {});

/// Discrete conjugate momentum p = ∇₂L_Δ(q_prev, q).
Vec discrete_momentum(const LagrangianField& L, Scheme scheme, const Vec& q_prev, const Vec& q,
                      double h);

/// Solve ∂L_cont/∂q̇(q, q̇) = p for q̇ (Newton in q̇, initial guess p).
Vec recover_velocity(const LagrangianField& L_cont, const Vec& q, const Vec& p,
                     const NewtonOptions& opts = {});

/// Same with an explicit initial guess, for fields whose momentum is far
/// from the velocity (learned models with small mass scale).
Vec recover_velocity(const LagrangianField& L_cont, const Vec& q, const Vec& p,
                     const Vec& guess, const NewtonOptions& opts);

}  // namespace lsi
