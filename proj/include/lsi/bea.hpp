#pragma once

#include "lsi/discretize.hpp"

namespace lsi {

/// Direction of the order-2 correction. InvmodToExact recovers the exact
/// Lagrangian from a learned inverse modified one (adds the correction);
/// ExactToInvmod produces the inverse modified Lagrangian of a given exact
/// one (subtracts it). At order 2 the two are exact negatives, and
/// InvmodToExact applied to L equals the modified Lagrangian of L.
enum class BeaDirection { InvmodToExact, ExactToInvmod };

/// Order-2 correction of a Lagrangian under the chosen variational scheme.
/// With g = ∇_q L − D²_{q̇,q}L·q̇ the midpoint correction is
///   (h²/24) (gᵀ (D²_{q̇,q̇}L)⁻¹ g − q̇ᵀ D²_{q,q}L q̇)
/// and the trapezoidal one is
///   (h²/24) (gᵀ (D²_{q̇,q̇}L)⁻¹ g + 2 q̇ᵀ D²_{q,q}L q̇),
/// added or subtracted according to the direction.
///
/// Derivatives are the base field's derivatives plus finite differences of
/// the correction term alone, with a wider step than the generic fallback:
/// for learned models the correction value carries roundoff from large
/// cancelling kernel sums, and differencing the full value at a tight step
/// would drown the small correction derivatives in that noise.
class BeaCorrectedField final : public LagrangianField {
 public:
  BeaCorrectedField(FieldPtr base, Scheme scheme, double h, BeaDirection direction);

  int dim() const override { return base_->dim(); }
  double value(const Vec& q, const Vec& qdot) const override;
  Vec grad_q(const Vec& q, const Vec& qdot) const override;
  Vec grad_qdot(const Vec& q, const Vec& qdot) const override;
  Mat hess_qq(const Vec& q, const Vec& qdot) const override;
  Mat hess_qdot_q(const Vec& q, const Vec& qdot) const override;
  Mat hess_qdot_qdot(const Vec& q, const Vec& qdot) const override;

  const LagrangianField& base() const { return *base_; }
  double h() const { return h_; }
  Scheme scheme() const { return scheme_; }
  BeaDirection direction() const { return direction_; }

 private:
  FieldPtr base_;
  Scheme scheme_;
  double h_;
  BeaDirection direction_;
};

/// Order 0 returns the base field unchanged; order 2 wraps it in the
/// correction above. Other orders are rejected.
FieldPtr bea_correct(FieldPtr base, Scheme scheme, double h, int order,
                     BeaDirection direction);

/// Value of the order-2 correction term alone (sign per direction).
double bea_correction_term(const LagrangianField& base, Scheme scheme, double h,
                           BeaDirection direction, const Vec& q, const Vec& qdot);

/// Legendre energy H = q̇·∂L/∂q̇ − L of an arbitrary field.
double modified_hamiltonian(const LagrangianField& field, const Vec& q, const Vec& qdot);

}  // namespace lsi
