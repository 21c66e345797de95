#pragma once

#include <functional>
#include <memory>

#include "lsi/domain.hpp"
#include "lsi/types.hpp"

namespace lsi {

/// Scalar field L(q, q̇) on the tangent space with partial derivatives up to
/// second order. The base class supplies central finite differences of
/// value() for every derivative; implementations with closed forms override
/// them and report analytic_derivatives() = true.
///
/// Mixed block convention: hess_qdot_q entry (a,b) = ∂²L/∂q̇^a∂q^b.
class LagrangianField {
 public:
  virtual ~LagrangianField() = default;

  virtual int dim() const = 0;
  virtual bool analytic_derivatives() const { return false; }
  virtual double value(const Vec& q, const Vec& qdot) const = 0;

  virtual Vec grad_q(const Vec& q, const Vec& qdot) const;
  virtual Vec grad_qdot(const Vec& q, const Vec& qdot) const;
  virtual Mat hess_qq(const Vec& q, const Vec& qdot) const;
  virtual Mat hess_qdot_q(const Vec& q, const Vec& qdot) const;
  virtual Mat hess_qdot_qdot(const Vec& q, const Vec& qdot) const;

  /// Both first partials at once; hot path of the Newton stepping loop.
  virtual void gradients(const Vec& q, const Vec& qdot, Vec& gq, Vec& gv) const {
    gq = grad_q(q, qdot);
    gv = grad_qdot(q, qdot);
  }

  /// All three second-partial blocks at once.
  virtual void hessian_blocks(const Vec& q, const Vec& qdot, Mat& A, Mat& C, Mat& M) const {
    A = hess_qq(q, qdot);
    C = hess_qdot_q(q, qdot);
    M = hess_qdot_qdot(q, qdot);
  }

 protected:
  static double fd_step(double coordinate);
};

using FieldPtr = std::shared_ptr<const LagrangianField>;

/// Field defined by plain callables; derivatives by finite differences
/// unless closed-form callables are supplied.
class CallableField : public LagrangianField {
 public:
  using ValueFn = std::function<double(const Vec&, const Vec&)>;

  CallableField(int n, ValueFn value) : n_(n), value_(std::move(value)) {}

  int dim() const override { return n_; }
  double value(const Vec& q, const Vec& qdot) const override { return value_(q, qdot); }

 private:
  int n_;
  ValueFn value_;
};

/// Reference Lagrangian of a benchmark system with analytic derivatives.
class ReferenceLagrangian : public LagrangianField {
 public:
  explicit ReferenceLagrangian(BenchmarkSystem sys) : sys_(sys) {}

  int dim() const override { return sys_.dim(); }
  bool analytic_derivatives() const override { return true; }
  double value(const Vec& q, const Vec& qdot) const override;
  Vec grad_q(const Vec& q, const Vec& qdot) const override;
  Vec grad_qdot(const Vec& q, const Vec& qdot) const override;
  Mat hess_qq(const Vec& q, const Vec& qdot) const override;
  Mat hess_qdot_q(const Vec& q, const Vec& qdot) const override;
  Mat hess_qdot_qdot(const Vec& q, const Vec& qdot) const override;

  const BenchmarkSystem& system() const { return sys_; }

 private:
  BenchmarkSystem sys_;
};

}  // namespace lsi
