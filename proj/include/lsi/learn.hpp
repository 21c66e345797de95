#pragma once

#include <optional>

#include "lsi/discretize.hpp"
#include "lsi/kernel.hpp"
#include "lsi/types.hpp"

namespace lsi {

enum class ModelKind { Lsi, Lgp, LgpExact };

struct TrainConfig {
  KernelParams kernel;
  Scheme scheme = Scheme::Midpoint;
  double c = 1.0;       // non-triviality constant, must be nonzero
  Vec norm_point;       // normalisation point in R^{2n}; empty = origin
  double rcond = 1e-8;  // relative singular-value cutoff

  void validate(int n) const;
  Vec normalisation_point(int n) const;
};

/// Trained kernel representation of a Lagrangian on TQ. The coefficient
/// vector B stands for k(Z,Z)^{-1} L(Z); evaluation is k(x,Z)·B and
/// derivatives are the corresponding kernel-derivative contractions.
class KernelModel final : public LagrangianField {
 public:
  struct Diagnostics {
    int rank = 0;
    double residual = 0.0;           // ‖A·B − b‖₂ of the training system
    double del_residual_inf = 0.0;   // max |(A·B)_i| over the DEL rows
  };

  struct TrainingMeta {
    double c = 1.0;   // non-triviality constant used in training
    Vec norm_point;   // normalisation point in R^{2n}
  };

  KernelModel(Mat Z, Vec B, KernelParams params, Scheme scheme, double h, int n,
              ModelKind kind);

  int dim() const override { return n_; }
  bool analytic_derivatives() const override { return true; }
  double value(const Vec& q, const Vec& qdot) const override;
  Vec grad_q(const Vec& q, const Vec& qdot) const override;
  Vec grad_qdot(const Vec& q, const Vec& qdot) const override;
  Mat hess_qq(const Vec& q, const Vec& qdot) const override;
  Mat hess_qdot_q(const Vec& q, const Vec& qdot) const override;
  Mat hess_qdot_qdot(const Vec& q, const Vec& qdot) const override;
  void gradients(const Vec& q, const Vec& qdot, Vec& gq, Vec& gv) const override;
  void hessian_blocks(const Vec& q, const Vec& qdot, Mat& A, Mat& C, Mat& M) const override;

  // evaluation on the flat phase-space point x = (q, qdot) ∈ R^{2n}
  double eval(const Vec& x) const;
  Vec grad(const Vec& x) const;
  Mat hess(const Vec& x) const;

  const Mat& centers() const { return Z_; }
  const Vec& coefficients() const { return B_; }
  const KernelParams& params() const { return params_; }
  Scheme scheme() const { return scheme_; }
  double h() const { return h_; }
  ModelKind kind() const { return kind_; }
  Diagnostics& diagnostics() { return diag_; }
  const Diagnostics& diagnostics() const { return diag_; }
  TrainingMeta& meta() { return meta_; }
  const TrainingMeta& meta() const { return meta_; }

 private:
  Vec flat(const Vec& q, const Vec& qdot) const;

  Mat Z_;  // M x 2n, row-major points
  Vec B_;
  KernelParams params_;
  Scheme scheme_;
  double h_;
  int n_;
  ModelKind kind_;
  Diagnostics diag_;
  TrainingMeta meta_;
};

struct LinearSystem {
  Mat A;
  Vec b;
  int del_rows = 0;  // leading rows that encode DEL/EL conditions
};

struct MinNormSolution {
  Vec x;
  int rank = 0;
  double residual = 0.0;
};

/// Evaluation points carrying maximal information for the given scheme.
/// Midpoint: one (midpoint, difference quotient) per consecutive pair, in
/// dataset order, duplicates kept. Trapezoidal: both endpoints paired with
/// the difference quotient, exact duplicates removed.
Mat lsi_centers(const TrajectoryDataset& ds, Scheme scheme, double h);

/// DEL rows (one block of n per data triple), the hypercube non-triviality
/// quadrature row (rhs c), and the normalisation row (rhs 0).
LinearSystem assemble_lsi_system(const TrajectoryDataset& ds, const TrainConfig& cfg);
LinearSystem assemble_lsi_system_serial(const TrajectoryDataset& ds, const TrainConfig& cfg);

/// Minimum-norm least-squares solution by SVD with relative cutoff rcond.
MinNormSolution solve_min_norm(const Mat& A, const Vec& b, double rcond);

KernelModel train_lsi(const TrajectoryDataset& ds, const TrainConfig& cfg);

/// Euler–Lagrange residual rows for states carrying q̇ and q̈, with centers
/// Z = the states' (q, q̇) points, plus the same two extra rows as LSI.
LinearSystem assemble_lgp_system(const std::vector<State>& states, const Mat& Z,
                                 const TrainConfig& cfg);

enum class LgpMode { FiniteDifference, Exact };

/// Train the comparison learner. Exact mode needs the benchmark system for
/// accelerations; velocities are Halton points over the dataset's velocity
/// bounds.
KernelModel train_lgp(const TrajectoryDataset& ds, const TrainConfig& cfg, LgpMode mode,
                      const std::optional<BenchmarkSystem>& sys = std::nullopt);

}  // namespace lsi
