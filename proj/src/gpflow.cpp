#include "lsi/gpflow.hpp"

#include <cmath>
#include <limits>

#include "lsi/datagen.hpp"

namespace lsi {

Vec GpFlowModel::predict(const Vec& x) const {
  if (x.size() != X.cols()) throw std::invalid_argument("GpFlowModel: input dimension mismatch");
  Vec kx(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) kx[i] = kernel_value(x, X.row(i), params);
  return alpha.transpose() * kx;
}

GpFlowModel train_gpflow(const TrajectoryDataset& ds, double jitter,
                         const std::vector<double>& epsilon_grid) {
  ds.validate();
  const int n = ds.n;

  // flow-map samples from consecutive interior states
  std::vector<Vec> inputs, outputs;
  for (const auto& t : ds.trajectories) {
    if (t.length() < 4) continue;  // need two consecutive interior states
    const auto interior = central_differences(t);
    for (size_t j = 0; j + 1 < interior.size(); ++j) {
      Vec xi(2 * n), yi(2 * n);
      xi << interior[j].q, interior[j].qdot;
      yi << interior[j + 1].q, interior[j + 1].qdot;
      inputs.push_back(std::move(xi));
      outputs.push_back(std::move(yi));
    }
  }
  if (inputs.empty())
    throw std::invalid_argument(
        "train_gpflow: no flow-map samples (trajectories need length >= 4)");

  const int m = static_cast<int>(inputs.size());
  Mat X(m, 2 * n), Y(m, 2 * n);
  for (int i = 0; i < m; ++i) {
    X.row(i) = inputs[i];
    Y.row(i) = outputs[i];
  }

  GpFlowModel best;
  double best_ml = -std::numeric_limits<double>::infinity();
  bool found = false;

  for (double eps : epsilon_grid) {
    const KernelParams p{eps, 1.0};
    const Mat K = gram_matrix(X, p);
    for (double jit = jitter; jit <= jitter * 1e6 * 1.5; jit *= 1e3) {
      Mat Kj = K;
      Kj.diagonal().array() += jit;
      Eigen::LLT<Mat> llt(Kj);
      if (llt.info() != Eigen::Success) continue;

      const Mat A = llt.solve(Y);
      // log marginal likelihood summed over the output coordinates
      double logdet = 0.0;
      for (int i = 0; i < m; ++i) logdet += std::log(llt.matrixLLT()(i, i));
      double ml = 0.0;
      for (int c = 0; c < 2 * n; ++c)
        ml += -0.5 * Y.col(c).dot(A.col(c)) - logdet - 0.5 * m * std::log(2.0 * M_PI);

      if (ml > best_ml) {
        best_ml = ml;
        best.X = X;
        best.alpha = A;
        best.params = p;
        best.jitter = jit;
        best.h = ds.h;
        best.n = n;
        best.log_marginal = ml;
      }
      found = true;
      break;  // smallest factorisable jitter for this epsilon
    }
  }
  if (!found)
    throw std::runtime_error("train_gpflow: Gram matrix ill-conditioned for every candidate");
  return best;
}

}  // namespace lsi
