#include "lsi/learn.hpp"

#include <cmath>

#include "lsi/datagen.hpp"
#include "lsi/halton.hpp"
#include "lsi/parallel.hpp"

namespace lsi {

void TrainConfig::validate(int n) const {
  kernel.validate();
  if (c == 0.0) throw std::invalid_argument("TrainConfig: c must be nonzero");
  if (!(rcond > 0.0 && rcond < 1.0))
    throw std::invalid_argument("TrainConfig: rcond must be in (0,1)");
  if (norm_point.size() != 0 && norm_point.size() != 2 * n)
    throw std::invalid_argument("TrainConfig: normalisation point must have dimension 2n");
}

Vec TrainConfig::normalisation_point(int n) const {
  return norm_point.size() == 2 * n ? norm_point : Vec(Vec::Zero(2 * n));
}

// ---------------------------------------------------------------------------
// KernelModel

KernelModel::KernelModel(Mat Z, Vec B, KernelParams params, Scheme scheme, double h, int n,
                         ModelKind kind)
    : Z_(std::move(Z)),
      B_(std::move(B)),
      params_(params),
      scheme_(scheme),
      h_(h),
      n_(n),
      kind_(kind) {
  if (B_.size() != Z_.rows())
    throw std::invalid_argument("KernelModel: |B| must equal the number of centers");
  if (Z_.cols() != 2 * n_)
    throw std::invalid_argument("KernelModel: centers must have dimension 2n");
}

Vec KernelModel::flat(const Vec& q, const Vec& qdot) const {
  if (q.size() != n_ || qdot.size() != n_)
    throw std::invalid_argument("KernelModel: state dimension mismatch");
  Vec x(2 * n_);
  x << q, qdot;
  return x;
}

double KernelModel::eval(const Vec& x) const {
  if (x.size() != Z_.cols()) throw std::invalid_argument("KernelModel: point dimension mismatch");
  const double inv_e2 = 1.0 / (params_.epsilon * params_.epsilon);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < Z_.rows(); ++i)
    acc += B_[i] * std::exp(-(x.transpose() - Z_.row(i)).squaredNorm() * inv_e2);
  return params_.c_k * acc;
}

Vec KernelModel::grad(const Vec& x) const {
  if (x.size() != Z_.cols()) throw std::invalid_argument("KernelModel: point dimension mismatch");
  const double inv_e2 = 1.0 / (params_.epsilon * params_.epsilon);
  Vec g = Vec::Zero(x.size());
  for (Eigen::Index i = 0; i < Z_.rows(); ++i) {
    const Vec d = x - Z_.row(i).transpose();
    const double k = params_.c_k * std::exp(-d.squaredNorm() * inv_e2);
    g.noalias() += (-2.0 * inv_e2 * B_[i] * k) * d;
  }
  return g;
}

Mat KernelModel::hess(const Vec& x) const {
  if (x.size() != Z_.cols()) throw std::invalid_argument("KernelModel: point dimension mismatch");
  const double inv_e2 = 1.0 / (params_.epsilon * params_.epsilon);
  Mat hsum = Mat::Zero(x.size(), x.size());
  double ksum = 0.0;
  for (Eigen::Index i = 0; i < Z_.rows(); ++i) {
    const Vec d = x - Z_.row(i).transpose();
    const double k = params_.c_k * std::exp(-d.squaredNorm() * inv_e2);
    hsum.noalias() += (4.0 * inv_e2 * inv_e2 * B_[i] * k) * (d * d.transpose());
    ksum += B_[i] * k;
  }
  hsum.diagonal().array() -= 2.0 * inv_e2 * ksum;
  return hsum;
}

double KernelModel::value(const Vec& q, const Vec& qdot) const { return eval(flat(q, qdot)); }

Vec KernelModel::grad_q(const Vec& q, const Vec& qdot) const {
  return grad(flat(q, qdot)).head(n_);
}

Vec KernelModel::grad_qdot(const Vec& q, const Vec& qdot) const {
  return grad(flat(q, qdot)).tail(n_);
}

void KernelModel::gradients(const Vec& q, const Vec& qdot, Vec& gq, Vec& gv) const {
  const Vec g = grad(flat(q, qdot));
  gq = g.head(n_);
  gv = g.tail(n_);
}

Mat KernelModel::hess_qq(const Vec& q, const Vec& qdot) const {
  return hess(flat(q, qdot)).topLeftCorner(n_, n_);
}

Mat KernelModel::hess_qdot_q(const Vec& q, const Vec& qdot) const {
  return hess(flat(q, qdot)).bottomLeftCorner(n_, n_);
}

Mat KernelModel::hess_qdot_qdot(const Vec& q, const Vec& qdot) const {
  return hess(flat(q, qdot)).bottomRightCorner(n_, n_);
}

void KernelModel::hessian_blocks(const Vec& q, const Vec& qdot, Mat& A, Mat& C, Mat& M) const {
  const Mat hfull = hess(flat(q, qdot));
  A = hfull.topLeftCorner(n_, n_);
  C = hfull.bottomLeftCorner(n_, n_);  // row a over q̇, column b over q
  M = hfull.bottomRightCorner(n_, n_);
}

// ---------------------------------------------------------------------------
// System assembly

namespace {

struct Triple {
  const Vec* q0;
  const Vec* q1;
  const Vec* q2;
};

std::vector<Triple> collect_triples(const TrajectoryDataset& ds) {
  std::vector<Triple> out;
  out.reserve(ds.triple_count());
  for (const auto& t : ds.trajectories)
    for (int j = 1; j + 1 < t.length(); ++j)
      out.push_back({&t.positions[j - 1], &t.positions[j], &t.positions[j + 1]});
  return out;
}

Vec phase_point(const Vec& q, const Vec& v) {
  Vec x(q.size() + v.size());
  x << q, v;
  return x;
}

/// n x M block of DEL rows for one data triple, scaled by 1/h.
void del_row_block(Scheme scheme, const Vec& q0, const Vec& q1, const Vec& q2, double h,
                   const Mat& Z, const KernelParams& p,
                   Eigen::Block<Mat> rows) {
  const int n = static_cast<int>(q0.size());
  const double inv_e2 = 1.0 / (p.epsilon * p.epsilon);
  const Vec v01 = (q1 - q0) / h;
  const Vec v12 = (q2 - q1) / h;
  if (scheme == Scheme::Midpoint) {
    const Vec xm = phase_point(0.5 * (q0 + q1), v01);
    const Vec xp = phase_point(0.5 * (q1 + q2), v12);
    for (Eigen::Index i = 0; i < Z.rows(); ++i) {
      const Vec dm = xm - Z.row(i).transpose();
      const Vec dp = xp - Z.row(i).transpose();
      const double km = p.c_k * std::exp(-dm.squaredNorm() * inv_e2);
      const double kp = p.c_k * std::exp(-dp.squaredNorm() * inv_e2);
      for (int a = 0; a < n; ++a) {
        const double gq = -2.0 * inv_e2 * (dm[a] * km + dp[a] * kp);
        const double gv = -2.0 * inv_e2 * (dm[n + a] * km - dp[n + a] * kp);
        rows(a, i) = gv / h + 0.5 * gq;
      }
    }
  } else {
    const Vec x0m = phase_point(q0, v01);
    const Vec x1m = phase_point(q1, v01);
    const Vec x1p = phase_point(q1, v12);
    const Vec x2p = phase_point(q2, v12);
    for (Eigen::Index i = 0; i < Z.rows(); ++i) {
      const Vec d0m = x0m - Z.row(i).transpose();
      const Vec d1m = x1m - Z.row(i).transpose();
      const Vec d1p = x1p - Z.row(i).transpose();
      const Vec d2p = x2p - Z.row(i).transpose();
      const double k0m = p.c_k * std::exp(-d0m.squaredNorm() * inv_e2);
      const double k1m = p.c_k * std::exp(-d1m.squaredNorm() * inv_e2);
      const double k1p = p.c_k * std::exp(-d1p.squaredNorm() * inv_e2);
      const double k2p = p.c_k * std::exp(-d2p.squaredNorm() * inv_e2);
      for (int a = 0; a < n; ++a) {
        const double gq = -2.0 * inv_e2 * (d1m[a] * k1m + d1p[a] * k1p);
        const double gv = -2.0 * inv_e2 *
                          (d0m[n + a] * k0m + d1m[n + a] * k1m - d1p[n + a] * k1p -
                           d2p[n + a] * k2p);
        rows(a, i) = gv / (2.0 * h) + 0.5 * gq;
      }
    }
  }
}

/// Non-triviality quadrature row: mean over hypercube corners of the summed
/// q̇-gradient of the kernel sections.
Vec nontriviality_row(int n, const Mat& Z, const KernelParams& p) {
  const int dim2 = 2 * n;
  const int corners = 1 << dim2;
  const double inv_e2 = 1.0 / (p.epsilon * p.epsilon);
  Vec row = Vec::Zero(Z.rows());
  Vec v(dim2);
  for (int mask = 0; mask < corners; ++mask) {
    for (int d = 0; d < dim2; ++d) v[d] = (mask >> d) & 1 ? 1.0 : 0.0;
    for (Eigen::Index i = 0; i < Z.rows(); ++i) {
      const Vec d = v - Z.row(i).transpose();
      const double k = p.c_k * std::exp(-d.squaredNorm() * inv_e2);
      row[i] += -2.0 * inv_e2 * k * d.tail(n).sum();
    }
  }
  return row / static_cast<double>(corners);
}

Vec normalisation_row(const Vec& x_star, const Mat& Z, const KernelParams& p) {
  Vec row(Z.rows());
  for (Eigen::Index i = 0; i < Z.rows(); ++i)
    row[i] = kernel_value(x_star, Z.row(i), p);
  return row;
}

LinearSystem assemble_lsi_impl(const TrajectoryDataset& ds, const TrainConfig& cfg,
                               bool parallel) {
  ds.validate();
  cfg.validate(ds.n);
  const auto triples = collect_triples(ds);
  if (triples.empty()) throw std::invalid_argument("assemble_lsi_system: no data triples");
  const Mat Z = lsi_centers(ds, cfg.scheme, ds.h);
  const int n = ds.n;
  const int K = static_cast<int>(triples.size());

  LinearSystem sys;
  sys.del_rows = n * K;
  sys.A.resize(n * K + 2, Z.rows());
  sys.b = Vec::Zero(n * K + 2);

  if (parallel) {
    LSI_PRAGMA_OMP(parallel for schedule(static))
    for (int t = 0; t < K; ++t)
      del_row_block(cfg.scheme, *triples[t].q0, *triples[t].q1, *triples[t].q2, ds.h, Z,
                    cfg.kernel, sys.A.block(n * t, 0, n, Z.rows()));
  } else {
    for (int t = 0; t < K; ++t)
      del_row_block(cfg.scheme, *triples[t].q0, *triples[t].q1, *triples[t].q2, ds.h, Z,
                    cfg.kernel, sys.A.block(n * t, 0, n, Z.rows()));
  }

  sys.A.row(n * K) = nontriviality_row(n, Z, cfg.kernel);
  sys.b[n * K] = cfg.c;
  sys.A.row(n * K + 1) = normalisation_row(cfg.normalisation_point(n), Z, cfg.kernel);
  return sys;
}

}  // namespace

Mat lsi_centers(const TrajectoryDataset& ds, Scheme scheme, double h) {
  ds.validate();
  if (ds.trajectories.empty()) throw std::invalid_argument("lsi_centers: empty dataset");
  const int n = ds.n;
  std::vector<Vec> pts;
  for (const auto& t : ds.trajectories)
    for (int j = 0; j + 1 < t.length(); ++j) {
      const Vec v = (t.positions[j + 1] - t.positions[j]) / h;
      if (scheme == Scheme::Midpoint) {
        pts.push_back(phase_point(0.5 * (t.positions[j] + t.positions[j + 1]), v));
      } else {
        pts.push_back(phase_point(t.positions[j], v));
        pts.push_back(phase_point(t.positions[j + 1], v));
      }
    }
  if (scheme == Scheme::Trapezoidal) {
    // drop exact duplicates, keeping first occurrences in order
    std::vector<Vec> unique;
    for (const auto& x : pts) {
      bool seen = false;
      for (const auto& u : unique)
        if (u == x) {
          seen = true;
          break;
        }
      if (!seen) unique.push_back(x);
    }
    pts = std::move(unique);
  }
  Mat Z(pts.size(), 2 * n);
  for (size_t i = 0; i < pts.size(); ++i) Z.row(i) = pts[i];
  return Z;
}

LinearSystem assemble_lsi_system(const TrajectoryDataset& ds, const TrainConfig& cfg) {
  return assemble_lsi_impl(ds, cfg, true);
}

LinearSystem assemble_lsi_system_serial(const TrajectoryDataset& ds, const TrainConfig& cfg) {
  return assemble_lsi_impl(ds, cfg, false);
}

MinNormSolution solve_min_norm(const Mat& A, const Vec& b, double rcond) {
  if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("solve_min_norm: empty system");
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rcond);
  MinNormSolution sol;
  sol.x = svd.solve(b);
  if (!sol.x.allFinite()) throw std::runtime_error("solve_min_norm: decomposition failed");
  sol.rank = static_cast<int>(svd.rank());
  sol.residual = (A * sol.x - b).norm();
  return sol;
}

KernelModel train_lsi(const TrajectoryDataset& ds, const TrainConfig& cfg) {
  const LinearSystem sys = assemble_lsi_system(ds, cfg);
  const MinNormSolution sol = solve_min_norm(sys.A, sys.b, cfg.rcond);
  KernelModel model(lsi_centers(ds, cfg.scheme, ds.h), sol.x, cfg.kernel, cfg.scheme, ds.h,
                    ds.n, ModelKind::Lsi);
  model.diagnostics().rank = sol.rank;
  model.diagnostics().residual = sol.residual;
  model.diagnostics().del_residual_inf =
      (sys.A.topRows(sys.del_rows) * sol.x).cwiseAbs().maxCoeff();
  model.meta().c = cfg.c;
  model.meta().norm_point = cfg.normalisation_point(ds.n);
  return model;
}

LinearSystem assemble_lgp_system(const std::vector<State>& states, const Mat& Z,
                                 const TrainConfig& cfg) {
  if (states.empty()) throw std::invalid_argument("assemble_lgp_system: no states");
  const int n = static_cast<int>(states[0].q.size());
  cfg.validate(n);
  for (const auto& s : states) {
    s.validate();
    if (!s.has_qdot() || !s.has_qddot())
      throw std::invalid_argument("assemble_lgp_system: states need qdot and qddot");
  }
  const int K = static_cast<int>(states.size());
  const double inv_e2 = 1.0 / (cfg.kernel.epsilon * cfg.kernel.epsilon);
  const double inv_e4 = inv_e2 * inv_e2;

  LinearSystem sys;
  sys.del_rows = n * K;
  sys.A.resize(n * K + 2, Z.rows());
  sys.b = Vec::Zero(n * K + 2);

  // Euler–Lagrange residual of the kernel expansion at each data state:
  // ∇_q k − D²_{q̇,q}k·q̇ − D²_{q̇,q̇}k·q̈ contracted against B.
  LSI_PRAGMA_OMP(parallel for schedule(static))
  for (int j = 0; j < K; ++j) {
    const Vec x = phase_point(states[j].q, states[j].qdot);
    for (Eigen::Index i = 0; i < Z.rows(); ++i) {
      const Vec d = x - Z.row(i).transpose();
      const double k = cfg.kernel.c_k * std::exp(-d.squaredNorm() * inv_e2);
      for (int a = 0; a < n; ++a) {
        double r = -2.0 * inv_e2 * d[a] * k;
        for (int b = 0; b < n; ++b) {
          r -= 4.0 * inv_e4 * d[n + a] * d[b] * k * states[j].qdot[b];
          double m_ab = 4.0 * inv_e4 * d[n + a] * d[n + b] * k;
          if (a == b) m_ab -= 2.0 * inv_e2 * k;
          r -= m_ab * states[j].qddot[b];
        }
        sys.A(n * j + a, i) = r;
      }
    }
  }

  sys.A.row(n * K) = nontriviality_row(n, Z, cfg.kernel);
  sys.b[n * K] = cfg.c;
  sys.A.row(n * K + 1) = normalisation_row(cfg.normalisation_point(n), Z, cfg.kernel);
  return sys;
}

KernelModel train_lgp(const TrajectoryDataset& ds, const TrainConfig& cfg, LgpMode mode,
                      const std::optional<BenchmarkSystem>& sys) {
  ds.validate();
  cfg.validate(ds.n);
  const int n = ds.n;
  std::vector<State> states;

  if (mode == LgpMode::FiniteDifference) {
    for (const auto& t : ds.trajectories) {
      auto interior = central_differences(t);
      states.insert(states.end(), interior.begin(), interior.end());
    }
  } else {
    if (!sys) throw std::invalid_argument("train_lgp: exact mode needs a benchmark system");
    if (sys->dim() != n) throw std::invalid_argument("train_lgp: system dimension mismatch");
    int total = 0;
    for (const auto& t : ds.trajectories) total += t.length();
    const Box vel_box{ds.domain.lo.tail(n), ds.domain.hi.tail(n)};
    const auto vels = halton_sequence(total, n);
    int idx = 0;
    for (const auto& t : ds.trajectories)
      for (const auto& q : t.positions) {
        State s;
        s.q = q;
        s.qdot = scale_to_box(vels[idx++], vel_box);
        s.qddot = reference_acceleration(*sys, q);
        states.push_back(std::move(s));
      }
  }

  Mat Z(states.size(), 2 * n);
  for (size_t i = 0; i < states.size(); ++i)
    Z.row(i) = phase_point(states[i].q, states[i].qdot);

  const LinearSystem linsys = assemble_lgp_system(states, Z, cfg);
  const MinNormSolution sol = solve_min_norm(linsys.A, linsys.b, cfg.rcond);
  KernelModel model(std::move(Z), sol.x, cfg.kernel, cfg.scheme, ds.h, n,
                    mode == LgpMode::Exact ? ModelKind::LgpExact : ModelKind::Lgp);
  model.diagnostics().rank = sol.rank;
  model.diagnostics().residual = sol.residual;
  model.diagnostics().del_residual_inf =
      (linsys.A.topRows(linsys.del_rows) * sol.x).cwiseAbs().maxCoeff();
  model.meta().c = cfg.c;
  model.meta().norm_point = cfg.normalisation_point(n);
  return model;
}

}  // namespace lsi
