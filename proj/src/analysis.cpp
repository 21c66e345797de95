#include "lsi/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "lsi/parallel.hpp"

namespace lsi {

Vec ScalarField::grad(const Vec& x) const {
  if (gradient) return gradient(x);
  Vec g(x.size());
  Vec xp = x, xm = x;
  for (int a = 0; a < x.size(); ++a) {
    const double s = 1e-5 * std::max(1.0, std::abs(x[a]));
    xp[a] = x[a] + s;
    xm[a] = x[a] - s;
    g[a] = (value(xp) - value(xm)) / (2.0 * s);
    xp[a] = x[a];
    xm[a] = x[a];
  }
  return g;
}

ScalarField hamiltonian_field(FieldPtr L) {
  const int n = L->dim();
  ScalarField f;
  f.dim = 2 * n;
  f.value = [L, n](const Vec& x) {
    return modified_hamiltonian(*L, x.head(n), x.tail(n));
  };
  f.gradient = [L, n](const Vec& x) {
    const Vec q = x.head(n), qd = x.tail(n);
    Vec gq, gv;
    L->gradients(q, qd, gq, gv);
    Mat A, C, M;
    L->hessian_blocks(q, qd, A, C, M);
    Vec g(2 * n);
    g.head(n) = C.transpose() * qd - gq;
    g.tail(n) = M * qd;
    return g;
  };
  return f;
}

ScalarField reference_energy_field(const BenchmarkSystem& sys) {
  const int n = sys.dim();
  ScalarField f;
  f.dim = 2 * n;
  f.value = [sys, n](const Vec& x) { return reference_energy(sys, x.head(n), x.tail(n)); };
  f.gradient = [sys, n](const Vec& x) {
    Vec g(2 * n);
    g.head(n) = -reference_acceleration(sys, x.head(n));  // ∇V
    g.tail(n) = x.tail(n);
    return g;
  };
  return f;
}

void GridSpec::validate(int ambient_dim) const {
  if (base.size() != ambient_dim)
    throw std::invalid_argument("GridSpec: base point dimension mismatch");
  const size_t k = axes.size();
  if (lo.size() != k || hi.size() != k || res.size() != k)
    throw std::invalid_argument("GridSpec: axes/bounds/resolution size mismatch");
  for (size_t a = 0; a < k; ++a) {
    if (axes[a] < 0 || axes[a] >= ambient_dim)
      throw std::invalid_argument("GridSpec: axis index out of range");
    if (!(lo[a] < hi[a])) throw std::invalid_argument("GridSpec: lo must be < hi");
    if (res[a] < 2) throw std::invalid_argument("GridSpec: resolution must be >= 2");
  }
}

std::vector<double> GridSpec::axis_coords(int a) const {
  std::vector<double> c(res[a]);
  for (int i = 0; i < res[a]; ++i)
    c[i] = lo[a] + (hi[a] - lo[a]) * static_cast<double>(i) / (res[a] - 1);
  return c;
}

double EnergyTrace::band_width() const {
  if (H.empty()) return 0.0;
  const auto [mn, mx] = std::minmax_element(H.begin(), H.end());
  return *mx - *mn;
}

double EnergyTrace::drift_slope() const {
  const size_t m = t.size();
  if (m < 2) return 0.0;
  double st = 0, sh = 0, stt = 0, sth = 0;
  for (size_t i = 0; i < m; ++i) {
    st += t[i];
    sh += H[i];
    stt += t[i] * t[i];
    sth += t[i] * H[i];
  }
  const double denom = m * stt - st * st;
  return denom == 0.0 ? 0.0 : (m * sth - st * sh) / denom;
}

EnergyTrace energy_trace(const ScalarField& H, const std::vector<State>& snapshots, double h) {
  EnergyTrace tr;
  tr.t.reserve(snapshots.size());
  tr.H.reserve(snapshots.size());
  for (size_t j = 0; j < snapshots.size(); ++j) {
    if (!snapshots[j].has_qdot())
      throw std::invalid_argument("energy_trace: snapshot lacks velocity");
    Vec x(2 * snapshots[j].q.size());
    x << snapshots[j].q, snapshots[j].qdot;
    tr.t.push_back(static_cast<double>(j) * h);
    tr.H.push_back(H.value(x));
  }
  return tr;
}

namespace {

NuResult nu_impl(const ScalarField& Ha, const ScalarField& Hb, const GridSpec& grid,
                 bool parallel) {
  if (Ha.dim != Hb.dim) throw std::invalid_argument("nu_metric: field dimension mismatch");
  grid.validate(Ha.dim);

  // flatten the grid nodes (row-major over free axes)
  long total = 1;
  for (size_t a = 0; a < grid.axes.size(); ++a) total *= grid.res[a];
  std::vector<std::vector<double>> coords;
  for (size_t a = 0; a < grid.axes.size(); ++a) coords.push_back(grid.axis_coords(a));

  std::vector<double> vals(total);
  std::vector<char> skip(total, 0);

  auto node_point = [&](long idx) {
    Vec x = grid.base;
    for (int a = static_cast<int>(grid.axes.size()) - 1; a >= 0; --a) {
      x[grid.axes[a]] = coords[a][idx % grid.res[a]];
      idx /= grid.res[a];
    }
    return x;
  };

  auto eval_node = [&](long i) {
    const Vec x = node_point(i);
    const Vec ga = Ha.grad(x);
    const Vec gb = Hb.grad(x);
    const double na = ga.norm(), nb = gb.norm();
    if (na < 1e-12 || nb < 1e-12) {
      skip[i] = 1;
      vals[i] = 0.0;
      return;
    }
    const double cosang = std::clamp(ga.dot(gb) / (na * nb), -1.0, 1.0);
    vals[i] = std::sqrt(std::max(0.0, 1.0 - cosang * cosang));
  };

  if (parallel) {
    LSI_PRAGMA_OMP(parallel for schedule(dynamic, 8))
    for (long i = 0; i < total; ++i) eval_node(i);
  } else {
    for (long i = 0; i < total; ++i) eval_node(i);
  }

  NuResult r;
  r.nodes = static_cast<int>(total);
  double sum = 0.0;
  int used = 0;
  for (long i = 0; i < total; ++i) {
    if (skip[i]) {
      ++r.skipped;
    } else {
      sum += vals[i];
      ++used;
    }
  }
  r.nu = used > 0 ? sum / used : 0.0;
  return r;
}

}  // namespace

NuResult nu_metric(const ScalarField& Ha, const ScalarField& Hb, const GridSpec& grid) {
  return nu_impl(Ha, Hb, grid, true);
}

NuResult nu_metric_serial(const ScalarField& Ha, const ScalarField& Hb, const GridSpec& grid) {
  return nu_impl(Ha, Hb, grid, false);
}

ContourGrid contour_grid(const ScalarField& field, const GridSpec& grid) {
  grid.validate(field.dim);
  if (grid.axes.empty() || grid.axes.size() > 2)
    throw std::invalid_argument("contour_grid: need 1 or 2 free axes");

  ContourGrid out;
  out.x = grid.axis_coords(0);
  const int nx = grid.res[0];
  const int ny = grid.axes.size() == 2 ? grid.res[1] : 1;
  if (grid.axes.size() == 2) out.y = grid.axis_coords(1);
  out.values.resize(ny, nx);

  LSI_PRAGMA_OMP(parallel for schedule(dynamic, 4))
  for (int j = 0; j < ny; ++j) {
    Vec x = grid.base;
    if (!out.y.empty()) x[grid.axes[1]] = out.y[j];
    for (int i = 0; i < nx; ++i) {
      x[grid.axes[0]] = out.x[i];
      out.values(j, i) = field.value(x);
    }
  }
  return out;
}

std::optional<double> divergence_time(const std::vector<Vec>& positions, double radius_bound,
                                      double h) {
  if (radius_bound <= 0.0) throw std::invalid_argument("divergence_time: bound must be > 0");
  for (size_t j = 0; j < positions.size(); ++j)
    if (positions[j].norm() > radius_bound) return static_cast<double>(j) * h;
  return std::nullopt;
}

}  // namespace lsi
