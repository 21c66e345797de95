#pragma once

#include <functional>
#include <optional>

#include "lsi/bea.hpp"
#include "lsi/types.hpp"

namespace lsi {

/// Scalar field on phase space R^{2n} with its own gradient contract.
/// When no gradient callable is supplied, central finite differences of the
/// value are used.
struct ScalarField {
  int dim = 0;  // ambient dimension (2n)
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // optional

  Vec grad(const Vec& x) const;
};

/// Energy field of a Lagrangian via the Legendre formula, with gradients
/// routed through the field's derivative contract:
/// ∂H/∂q = (D²_{q̇,q}L)ᵀ q̇ − ∇_q L,  ∂H/∂q̇ = D²_{q̇,q̇}L q̇.
ScalarField hamiltonian_field(FieldPtr L);

/// Reference energy of a benchmark system as a ScalarField.
ScalarField reference_energy_field(const BenchmarkSystem& sys);

/// Rectangular evaluation grid: free axes of the ambient space with bounds
/// and resolutions; the remaining coordinates are pinned to base.
struct GridSpec {
  Vec base;               // ambient point supplying the fixed coordinates
  std::vector<int> axes;  // free axis indices, at most 2 for tabular export
  std::vector<double> lo, hi;
  std::vector<int> res;   // >= 2 per free axis

  void validate(int ambient_dim) const;
  /// Coordinates along free axis a (res[a] equidistant points incl. ends).
  std::vector<double> axis_coords(int a) const;
};

struct EnergyTrace {
  std::vector<double> t;
  std::vector<double> H;
  double band_width() const;  // max − min
  /// Slope of the least-squares line through (t, H).
  double drift_slope() const;
};

/// Evaluate an energy field along a trajectory with velocities.
EnergyTrace energy_trace(const ScalarField& H, const std::vector<State>& snapshots, double h);

struct NuResult {
  double nu = 0.0;
  int nodes = 0;
  int skipped = 0;  // nodes where a gradient norm fell below 1e-12
};

/// Grid mean of sin∠(∇H_a, ∇H_b) over normalised gradients.
NuResult nu_metric(const ScalarField& Ha, const ScalarField& Hb, const GridSpec& grid);
NuResult nu_metric_serial(const ScalarField& Ha, const ScalarField& Hb, const GridSpec& grid);

struct ContourGrid {
  std::vector<double> x;  // first free axis coordinates
  std::vector<double> y;  // second free axis (empty for 1-d grids)
  Mat values;             // rows follow y, columns follow x
};

ContourGrid contour_grid(const ScalarField& field, const GridSpec& grid);

/// First time j·h at which ‖q_j‖ exceeds the bound, if any.
std::optional<double> divergence_time(const std::vector<Vec>& positions, double radius_bound,
                                      double h);

}  // namespace lsi
